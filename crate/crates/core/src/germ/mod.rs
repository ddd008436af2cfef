//! Local geometry on the leaf: jets, local multiplicities, Newton-Puiseux
//! branches and common-factor splitting.

pub mod field;
pub mod jet;
pub mod local;
pub mod puiseux;
pub mod split;

pub use jet::{leaf_ring, Jet2, JetSource, Producer};
pub use local::{stabilized_multiplicity, LocalBasis, LocalIdeal, LocalMultiplicity, Membership, StabilizationCertificate};
pub use puiseux::{newton_puiseux, BranchSetSummary, CycleSummary, PuiseuxBranchSet, PuiseuxConfig, PuiseuxCycle};
pub use split::{
    factor_multiplicities, local_multiplicity, split_along, split_common, FactorData, FactorSummary, GermSplit, GermSplitSummary, LocusSplit, SplitMethod,
};
