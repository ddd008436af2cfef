//! Pairs `(I, 𝓘)` of a global polynomial ideal and a local ideal of leaf
//! germs with `I|_L ⊆ 𝓘`, the three multiplicity-controlled extensions and
//! the bound pipeline built from them.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::foliation::FoliationContext;
use crate::germ::{Jet2, LocalIdeal, PuiseuxConfig};
use crate::ideal::{Budget, IdealPresentation, RadicalStatus};

mod ledger;
mod pipeline;
mod steps;

pub use ledger::{
    compose, BoundLedger, BoundReport, Evidence, ExponentEntry, FinalStatus, LedgerStep, PairSnapshot, ProblemInput, StepKind, Transfer, TRACE_VERSION,
};
pub use pipeline::{isolated_locus_reduction, nonisolated_bound, LoopOutcome};
pub use steps::{find_transverse_pair, jacobian_extension, poisson_extension, radical_extension};

#[derive(Clone, Debug)]
pub struct PairConfig {
    /// Jet order at which containment is certified first.
    pub order: u32,
    /// Highest order tried when certifying local ideals.
    pub max_order: u32,
    pub budget: Budget,
    pub seed: u64,
    /// Random linear combinations tried before the exhaustive pair scan.
    pub transverse_tries: u32,
}

impl Default for PairConfig {
    fn default() -> Self {
        PairConfig { order: 16, max_order: 64, budget: Budget::default(), seed: 0, transverse_tries: 24 }
    }
}

impl PairConfig {
    pub fn with_order(order: u32) -> Self {
        PairConfig { order, max_order: (4 * order).max(32), ..PairConfig::default() }
    }

    pub(crate) fn puiseux(&self) -> PuiseuxConfig {
        PuiseuxConfig { shift: None, order: self.order, max_order: self.max_order }
    }
}

#[derive(Clone, Debug)]
pub struct NoetherianPairState {
    ideal: IdealPresentation,
    local: Vec<Jet2>,
    ctx: Arc<FoliationContext>,
    local_ideal: LocalIdeal,
    radical: Option<RadicalStatus>,
}

/// Validates `I|_L ⊆ 𝓘` generator by generator.
pub fn make_pair(ideal: IdealPresentation, local: Vec<Jet2>, ctx: &Arc<FoliationContext>, cfg: &PairConfig) -> Result<NoetherianPairState> {
    if ideal.ring() != ctx.ring() {
        return Err(Error::Hypothesis("global ideal and foliation live in different rings".into()));
    }
    let local_ideal = LocalIdeal::new(&local, cfg.order, cfg.max_order)?;
    let s = NoetherianPairState { ideal, local, ctx: ctx.clone(), local_ideal, radical: None };
    s.verify()?;
    Ok(s)
}

impl NoetherianPairState {
    pub fn ideal(&self) -> &IdealPresentation {
        &self.ideal
    }

    pub fn local(&self) -> &[Jet2] {
        &self.local
    }

    pub fn context(&self) -> &Arc<FoliationContext> {
        &self.ctx
    }

    /// Order of the local standard basis the containment was checked at.
    pub fn order(&self) -> u32 {
        self.local_ideal.order()
    }

    pub fn local_ideal(&self) -> &LocalIdeal {
        &self.local_ideal
    }

    /// Radical status of the global ideal, if it came out of a radical step.
    pub fn radical_status(&self) -> Option<RadicalStatus> {
        self.radical
    }

    pub fn local_multiplicity(&self) -> Option<u64> {
        self.local_ideal.multiplicity()
    }

    /// Some generator is nonzero at the base point, so the local side is
    /// the unit ideal.
    pub fn point_excluded(&self) -> Result<bool> {
        for g in self.ideal.gens() {
            if !g.evaluate(self.ctx.point())?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Re-checks the containment for every global generator.
    pub fn verify(&self) -> Result<()> {
        for g in self.ideal.gens() {
            let j = self.ctx.leaf_jet(g, self.order())?;
            if !self.local_ideal.contains(&j)?.member {
                return Err(Error::Containment { generator: g.to_string(), order: self.order() });
            }
        }
        Ok(())
    }

    /// Adds global and local generators and re-validates the pair. Local
    /// generators already certified members are skipped.
    pub(crate) fn extend(
        &self,
        ideal: IdealPresentation,
        local: impl IntoIterator<Item = Jet2>,
        radical: Option<RadicalStatus>,
        cfg: &PairConfig,
    ) -> Result<NoetherianPairState> {
        let mut gens = self.local.clone();
        for j in local {
            let m = self.local_ideal.contains(&j)?;
            if !(m.member && m.exact) {
                gens.push(j);
            }
        }
        let mut s = make_pair(ideal, gens, &self.ctx, cfg)?;
        s.radical = radical;
        Ok(s)
    }
}

#[cfg(test)]
mod tests;
