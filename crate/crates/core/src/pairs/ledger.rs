use serde::{Deserialize, Serialize};

use crate::germ::{GermSplitSummary, Jet2, SplitMethod};
use crate::ideal::{IdealPresentation, RadicalStatus};

use super::NoetherianPairState;

pub const TRACE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    Radical,
    Poisson,
    Jacobian,
}

/// `m ↦ a·m + b`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Transfer {
    pub a: u64,
    pub b: u64,
}

impl Transfer {
    pub fn apply(&self, m: u64) -> u64 {
        self.a.saturating_mul(m).saturating_add(self.b)
    }
}

/// Applies the transfers last to first, starting from `m`.
pub fn compose(steps: &[LedgerStep], m: u64) -> u64 {
    steps.iter().rev().fold(m, |acc, s| s.transfer.apply(acc))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExponentEntry {
    pub generator: String,
    pub exponent: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Evidence {
    Radical {
        exponents: Vec<ExponentEntry>,
        /// `Σ (e_i - 1) + 1`; the transfer factor is its square.
        power: u64,
        status: RadicalStatus,
        dropped: Vec<String>,
        note: Option<String>,
    },
    Poisson {
        f: String,
        g: String,
        bracket: String,
    },
    Jacobian {
        f: String,
        h: String,
        cofactor: String,
        cofactor_exact: bool,
        k: u32,
        big_k: u32,
        mu: u32,
        branch_count: u32,
        reduced: String,
        derivatives: Vec<String>,
        formula_factor: u64,
        /// Least `n` with `reduced^n` certified in the local ideal.
        certified_exponent: Option<u32>,
        strict_progress: bool,
        split_method: SplitMethod,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PairSnapshot {
    pub global: Vec<String>,
    /// Local generators truncated one order above the basis order.
    pub local: Vec<String>,
    pub order: u32,
    pub local_multiplicity: Option<u64>,
    pub degree: u32,
}

impl PairSnapshot {
    pub fn of(s: &NoetherianPairState) -> PairSnapshot {
        let n = s.order() + 1;
        let local = s
            .local()
            .iter()
            .map(|j| {
                let j = if j.order() >= n { j.clone() } else { j.regenerate(n).unwrap_or_else(|_| j.clone()) };
                j.truncate(n).to_polynomial().to_string()
            })
            .collect();
        PairSnapshot { global: gens_text(s.ideal()), local, order: s.order(), local_multiplicity: s.local_multiplicity(), degree: s.ideal().max_degree() }
    }
}

pub(crate) fn gens_text(i: &IdealPresentation) -> Vec<String> {
    i.gens().iter().map(|g| g.to_string()).collect()
}

pub(crate) fn jet_text(j: &Jet2) -> String {
    j.to_polynomial().to_string()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LedgerStep {
    pub kind: StepKind,
    pub transfer: Transfer,
    pub evidence: Evidence,
    pub degree_before: u32,
    pub degree_after: u32,
    pub after: PairSnapshot,
    /// `mult before ≤ a·mult after + b`, checked when both are certified.
    pub checked: Option<bool>,
    pub millis: u64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum FinalStatus {
    PointExcluded,
    ExhaustedBudget,
    RadicalPartial,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoundLedger {
    pub steps: Vec<LedgerStep>,
    pub status: FinalStatus,
    pub note: Option<String>,
}

impl BoundLedger {
    /// The composed bound; only meaningful once the point is excluded.
    pub fn bound(&self) -> Option<u64> {
        (self.status == FinalStatus::PointExcluded).then(|| compose(&self.steps, 0))
    }

    pub fn count(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProblemInput {
    pub variables: Vec<String>,
    pub v1: Vec<String>,
    pub v2: Vec<String>,
    pub point: Vec<String>,
    pub f: String,
    pub g: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoundReport {
    pub trace_version: u32,
    pub input: ProblemInput,
    pub order: u32,
    pub seed: u64,
    pub split: GermSplitSummary,
    pub initial: PairSnapshot,
    pub ledger: BoundLedger,
    pub bound: Option<u64>,
    /// Multiplicity of the split pair when directly computable.
    pub direct: Option<u64>,
    pub jacobian_rounds: u32,
    pub millis: u64,
}

impl BoundReport {
    /// `direct ≤ bound` when both are known.
    pub fn is_sound(&self) -> Option<bool> {
        Some(self.direct? <= self.bound?)
    }
}
