use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::foliation::FoliationContext;
use crate::germ::{factor_multiplicities, local_multiplicity, split_common};
use crate::ideal::{IdealPresentation, RadicalStatus};
use crate::poly::Polynomial;

use super::ledger::{compose, BoundLedger, BoundReport, FinalStatus, LedgerStep, PairSnapshot, ProblemInput, TRACE_VERSION};
use super::steps::{find_transverse_pair, jacobian_extension, poisson_extension, radical_extension};
use super::{make_pair, NoetherianPairState, PairConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopOutcome {
    /// Some global generator is nonzero at the point.
    PointExcluded,
    /// No transverse pair was found: every remaining intersection is
    /// treated as non-isolated.
    Stable,
    /// The iteration cap was reached while pairs were still found.
    Exhausted,
}

fn isolated_loop(
    mut s: NoetherianPairState,
    cfg: &PairConfig,
    rng: &mut ChaCha8Rng,
    steps: &mut Vec<LedgerStep>,
) -> Result<(NoetherianPairState, LoopOutcome)> {
    let cap = 2 * s.context().ring().len();
    for _ in 0..cap {
        if s.point_excluded()? {
            return Ok((s, LoopOutcome::PointExcluded));
        }
        let (t, st) = radical_extension(&s, cfg)?;
        s = t;
        steps.push(st);
        if s.point_excluded()? {
            return Ok((s, LoopOutcome::PointExcluded));
        }
        match find_transverse_pair(&s, cfg, rng)? {
            None => return Ok((s, LoopOutcome::Stable)),
            Some((f, g)) => {
                let (t, st) = poisson_extension(&s, &f, &g, cfg)?;
                s = t;
                steps.push(st);
            }
        }
    }
    let out = if s.point_excluded()? { LoopOutcome::PointExcluded } else { LoopOutcome::Exhausted };
    Ok((s, out))
}

/// Alternating radical and Poisson steps until the point is excluded, no
/// transverse pair remains, or `2n` rounds pass.
pub fn isolated_locus_reduction(s: NoetherianPairState, cfg: &PairConfig) -> Result<(NoetherianPairState, Vec<LedgerStep>, LoopOutcome)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut steps = Vec::new();
    let (s, out) = isolated_loop(s, cfg, &mut rng, &mut steps)?;
    Ok((s, steps, out))
}

fn input_of(f: &Polynomial, g: &Polynomial, ctx: &FoliationContext) -> ProblemInput {
    ProblemInput {
        variables: ctx.ring().names().to_vec(),
        v1: ctx.v1().components().iter().map(|p| p.to_string()).collect(),
        v2: ctx.v2().components().iter().map(|p| p.to_string()).collect(),
        point: ctx.point().iter().map(|c| c.to_string()).collect(),
        f: f.to_string(),
        g: g.to_string(),
    }
}

/// Upper bound for the local multiplicity of the non-common parts of
/// `F|_L` and `G|_L`, from a ledger of controlled extensions that ends with
/// the point excluded.
pub fn nonisolated_bound(f: &Polynomial, g: &Polynomial, ctx: &Arc<FoliationContext>, cfg: &PairConfig) -> Result<BoundReport> {
    let start = Instant::now();
    let pc = cfg.puiseux();
    let fl = ctx.leaf_jet(f, cfg.order)?;
    let gl = ctx.leaf_jet(g, cfg.order)?;
    if fl.divisible_by(&gl) && fl.divide(&gl)?.is_unit() {
        return Err(Error::Hypothesis("common branch set equals germ".into()));
    }
    let split = split_common(&fl, &gl, &pc)?;
    let cap = if split.has_common_branch() { factor_multiplicities(&split.h_f, &pc)?.branch_count } else { 0 };
    let direct = local_multiplicity(&split.f, &split.g, &pc).ok().and_then(|m| m.value.finite());

    let ideal = IdealPresentation::new(ctx.ring(), [f.clone(), g.clone()])?;
    let mut s = make_pair(ideal, vec![split.f.clone(), split.g.clone()], ctx, cfg)?;
    let initial = PairSnapshot::of(&s);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut steps = Vec::new();
    let mut rounds = 0;
    let mut note = None;
    let status = loop {
        let (t, out) = match isolated_loop(s.clone(), cfg, &mut rng, &mut steps) {
            Ok(r) => r,
            Err(e) if e.is_budget() => {
                note = Some(e.to_string());
                break FinalStatus::ExhaustedBudget;
            }
            Err(e) => return Err(e),
        };
        s = t;
        match out {
            LoopOutcome::PointExcluded => break FinalStatus::PointExcluded,
            LoopOutcome::Exhausted => {
                note = Some("transverse pairs still found at the iteration cap".into());
                break FinalStatus::ExhaustedBudget;
            }
            LoopOutcome::Stable => {}
        }
        if s.radical_status() != Some(RadicalStatus::Exact) {
            note = Some("radical not certified; Jacobian step not applicable".into());
            break FinalStatus::RadicalPartial;
        }
        if rounds >= cap {
            note = Some(format!("Jacobian round cap {} reached", cap));
            break FinalStatus::ExhaustedBudget;
        }
        match jacobian_extension(&s, f, cfg) {
            Ok((t, st)) => {
                s = t;
                steps.push(st);
                rounds += 1;
            }
            Err(e) if e.is_budget() => {
                note = Some(e.to_string());
                break FinalStatus::ExhaustedBudget;
            }
            Err(e) => return Err(e),
        }
    };
    let bound = (status == FinalStatus::PointExcluded).then(|| compose(&steps, 0));
    Ok(BoundReport {
        trace_version: TRACE_VERSION,
        input: input_of(f, g, ctx),
        order: cfg.order,
        seed: cfg.seed,
        split: split.summary(),
        initial,
        ledger: BoundLedger { steps, status, note },
        bound,
        direct,
        jacobian_rounds: rounds,
        millis: start.elapsed().as_millis() as u64,
    })
}
