use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::germ::{factor_multiplicities, split_along, Jet2};
use crate::ideal::{attempt_radical, groebner, membership, radical_membership, RadicalStatus};
use crate::poly::{MonomialOrder, Polynomial, Q};

use super::ledger::{jet_text, Evidence, ExponentEntry, LedgerStep, PairSnapshot, StepKind, Transfer};
use super::{NoetherianPairState, PairConfig};

fn step(kind: StepKind, transfer: Transfer, evidence: Evidence, before: &NoetherianPairState, after: &NoetherianPairState, start: Instant) -> LedgerStep {
    let checked = match (before.local_multiplicity(), after.local_multiplicity()) {
        (Some(m0), Some(m1)) => Some(m0 <= transfer.apply(m1)),
        _ => None,
    };
    LedgerStep {
        kind,
        transfer,
        evidence,
        degree_before: before.ideal().max_degree(),
        degree_after: after.ideal().max_degree(),
        after: PairSnapshot::of(after),
        checked,
        millis: start.elapsed().as_millis() as u64,
    }
}

/// `(√I, 𝓘 + √I|_L)` with transfer `m ↦ M²·m`, `M = Σ (e_i - 1) + 1`.
pub fn radical_extension(s: &NoetherianPairState, cfg: &PairConfig) -> Result<(NoetherianPairState, LedgerStep)> {
    let start = Instant::now();
    let out = attempt_radical(s.ideal(), &cfg.budget)?;
    let power = 1 + out.certificate.entries.iter().map(|e| u64::from(e.exponent.saturating_sub(1))).sum::<u64>();
    let n = s.order();
    let jets: Vec<Jet2> = out.radical.gens().iter().map(|g| s.context().leaf_jet(g, n)).collect::<Result<_>>()?;
    let next = s.extend(out.radical.clone(), jets, Some(out.status), cfg)?;
    let evidence = Evidence::Radical {
        exponents: out.certificate.entries.iter().map(|e| ExponentEntry { generator: e.generator.to_string(), exponent: e.exponent }).collect(),
        power,
        status: out.status,
        dropped: out.certificate.dropped.iter().map(|p| p.to_string()).collect(),
        note: out.note.clone(),
    };
    let st = step(StepKind::Radical, Transfer { a: power * power, b: 0 }, evidence, s, &next, start);
    Ok((next, st))
}

/// Adds `{F, G}` on both sides; transfer `m ↦ m + 1`.
pub fn poisson_extension(s: &NoetherianPairState, f: &Polynomial, g: &Polynomial, cfg: &PairConfig) -> Result<(NoetherianPairState, LedgerStep)> {
    let start = Instant::now();
    for p in [f, g] {
        if !membership(p, s.ideal(), &cfg.budget)? {
            return Err(Error::Hypothesis(format!("{} is not in the global ideal", p)));
        }
    }
    let br = s.context().poisson(f, g)?;
    let jet = s.context().leaf_jet(&br, s.order())?;
    let next = s.extend(s.ideal().with([br.clone()]), [jet], None, cfg)?;
    let evidence = Evidence::Poisson { f: f.to_string(), g: g.to_string(), bracket: br.to_string() };
    let st = step(StepKind::Poisson, Transfer { a: 1, b: 1 }, evidence, s, &next, start);
    Ok((next, st))
}

/// Adds the order-`k` derivatives of `F` globally and the reduced common
/// factor `h'` locally; transfer `m ↦ n·m` with `n` the smaller of `K·2^K`
/// and the least certified `n` with `h'^n ∈ 𝓘`.
pub fn jacobian_extension(s: &NoetherianPairState, f: &Polynomial, cfg: &PairConfig) -> Result<(NoetherianPairState, LedgerStep)> {
    let start = Instant::now();
    if s.radical_status() != Some(RadicalStatus::Exact) {
        return Err(Error::Hypothesis("global ideal is not certified radical".into()));
    }
    if !membership(f, s.ideal(), &cfg.budget)? {
        return Err(Error::Hypothesis(format!("{} is not in the global ideal", f)));
    }
    let ctx = s.context();
    let n = s.order().max(cfg.order);
    let fl = ctx.leaf_jet(f, n)?;
    let locus: Vec<Jet2> = s.ideal().gens().iter().map(|g| ctx.leaf_jet(g, n)).collect::<Result<_>>()?;
    let split = split_along(&fl, &locus, &cfg.puiseux())?;
    if split.h.is_unit() || split.branches.cycles().is_empty() {
        return Err(Error::Hypothesis(format!("{} has no branch on the leaf trace of the zero set through the point", f)));
    }
    let cof = s.local_ideal().contains(&split.rest)?;
    if !cof.member {
        return Err(Error::Hypothesis("cofactor of the common part is not in the local ideal".into()));
    }
    let fd = factor_multiplicities(&split.h, &cfg.puiseux())?;
    let k = fd.k;
    let derivs: Vec<Polynomial> = (0..=k).map(|a| ctx.derivative(f, a, k - a)).collect::<Result<_>>()?;

    // strict progress: no minimal class is annihilated by all derivatives
    let djets: Vec<Jet2> = derivs.iter().map(|d| ctx.leaf_jet(d, n)).collect::<Result<_>>()?;
    for c in fd.minimal_classes() {
        let mut hit = false;
        for d in &djets {
            if !c.vanishes(d)? {
                hit = true;
                break;
            }
        }
        if !hit {
            return Err(Error::Certificate("no derivative of the order k is nonzero on a minimal branch".into()));
        }
    }

    let formula = u64::from(fd.big_k) << fd.big_k;
    let basis_order = s.order();
    let reduced = if fd.reduced.order() >= basis_order { fd.reduced.clone() } else { fd.reduced.regenerate(basis_order)? };
    let mut certified = None;
    let mut power = reduced.clone();
    for e in 1..=formula.min(u64::from(u32::MAX)) as u32 {
        let m = s.local_ideal().contains(&power)?;
        if m.member && m.exact {
            certified = Some(e);
            break;
        }
        if !m.exact && m.member {
            break;
        }
        power = power.mul(&reduced);
    }
    let factor = certified.map(u64::from).unwrap_or(formula).min(formula);

    let next = s.extend(s.ideal().with(derivs.clone()), [fd.reduced.clone()], None, cfg)?;
    let evidence = Evidence::Jacobian {
        f: f.to_string(),
        h: jet_text(&split.h),
        cofactor: jet_text(&split.rest),
        cofactor_exact: cof.exact,
        k,
        big_k: fd.big_k,
        mu: fd.mu,
        branch_count: fd.branch_count,
        reduced: jet_text(&fd.reduced),
        derivatives: derivs.iter().map(|d| d.to_string()).collect(),
        formula_factor: formula,
        certified_exponent: certified,
        strict_progress: true,
        split_method: split.method,
    };
    let st = step(StepKind::Jacobian, Transfer { a: factor, b: 0 }, evidence, s, &next, start);
    Ok((next, st))
}

fn combination(gens: &[Polynomial], coeffs: &[i64]) -> Polynomial {
    let mut acc = Polynomial::zero(gens[0].ring());
    for (g, c) in gens.iter().zip(coeffs) {
        if *c != 0 {
            acc = &acc + &g.scale(&Q::from_integer((*c).into()));
        }
    }
    acc
}

/// `F, G ∈ I` with `{F, G} ∉ √I`: random small integer combinations of the
/// generators first, then every pair of generators.
pub fn find_transverse_pair(s: &NoetherianPairState, cfg: &PairConfig, rng: &mut ChaCha8Rng) -> Result<Option<(Polynomial, Polynomial)>> {
    let gens = s.ideal().gens();
    if gens.is_empty() {
        return Err(Error::Hypothesis("the global ideal is zero".into()));
    }
    let exact = s.radical_status() == Some(RadicalStatus::Exact);
    let gb = if exact { Some(groebner(s.ideal(), &MonomialOrder::degrevlex(), &cfg.budget)?) } else { None };
    let outside = |p: &Polynomial| -> Result<bool> {
        if p.is_zero() {
            return Ok(false);
        }
        match &gb {
            Some(gb) => Ok(!gb.contains(p)),
            None => Ok(!radical_membership(p, s.ideal(), &cfg.budget)?),
        }
    };
    let ctx = s.context();
    if gens.len() > 1 {
        for _ in 0..cfg.transverse_tries {
            let a: Vec<i64> = gens.iter().map(|_| rng.gen_range(-3..=3)).collect();
            let b: Vec<i64> = gens.iter().map(|_| rng.gen_range(-3..=3)).collect();
            let (f, g) = (combination(gens, &a), combination(gens, &b));
            if f.is_zero() || g.is_zero() {
                continue;
            }
            if outside(&ctx.poisson(&f, &g)?)? {
                return Ok(Some((f, g)));
            }
        }
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if outside(&ctx.poisson(&gens[i], &gens[j])?)? {
                return Ok(Some((gens[i].clone(), gens[j].clone())));
            }
        }
    }
    Ok(None)
}
