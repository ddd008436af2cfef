//! Common factors of two germs, branch multiplicities of a germ, and the
//! local intersection multiplicity of a pair.
//!
//! Germs carrying an exact polynomial are handled by gcd and division in
//! `Q[t1, t2]`; other germs by Newton-Puiseux classes, a class counting as a
//! branch of a second germ when that germ vanishes on it to every certain
//! order.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::Multiplicity;
use crate::poly::{divide_exact, gcd, gcd_all, squarefree_decomposition, Polynomial};

use super::local::{stabilized_multiplicity, LocalMultiplicity};
use super::puiseux::{newton_puiseux, CycleSummary, PuiseuxBranchSet, PuiseuxConfig, PuiseuxCycle};
use super::{Jet2, Producer};

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum SplitMethod {
    PolynomialGcd,
    BranchMatching,
}

/// `germ = h * rest` where `h` collects the branches lying on a locus.
#[derive(Clone, Debug)]
pub struct LocusSplit {
    pub h: Jet2,
    pub rest: Jet2,
    /// Branch classes of `h`, with multiplicities.
    pub branches: PuiseuxBranchSet,
    pub method: SplitMethod,
    pub order_limited: bool,
}

#[derive(Clone, Debug)]
pub struct GermSplit {
    pub h_f: Jet2,
    pub h_g: Jet2,
    pub f: Jet2,
    pub g: Jet2,
    pub order: u32,
    pub method: SplitMethod,
    pub common_f: PuiseuxBranchSet,
    pub common_g: PuiseuxBranchSet,
    pub order_limited: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GermSplitSummary {
    pub h_f: String,
    pub h_g: String,
    pub f: String,
    pub g: String,
    pub order: u32,
    pub method: SplitMethod,
    pub common_branches: Vec<CycleSummary>,
    pub order_limited: bool,
}

impl GermSplit {
    pub fn has_common_branch(&self) -> bool {
        !self.common_f.cycles().is_empty()
    }

    pub fn summary(&self) -> GermSplitSummary {
        GermSplitSummary {
            h_f: self.h_f.to_polynomial().to_string(),
            h_g: self.h_g.to_polynomial().to_string(),
            f: self.f.to_polynomial().to_string(),
            g: self.g.to_polynomial().to_string(),
            order: self.order,
            method: self.method,
            common_branches: self.common_f.cycles().iter().map(PuiseuxCycle::summary).collect(),
            order_limited: self.order_limited,
        }
    }
}

/// Part of `p` made of irreducible factors of `d`, with the multiplicities
/// they have in `p`. Factors not vanishing at the origin are dropped from
/// `d` level by level first.
pub fn common_part(p: &Polynomial, d: &Polynomial) -> Result<Polynomial> {
    let r = p.ring();
    if d.is_zero() {
        return Ok(p.clone());
    }
    if d.is_constant() || p.is_zero() {
        return Ok(Polynomial::one(r));
    }
    let mut core = Polynomial::one(r);
    for (level, _) in squarefree_decomposition(d)? {
        if level.constant_term().is_zero() {
            core = &core * &level;
        }
    }
    let mut h = Polynomial::one(r);
    let mut rest = p.clone();
    loop {
        let g = gcd(&rest, &core);
        if g.is_constant() {
            break;
        }
        rest = divide_exact(&rest, &g)?;
        h = &h * &g;
    }
    Ok(h.monic())
}

fn nonzero(j: &Jet2, cfg: &PuiseuxConfig) -> Result<Jet2> {
    let mut j = j.clone();
    if j.order() < cfg.order && j.can_regenerate() {
        j = j.regenerate(cfg.order)?;
    }
    while j.valuation().is_none() {
        if let Some(p) = j.exact_polynomial() {
            if p.is_zero() {
                return Err(Error::Hypothesis("germ is zero".into()));
            }
        }
        if !j.can_regenerate() || j.order() >= cfg.max_order {
            return Err(Error::Inconclusive { order: j.order(), reason: "germ vanishes to the reachable order".into() });
        }
        j = j.regenerate((2 * j.order()).clamp(1, cfg.max_order))?;
    }
    Ok(j)
}

/// Split `germ` into the branches on the common zero locus of `locus` and
/// the rest.
pub fn split_along(germ: &Jet2, locus: &[Jet2], cfg: &PuiseuxConfig) -> Result<LocusSplit> {
    let germ = nonzero(germ, cfg)?;
    let exact: Option<Vec<&Polynomial>> = locus.iter().map(|j| j.exact_polynomial()).collect();
    if let (Some(p), Some(ls)) = (germ.exact_polynomial(), exact) {
        let d = gcd_all(p.ring(), ls.iter().copied());
        let h = common_part(p, &d)?;
        let rest = divide_exact(p, &h)?;
        let n = germ.order();
        let hj = Jet2::from_polynomial(&h, n);
        let branches = newton_puiseux(&hj, &PuiseuxConfig { shift: None, ..cfg.clone() })?;
        return Ok(LocusSplit { h: hj, rest: Jet2::from_polynomial(&rest, n), branches, method: SplitMethod::PolynomialGcd, order_limited: false });
    }
    let (h, branches) = lazy_locus_part(&germ, locus, cfg)?;
    let order_limited = branches.order_limited();
    let h = if germ.can_regenerate() && locus.iter().all(Jet2::can_regenerate) {
        let (g, l, c) = (germ.clone(), locus.to_vec(), cfg.clone());
        let p: Producer = Arc::new(move |m| {
            let gm = g.regenerate(m)?;
            let lm: Vec<Jet2> = l.iter().map(|j| j.regenerate(m)).collect::<Result<_>>()?;
            Ok(lazy_locus_part(&gm, &lm, &PuiseuxConfig { order: m, max_order: c.max_order.max(m), shift: None })?.0)
        });
        h.with_producer(p)
    } else {
        h
    };
    let rest = germ.divide(&h)?;
    Ok(LocusSplit { h, rest, branches, method: SplitMethod::BranchMatching, order_limited })
}

fn lazy_locus_part(germ: &Jet2, locus: &[Jet2], cfg: &PuiseuxConfig) -> Result<(Jet2, PuiseuxBranchSet)> {
    let n = cfg.order.min(germ.order());
    let set = newton_puiseux(germ, &PuiseuxConfig { shift: None, order: n, max_order: cfg.max_order })?;
    let mut keep = Vec::new();
    for (i, c) in set.cycles().iter().enumerate() {
        let mut on = true;
        for l in locus {
            let l = if l.order() < n && l.can_regenerate() { l.regenerate(n)? } else { l.clone() };
            if !c.vanishes(&l)? {
                on = false;
                break;
            }
        }
        if on {
            keep.push(i);
        }
    }
    let sub = set.subset(&keep);
    let h = sub.reconstruct(n)?;
    Ok((h, sub))
}

/// Common-factor split of two nonzero germs.
pub fn split_common(fl: &Jet2, gl: &Jet2, cfg: &PuiseuxConfig) -> Result<GermSplit> {
    let a = split_along(fl, std::slice::from_ref(gl), cfg)?;
    let b = split_along(gl, std::slice::from_ref(fl), cfg)?;
    let method =
        if a.method == SplitMethod::PolynomialGcd && b.method == SplitMethod::PolynomialGcd { SplitMethod::PolynomialGcd } else { SplitMethod::BranchMatching };
    let order = a.h.order().min(b.h.order());
    let order_limited = a.order_limited || b.order_limited;
    if a.branches.cycles().len() != b.branches.cycles().len() {
        return Err(Error::Certificate("common branch classes of the two germs disagree".into()));
    }
    Ok(GermSplit { h_f: a.h, h_g: b.h, f: a.rest, g: b.rest, order, method, common_f: a.branches, common_g: b.branches, order_limited })
}

/// `k`, `K`, the reduced form `h'` and the branch count of a germ.
#[derive(Clone, Debug)]
pub struct FactorData {
    pub k: u32,
    pub big_k: u32,
    pub reduced: Jet2,
    pub branch_count: u32,
    pub mu: u32,
    pub branches: PuiseuxBranchSet,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorSummary {
    pub k: u32,
    pub big_k: u32,
    pub reduced: String,
    pub branch_count: u32,
    pub mu: u32,
}

impl FactorData {
    pub fn summary(&self) -> FactorSummary {
        FactorSummary { k: self.k, big_k: self.big_k, reduced: self.reduced.to_polynomial().to_string(), branch_count: self.branch_count, mu: self.mu }
    }

    /// Classes of least multiplicity.
    pub fn minimal_classes(&self) -> Vec<&PuiseuxCycle> {
        self.branches.cycles().iter().filter(|c| c.multiplicity() == self.k).collect()
    }
}

pub fn factor_multiplicities(h: &Jet2, cfg: &PuiseuxConfig) -> Result<FactorData> {
    let h = nonzero(h, cfg)?;
    if h.is_unit() {
        return Err(Error::Hypothesis("germ does not vanish at the origin".into()));
    }
    let branches = newton_puiseux(&h, &PuiseuxConfig { shift: None, ..cfg.clone() })?;
    if branches.cycles().is_empty() {
        return Err(Error::Hypothesis("germ has no branch through the origin".into()));
    }
    let mults: Vec<u32> = branches.cycles().iter().map(PuiseuxCycle::multiplicity).collect();
    let k = *mults.iter().min().unwrap();
    let big_k = *mults.iter().max().unwrap();
    let branch_count = mults.iter().sum();
    let mu = h.valuation().unwrap();
    let reduced = match h.exact_polynomial() {
        Some(p) => {
            let mut red = Polynomial::one(p.ring());
            for (level, _) in squarefree_decomposition(p)? {
                if level.constant_term().is_zero() {
                    red = &red * &level;
                }
            }
            Jet2::from_polynomial(&red, h.order())
        }
        None => {
            let n = branches.order().min(cfg.order);
            let mut red = Jet2::one(n);
            for c in branches.cycles() {
                red = red.mul(&c.product(n)?);
            }
            if h.can_regenerate() {
                let (hh, c) = (h.clone(), cfg.clone());
                let p: Producer = Arc::new(move |m| {
                    let set = newton_puiseux(&hh.regenerate(m)?, &PuiseuxConfig { shift: None, order: m, max_order: c.max_order.max(m) })?;
                    let mut red = Jet2::one(m);
                    for cy in set.cycles() {
                        red = red.mul(&cy.product(m)?);
                    }
                    Ok(red)
                });
                red = red.with_producer(p);
            }
            red
        }
    };
    Ok(FactorData { k, big_k, reduced, branch_count, mu, branches })
}

/// Local intersection multiplicity of two germs.
///
/// A common branch gives `Infinite`; otherwise the value is the staircase
/// count of a certified local standard basis, and an error is returned when
/// the reachable orders do not stabilize.
pub fn local_multiplicity(f: &Jet2, g: &Jet2, cfg: &PuiseuxConfig) -> Result<LocalMultiplicity> {
    for j in [f, g] {
        if let Some(p) = j.exact_polynomial() {
            if p.is_zero() {
                return Ok(LocalMultiplicity { value: Multiplicity::Infinite, certificate: None, note: Some("a germ is zero".into()) });
            }
        }
    }
    if !f.is_unit() && !g.is_unit() {
        match (f.exact_polynomial(), g.exact_polynomial()) {
            (Some(p), Some(q)) => {
                let d = gcd(p, q);
                if !d.is_constant() && d.constant_term().is_zero() {
                    return Ok(LocalMultiplicity {
                        value: Multiplicity::Infinite,
                        certificate: None,
                        note: Some(format!("common factor {} through the origin", d)),
                    });
                }
            }
            _ => {
                let s = split_along(f, std::slice::from_ref(g), cfg)?;
                if !s.branches.cycles().is_empty() {
                    let note = if s.order_limited { "common branch at the reachable order" } else { "common branch" };
                    return Ok(LocalMultiplicity { value: Multiplicity::Infinite, certificate: None, note: Some(note.into()) });
                }
            }
        }
    }
    let start = f.order().min(g.order()).max(2);
    match stabilized_multiplicity(&[f.clone(), g.clone()], start, cfg.max_order)? {
        Some((lb, cert)) => Ok(LocalMultiplicity { value: Multiplicity::Finite(lb.staircase().len() as u64), certificate: Some(cert), note: None }),
        None => Err(Error::Inconclusive { order: cfg.max_order.min(f.order().min(g.order())), reason: "local standard basis did not stabilize".into() }),
    }
}

#[cfg(test)]
mod tests;
