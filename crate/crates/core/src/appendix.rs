//! On-leaf extension witnesses: for `F|_L = f·h` with `h` collecting the
//! branches of `F` on the leaf trace of `V(I)`, the product `H` of the class
//! factors over all monodromic sub-multisets of the branches of `h` divides
//! `h^(2^μ)` and vanishes on `V(I)|_L`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foliation::FoliationContext;
use crate::germ::{newton_puiseux, split_along, CycleSummary, Jet2, LocalIdeal, PuiseuxBranchSet, PuiseuxConfig};
use crate::ideal::{membership, IdealPresentation};
use crate::pairs::{find_transverse_pair, make_pair, PairConfig};
use crate::poly::Polynomial;

/// Chosen multiplicity per class of the branch set, each at most the
/// class's own multiplicity.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, Hash)]
pub struct MonodromicSubset {
    pub counts: Vec<u32>,
}

impl MonodromicSubset {
    pub fn size(&self, b: &PuiseuxBranchSet) -> u32 {
        self.counts.iter().zip(b.cycles()).map(|(k, c)| k * c.degree()).sum()
    }
}

/// Every nonempty union of whole classes with multiplicities.
pub fn enumerate_monodromic(b: &PuiseuxBranchSet) -> Vec<MonodromicSubset> {
    let caps: Vec<u32> = b.cycles().iter().map(|c| c.multiplicity()).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u32; caps.len()];
    loop {
        let mut i = 0;
        while i < caps.len() && cur[i] == caps[i] {
            cur[i] = 0;
            i += 1;
        }
        if i == caps.len() {
            break;
        }
        cur[i] += 1;
        out.push(MonodromicSubset { counts: cur.clone() });
    }
    out
}

/// `prod (t2 - y_b)` over the branches of `s`, to order `n`.
pub fn construct_fs(b: &PuiseuxBranchSet, s: &MonodromicSubset, n: u32) -> Result<Jet2> {
    if s.counts.len() != b.cycles().len() || s.counts.iter().zip(b.cycles()).any(|(k, c)| *k > c.multiplicity()) {
        return Err(Error::Hypothesis("subset does not fit the branch set".into()));
    }
    let mut acc = Jet2::one(n);
    for (k, c) in s.counts.iter().zip(b.cycles()) {
        if *k > 0 {
            acc = acc.mul(&c.product(n)?.pow(*k));
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct ExtensionWitness {
    pub h: Jet2,
    pub mu: u32,
    pub branches: PuiseuxBranchSet,
    pub subsets: Vec<MonodromicSubset>,
    pub big_h: Jet2,
    /// `H` times the quotient matches `h^(2^μ)` up to this order.
    pub divisibility_order: u32,
    /// Jet order of `H` substituted into the branches of `V(I)|_L`.
    pub vanishing_order: u32,
    pub locus_classes: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WitnessSummary {
    pub h: String,
    pub mu: u32,
    pub branches: Vec<CycleSummary>,
    pub subsets: Vec<MonodromicSubset>,
    pub factors: usize,
    pub big_h: String,
    pub order_of_big_h: Option<u32>,
    pub divisibility_order: u32,
    pub vanishing_order: u32,
    pub locus_classes: usize,
}

impl ExtensionWitness {
    pub fn summary(&self) -> WitnessSummary {
        WitnessSummary {
            h: self.h.to_polynomial().to_string(),
            mu: self.mu,
            branches: self.branches.summary().cycles,
            subsets: self.subsets.clone(),
            factors: self.subsets.len(),
            big_h: self.big_h.to_polynomial().to_string(),
            order_of_big_h: self.big_h.valuation(),
            divisibility_order: self.divisibility_order,
            vanishing_order: self.vanishing_order,
            locus_classes: self.locus_classes,
        }
    }
}

const MAX_MU: u32 = 12;

fn at(j: &Jet2, n: u32) -> Result<Jet2> {
    if j.order() >= n {
        Ok(j.truncate(n))
    } else {
        j.regenerate(n)
    }
}

/// Builds `H` for `F ∈ I` and checks both certificates at order
/// `max(16, cfg.order)`.
pub fn construct_h(f: &Polynomial, ideal: &IdealPresentation, ctx: &Arc<FoliationContext>, cfg: &PairConfig) -> Result<ExtensionWitness> {
    let n = cfg.order.max(16);
    if !membership(f, ideal, &cfg.budget)? {
        return Err(Error::Hypothesis(format!("{} is not in the ideal", f)));
    }
    let locus: Vec<Jet2> = ideal.gens().iter().map(|g| ctx.leaf_jet(g, n)).collect::<Result<_>>()?;
    let s = make_pair(ideal.clone(), locus.clone(), ctx, cfg)?;
    if s.point_excluded()? {
        return Err(Error::Hypothesis("the point is not on the zero set".into()));
    }
    if LocalIdeal::new(&locus, n, cfg.max_order)?.is_certified() {
        return Err(Error::Hypothesis("the zero set meets the leaf in an isolated point".into()));
    }
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(cfg.seed);
    if find_transverse_pair(&s, cfg, &mut rng)?.is_some() {
        return Err(Error::Hypothesis("a transverse pair exists: some intersection is isolated".into()));
    }
    let pc = PuiseuxConfig { shift: None, order: n, max_order: cfg.max_order.max(n) };

    let fl = ctx.leaf_jet(f, n)?;
    let split = split_along(&fl, &locus, &pc)?;
    if split.h.is_unit() {
        return Err(Error::Hypothesis(format!("{} has no branch on the zero set through the point", f)));
    }
    let mu = split.h.valuation().unwrap_or(0);
    if mu > MAX_MU {
        return Err(Error::Unsupported(format!("order {} of the common part exceeds {}", mu, MAX_MU)));
    }
    let power = 1u32 << mu;
    // H has order at most 2^μ·μ; work far enough up that the quotient is
    // still known to order n
    let m = n + power * mu;
    let h = at(&split.h, m)?;
    let branches = newton_puiseux(&h, &PuiseuxConfig { order: m, max_order: m.max(pc.max_order), ..pc.clone() })?;
    let subsets = enumerate_monodromic(&branches);
    let mut big_h = Jet2::one(m);
    for sub in &subsets {
        let fs = construct_fs(&branches, sub, m)?;
        if !h.divisible_by(&fs) {
            return Err(Error::Certificate(format!("F_S for {:?} does not divide h", sub.counts)));
        }
        big_h = big_h.mul(&fs);
    }

    let hp = h.pow(power);
    if !hp.divisible_by(&big_h) {
        return Err(Error::Certificate("H does not divide h^(2^mu)".into()));
    }
    let divisibility_order = m - big_h.valuation().unwrap_or(0).min(m);

    // branches of V(I)|_L, found from the generators of I alone
    let first = locus.iter().position(|j| !j.is_zero()).ok_or_else(|| Error::Hypothesis("the ideal vanishes on the whole leaf".into()))?;
    let others: Vec<Jet2> = locus.iter().enumerate().filter(|(i, _)| *i != first).map(|(_, j)| j.clone()).collect();
    let trace = split_along(&locus[first], &others, &pc)?;
    let check = big_h.truncate(n);
    for (i, c) in trace.branches.cycles().iter().enumerate() {
        if !c.vanishes(&check)? {
            return Err(Error::Certificate(format!("H does not vanish on branch {} of the zero set", i)));
        }
    }
    Ok(ExtensionWitness {
        h: split.h.truncate(n),
        mu,
        branches,
        subsets,
        big_h,
        divisibility_order,
        vanishing_order: n,
        locus_classes: trace.branches.cycles().len(),
    })
}
