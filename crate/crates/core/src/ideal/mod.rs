//! Global polynomial ideals: Groebner bases, membership, dimension,
//! staircases, elimination and radicals.

mod groebner;
pub mod mora;
pub mod radical;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, PolyError, Polynomial, Ring};

pub use groebner::GroebnerStats;
pub(crate) use groebner::{reduce, sub_mul, Sorted};
pub use radical::{attempt_radical, nullstellensatz_exponent, RadicalCertificate, RadicalOutcome, RadicalStatus};

/// Resource caps for the Groebner engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of S-pairs reduced in one basis computation.
    pub max_pairs: usize,
    /// Cap for Nullstellensatz exponent searches.
    pub exponent_cap: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 20_000, exponent_cap: 64 }
    }
}

impl Budget {
    pub fn with_pairs(max_pairs: usize) -> Self {
        Budget { max_pairs, ..Budget::default() }
    }
}

/// A finite generating set. Zero generators are dropped and duplicates
/// (up to a nonzero scalar) removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut out = IdealPresentation { ring: ring.clone(), gens: Vec::new() };
        for g in gens {
            if g.ring() != ring {
                return Err(PolyError::RingMismatch { left: ring.names().join(","), right: g.ring().names().join(",") }.into());
            }
            out.push(g);
        }
        Ok(out)
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Self> {
        let ps = gens.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, ps)
    }

    pub fn zero(ring: &Ring) -> Self {
        IdealPresentation { ring: ring.clone(), gens: Vec::new() }
    }

    pub fn unit(ring: &Ring) -> Self {
        IdealPresentation { ring: ring.clone(), gens: vec![Polynomial::one(ring)] }
    }

    fn push(&mut self, g: Polynomial) {
        if g.is_zero() {
            return;
        }
        let key = g.monic();
        if !self.gens.iter().any(|h| h.monic() == key) {
            self.gens.push(g);
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Polynomial>) -> Self {
        let mut out = self.clone();
        for g in extra {
            out.push(g);
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0)
    }
}

/// Reduced Groebner basis under a global order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    basis: Vec<Polynomial>,
    sorted: Vec<Sorted>,
    reduced: bool,
    stats: GroebnerStats,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn stats(&self) -> &GroebnerStats {
        &self.stats
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|s| s.lm().clone()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        assert!(f.ring() == &self.ring, "normal form across rings");
        if self.is_unit() {
            return Polynomial::zero(&self.ring);
        }
        reduce(&Sorted::from_poly(f, &self.order), &self.sorted, &self.order).to_poly(&self.ring)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Normal form of `a * b` for `a`, `b` already reduced.
    pub(crate) fn mul_reduce(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.normal_form(&(a * b))
    }
}

pub fn groebner(ideal: &IdealPresentation, order: &MonomialOrder, budget: &Budget) -> Result<GroebnerBasis> {
    if !order.is_global() {
        return Err(Error::Unsupported("groebner needs a global order; use the local standard basis".into()));
    }
    let (basis, stats) = groebner::buchberger(&ideal.ring, &ideal.gens, order, budget.max_pairs)?;
    let sorted = basis.iter().map(|p| Sorted::from_poly(p, order)).collect();
    Ok(GroebnerBasis { ring: ideal.ring.clone(), order: order.clone(), basis, sorted, reduced: true, stats })
}

pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Polynomial {
    g.normal_form(f)
}

pub fn membership(f: &Polynomial, ideal: &IdealPresentation, budget: &Budget) -> Result<bool> {
    Ok(groebner(ideal, &MonomialOrder::degrevlex(), budget)?.contains(f))
}

/// `f` lies in the radical of `I` iff `1` lies in `I + <1 - t f>`.
pub fn radical_membership(f: &Polynomial, ideal: &IdealPresentation, budget: &Budget) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let ext = ideal.ring.extend("t");
    let t = Polynomial::var(&ext, ext.len() - 1);
    let mut gens: Vec<Polynomial> = ideal.gens.iter().map(|g| g.embed(&ext)).collect::<Result<_, _>>()?;
    gens.push(&Polynomial::one(&ext) - &(&t * &f.embed(&ext)?));
    let gb = groebner(&IdealPresentation::new(&ext, gens)?, &MonomialOrder::degrevlex(), budget)?;
    Ok(gb.is_unit())
}

/// Minimal monomial generators of the leading-term ideal.
pub fn leading_term_ideal(ideal: &IdealPresentation, order: &MonomialOrder, budget: &Budget) -> Result<IdealPresentation> {
    let gb = groebner(ideal, order, budget)?;
    let ring = ideal.ring.clone();
    let lms = minimal_monomials(gb.leading_monomials());
    IdealPresentation::new(&ring, lms.into_iter().map(|m| Polynomial::monomial(&ring, m, One::one())))
}

pub(crate) fn minimal_monomials(ms: Vec<Monomial>) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for (i, m) in ms.iter().enumerate() {
        let dominated = ms.iter().enumerate().any(|(j, o)| j != i && o.divides(m) && (o != m || j < i));
        if !dominated {
            out.push(m.clone());
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(n) => Some(n),
            Multiplicity::Infinite => None,
        }
    }
}

impl std::fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{}", n),
            Multiplicity::Infinite => write!(f, "infinite"),
        }
    }
}

/// Number of monomials outside the monomial ideal generated by `lms` in `n`
/// variables, or infinite when some variable has no pure power among them.
pub fn staircase_count(n: usize, lms: &[Monomial]) -> Multiplicity {
    if lms.iter().any(Monomial::is_one) {
        return Multiplicity::Finite(0);
    }
    let mut bounds = vec![None; n];
    for m in lms {
        let support: Vec<usize> = (0..n).filter(|&i| m.exponents()[i] > 0).collect();
        if support.len() == 1 {
            let i = support[0];
            let e = m.exponents()[i];
            bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
        }
    }
    if bounds.iter().any(Option::is_none) {
        return Multiplicity::Infinite;
    }
    let bounds: Vec<u32> = bounds.into_iter().map(Option::unwrap).collect();
    let mut count = 0u64;
    let mut e = vec![0u32; n];
    count_rec(0, &mut e, &bounds, lms, &mut count);
    Multiplicity::Finite(count)
}

fn count_rec(i: usize, e: &mut Vec<u32>, bounds: &[u32], lms: &[Monomial], count: &mut u64) {
    if i == e.len() {
        *count += 1;
        return;
    }
    for k in 0..bounds[i] {
        e[i] = k;
        // a divisible prefix (rest zero) means every extension is divisible too
        let probe = Monomial::new(e[..=i].iter().cloned().chain(std::iter::repeat_n(0, e.len() - i - 1)).collect());
        if lms.iter().any(|m| m.divides(&probe)) {
            break;
        }
        count_rec(i + 1, e, bounds, lms, count);
    }
    e[i] = 0;
}

/// Dimension of `Q[x]/I` (global order) or of the local algebra at the
/// origin (local order, via the tangent-cone standard basis).
pub fn multiplicity_zero_dim(ideal: &IdealPresentation, order: &MonomialOrder, budget: &Budget) -> Result<Multiplicity> {
    let lms = if order.is_global() { groebner(ideal, order, budget)?.leading_monomials() } else { mora::standard_basis(ideal, budget)?.leading_monomials() };
    Ok(staircase_count(ideal.ring.len(), &lms))
}

/// All `n`-fold products of generators.
pub fn ideal_power(ideal: &IdealPresentation, n: u32) -> IdealPresentation {
    assert!(n >= 1, "ideal power needs n >= 1");
    let mut cur: Vec<(usize, Polynomial)> = ideal.gens.iter().cloned().enumerate().collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for (last, p) in &cur {
            for (i, g) in ideal.gens.iter().enumerate().skip(*last) {
                next.push((i, p * g));
            }
        }
        cur = next;
    }
    IdealPresentation::new(&ideal.ring, cur.into_iter().map(|(_, p)| p)).expect("same ring")
}

/// Variable subsets (as sorted index lists) containing no leading monomial's
/// support, of maximal size.
pub(crate) fn max_independent_set(n: usize, lms: &[Monomial]) -> Option<Vec<usize>> {
    if lms.iter().any(Monomial::is_one) {
        return None;
    }
    let supports: Vec<u64> = lms.iter().map(|m| (0..n).filter(|&i| m.exponents()[i] > 0).fold(0u64, |acc, i| acc | (1 << i))).collect();
    let mut best: Option<u64> = None;
    for mask in 0u64..(1 << n) {
        if supports.iter().any(|&s| s & !mask == 0) {
            continue;
        }
        let better = match best {
            None => true,
            Some(b) => mask.count_ones() > b.count_ones(),
        };
        if better {
            best = Some(mask);
        }
    }
    best.map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
}

/// Krull dimension; -1 for the unit ideal.
pub fn dimension(ideal: &IdealPresentation, budget: &Budget) -> Result<i64> {
    let gb = groebner(ideal, &MonomialOrder::degrevlex(), budget)?;
    Ok(match max_independent_set(ideal.ring.len(), &gb.leading_monomials()) {
        None => -1,
        Some(u) => u.len() as i64,
    })
}

/// Block order with `first` (in the given sequence) eliminated before `rest`.
pub fn block_order(first: &[usize], rest: &[usize]) -> MonomialOrder {
    let perm: Vec<usize> = first.iter().chain(rest.iter()).cloned().collect();
    MonomialOrder::elimination(first.len()).with_perm(perm)
}

/// `I ∩ Q[keep]`, as generators in the same ring.
pub fn eliminate(ideal: &IdealPresentation, drop: &[usize], budget: &Budget) -> Result<IdealPresentation> {
    let keep: Vec<usize> = (0..ideal.ring.len()).filter(|i| !drop.contains(i)).collect();
    let gb = groebner(ideal, &block_order(drop, &keep), budget)?;
    let gens = gb.basis.iter().filter(|g| drop.iter().all(|&v| !g.uses_var(v))).cloned();
    IdealPresentation::new(&ideal.ring, gens)
}

fn with_tag(ideal: &IdealPresentation) -> Result<(Ring, Polynomial, Vec<Polynomial>)> {
    let ext = ideal.ring.extend("t");
    let t = Polynomial::var(&ext, ext.len() - 1);
    let gens = ideal.gens.iter().map(|g| g.embed(&ext)).collect::<Result<Vec<_>, _>>()?;
    Ok((ext, t, gens))
}

fn contract(ext_gb: &GroebnerBasis, ring: &Ring) -> Result<IdealPresentation> {
    let t = ext_gb.ring.len() - 1;
    let gens = ext_gb.basis.iter().filter(|g| !g.uses_var(t)).map(|g| g.embed(ring)).collect::<Result<Vec<_>, _>>()?;
    IdealPresentation::new(ring, gens)
}

/// `I : h^∞`.
pub fn saturate(ideal: &IdealPresentation, h: &Polynomial, budget: &Budget) -> Result<IdealPresentation> {
    if h.is_constant() && !h.is_zero() {
        return Ok(ideal.clone());
    }
    let (ext, t, mut gens) = with_tag(ideal)?;
    gens.push(&Polynomial::one(&ext) - &(&t * &h.embed(&ext)?));
    let n = ext.len();
    let rest: Vec<usize> = (0..n - 1).collect();
    let gb = groebner(&IdealPresentation::new(&ext, gens)?, &block_order(&[n - 1], &rest), budget)?;
    contract(&gb, &ideal.ring)
}

/// `A ∩ B` via `t A + (1 - t) B`.
pub fn intersect(a: &IdealPresentation, b: &IdealPresentation, budget: &Budget) -> Result<IdealPresentation> {
    if a.is_zero_ideal() || b.is_zero_ideal() {
        return Ok(IdealPresentation::zero(&a.ring));
    }
    let (ext, t, ga) = with_tag(a)?;
    let gb_gens = b.gens.iter().map(|g| g.embed(&ext)).collect::<Result<Vec<_>, _>>()?;
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let gens: Vec<Polynomial> = ga.iter().map(|g| &t * g).chain(gb_gens.iter().map(|g| &one_minus_t * g)).collect();
    let n = ext.len();
    let rest: Vec<usize> = (0..n - 1).collect();
    let gb = groebner(&IdealPresentation::new(&ext, gens)?, &block_order(&[n - 1], &rest), budget)?;
    contract(&gb, &a.ring)
}

/// Reduced-basis presentation, which is canonical for a fixed order.
pub fn canonical(ideal: &IdealPresentation, budget: &Budget) -> Result<IdealPresentation> {
    let gb = groebner(ideal, &MonomialOrder::degrevlex(), budget)?;
    IdealPresentation::new(&ideal.ring, gb.basis.clone())
}

/// Monomial ideal test helper: is `m` in the ideal generated by `gens`?
pub fn monomial_in(m: &Monomial, gens: &[Monomial]) -> bool {
    gens.iter().any(|g| g.divides(m))
}

#[cfg(test)]
mod tests;
