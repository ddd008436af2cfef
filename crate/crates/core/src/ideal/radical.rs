//! Radicals of polynomial ideals over the rationals.
//!
//! The radical is computed by reduction to dimension zero: for a maximal
//! independent set `U` the extension of `I` to `Q(U)[X \ U]` is
//! zero-dimensional, so Seidenberg's lemma applies there (adjoin the
//! squarefree part of every eliminant). The result is contracted back by
//! saturation and the remaining components are handled recursively on
//! `I + <h>`. Every generator of the output is then certified by an explicit
//! exponent `e` with `g^e ∈ I`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poly::{divide_exact, gcd, squarefree_part, Monomial, MonomialOrder, Polynomial};

use super::{block_order, eliminate, groebner, intersect, max_independent_set, saturate, Budget, GroebnerBasis, IdealPresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadicalStatus {
    Exact,
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedGenerator {
    pub generator: Polynomial,
    /// Least `e` with `generator^e ∈ I`.
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalCertificate {
    pub entries: Vec<CertifiedGenerator>,
    /// Candidates whose membership in the radical could not be certified
    /// below the exponent cap; they are not part of the output.
    pub dropped: Vec<Polynomial>,
    pub cap: u32,
}

impl RadicalCertificate {
    pub fn exponents(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.exponent).collect()
    }
}

#[derive(Clone, Debug)]
pub struct RadicalOutcome {
    pub radical: IdealPresentation,
    pub certificate: RadicalCertificate,
    pub status: RadicalStatus,
    /// Why the status is partial, when it is.
    pub note: Option<String>,
}

/// Least `e ≤ cap` with `g^e` in the ideal of `gb`: doubling, then binary
/// refinement on the last interval. `None` if not found up to `cap`.
pub fn nullstellensatz_exponent(g: &Polynomial, gb: &GroebnerBasis, cap: u32) -> Option<u32> {
    if cap == 0 {
        return None;
    }
    let mut powers = vec![gb.normal_form(g)];
    if powers[0].is_zero() {
        return Some(1);
    }
    let mut k = 0usize;
    loop {
        if (1u64 << (k + 1)) > cap as u64 {
            return None;
        }
        let next = gb.mul_reduce(&powers[k], &powers[k]);
        k += 1;
        let hit = next.is_zero();
        powers.push(next);
        if hit {
            break;
        }
    }
    // g^(2^(k-1)) ∉ I, g^(2^k) ∈ I
    let mut lo = 1u32 << (k - 1);
    let mut hi = 1u32 << k;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let mut acc: Option<Polynomial> = None;
        for (j, p) in powers.iter().enumerate().take(k) {
            if mid & (1 << j) != 0 {
                acc = Some(match acc {
                    None => p.clone(),
                    Some(a) => gb.mul_reduce(&a, p),
                });
            }
        }
        if acc.map(|a| a.is_zero()).unwrap_or(false) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

fn leading_coefficient_in(g: &Polynomial, block: &[usize], order: &MonomialOrder) -> Polynomial {
    let (lm, _) = g.leading(order).expect("nonzero");
    let key: Vec<u32> = block.iter().map(|&i| lm.exponents()[i]).collect();
    let ring = g.ring();
    let mut out = Polynomial::zero(ring);
    for (m, c) in g.terms() {
        if block.iter().map(|&i| m.exponents()[i]).eq(key.iter().cloned()) {
            let mut e = m.exponents().to_vec();
            for &i in block {
                e[i] = 0;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
    }
    out
}

// Squarefree product of the leading coefficients over Q[U].
fn leading_coefficient_product(gb: &GroebnerBasis, block: &[usize]) -> Result<Polynomial> {
    let ring = gb.ring().clone();
    let mut seen = BTreeSet::new();
    let mut h = Polynomial::one(&ring);
    for g in gb.basis() {
        let lc = leading_coefficient_in(g, block, gb.order());
        if lc.is_constant() {
            continue;
        }
        let s = squarefree_part(&lc)?;
        if seen.insert(s.to_string()) {
            h = &h * &s;
        }
    }
    if h.is_constant() {
        return Ok(h);
    }
    Ok(squarefree_part(&h)?)
}

fn gtz(ideal: &IdealPresentation, budget: &Budget, depth: usize) -> Result<IdealPresentation> {
    let ring = ideal.ring().clone();
    let n = ring.len();
    let gb = groebner(ideal, &MonomialOrder::degrevlex(), budget)?;
    if gb.is_unit() {
        return Ok(IdealPresentation::unit(&ring));
    }
    if gb.is_zero_ideal() {
        return Ok(IdealPresentation::zero(&ring));
    }
    if gb.basis().len() == 1 {
        return IdealPresentation::new(&ring, [squarefree_part(&gb.basis()[0])?]);
    }
    if depth > 2 * n + 2 {
        return Err(Error::budget("radical recursion", depth, gb.basis().to_vec()));
    }
    let u = max_independent_set(n, &gb.leading_monomials()).expect("not the unit ideal");
    let xs: Vec<usize> = (0..n).filter(|i| !u.contains(i)).collect();

    let mut extra = Vec::new();
    for &x in &xs {
        let others: Vec<usize> = xs.iter().cloned().filter(|&v| v != x).collect();
        let slice = eliminate(ideal, &others, budget)?;
        let gbx = groebner(&slice, &block_order(&[x], &u), budget)?;
        let q = gbx
            .basis()
            .iter()
            .filter(|g| g.uses_var(x))
            .min_by_key(|g| g.degree_in(x))
            .cloned()
            .ok_or_else(|| Error::Certificate(format!("no eliminant in variable {}", ring.names()[x])))?;
        let dq = q.derive(x)?;
        let s = divide_exact(&q, &gcd(&q, &dq))?;
        extra.push(s.monic());
    }
    let i1 = ideal.with(extra);
    if u.is_empty() {
        return Ok(i1);
    }
    let ord = block_order(&xs, &u);
    let gb1 = groebner(&i1, &ord, budget)?;
    let h1 = leading_coefficient_product(&gb1, &xs)?;
    let contracted = saturate(&i1, &h1, budget)?;

    let gb0 = groebner(ideal, &ord, budget)?;
    let h0 = leading_coefficient_product(&gb0, &xs)?;
    if h0.is_constant() {
        return Ok(contracted);
    }
    let rest = gtz(&ideal.with([h0]), budget, depth + 1)?;
    intersect(&contracted, &rest, budget)
}

/// `J` with `I ⊆ J ⊆ √I`, each generator of `J` carrying a certified
/// exponent. Status is exact when `J = √I`.
pub fn attempt_radical(ideal: &IdealPresentation, budget: &Budget) -> Result<RadicalOutcome> {
    let ring = ideal.ring().clone();
    let gb_i = groebner(ideal, &MonomialOrder::degrevlex(), budget)?;
    let (candidates, mut status, mut note) = match gtz(ideal, budget, 0) {
        Ok(j) => {
            let reduced = match groebner(&j, &MonomialOrder::degrevlex(), budget) {
                Ok(gb) => gb.basis().to_vec(),
                Err(e) if e.is_budget() => j.gens().to_vec(),
                Err(e) => return Err(e),
            };
            (reduced, RadicalStatus::Exact, None)
        }
        Err(e) if e.is_budget() => {
            let gens = ideal.gens().iter().map(squarefree_part).collect::<Result<Vec<_>, _>>()?;
            (gens, RadicalStatus::Partial, Some(format!("full radical not reached ({}); squarefree parts of generators used", e)))
        }
        Err(e) => return Err(e),
    };

    let mut entries = Vec::new();
    let mut dropped = Vec::new();
    for g in candidates {
        match nullstellensatz_exponent(&g, &gb_i, budget.exponent_cap) {
            Some(e) => entries.push(CertifiedGenerator { generator: g, exponent: e }),
            None => dropped.push(g),
        }
    }
    if !dropped.is_empty() {
        status = RadicalStatus::Partial;
        note.get_or_insert_with(|| format!("{} generator(s) not certified below exponent {}", dropped.len(), budget.exponent_cap));
    }
    // keep I ⊆ J even after dropping
    let j_now = IdealPresentation::new(&ring, entries.iter().map(|e| e.generator.clone()))?;
    if !dropped.is_empty() {
        let gb_j = groebner(&j_now, &MonomialOrder::degrevlex(), budget)?;
        for g in ideal.gens() {
            if !gb_j.contains(g) {
                entries.push(CertifiedGenerator { generator: g.clone(), exponent: 1 });
            }
        }
    }
    let radical = IdealPresentation::new(&ring, entries.iter().map(|e| e.generator.clone()))?;
    Ok(RadicalOutcome { radical, certificate: RadicalCertificate { entries, dropped, cap: budget.exponent_cap }, status, note })
}
