//! Standard bases of polynomial ideals in the local ring at the origin,
//! by Mora's tangent-cone normal form under the local degree order.

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

use super::{sub_mul, Budget, IdealPresentation, Sorted};

#[derive(Clone, Debug)]
pub struct LocalStandardBasis {
    ring: Ring,
    basis: Vec<Polynomial>,
    lms: Vec<Monomial>,
}

impl LocalStandardBasis {
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.lms.clone()
    }
}

fn ecart(p: &Sorted) -> u32 {
    let top = p.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0);
    top - p.lm().degree()
}

fn reduce_step(h: &Sorted, g: &Sorted, order: &MonomialOrder) -> Sorted {
    let q = g.lm().quotient_of(h.lm());
    let k = h.lc() / g.lc();
    Sorted { terms: sub_mul(&h.terms, &k, &q, &g.terms, order) }
}

/// Weak normal form: the result is zero or has a leading monomial outside
/// the leading ideal of `basis`.
pub(crate) fn mora_normal_form(f: &Sorted, basis: &[Sorted], order: &MonomialOrder) -> Sorted {
    let mut h = f.clone();
    let mut t: Vec<Sorted> = basis.to_vec();
    while !h.is_zero() {
        let best = t.iter().enumerate().filter(|(_, g)| g.lm().divides(h.lm())).min_by_key(|(i, g)| (ecart(g), *i)).map(|(i, _)| i);
        let i = match best {
            Some(i) => i,
            None => break,
        };
        let g = t[i].clone();
        if ecart(&g) > ecart(&h) {
            t.push(h.clone());
        }
        h = reduce_step(&h, &g, order);
    }
    h
}

fn spoly(a: &Sorted, b: &Sorted, order: &MonomialOrder) -> Sorted {
    let l = a.lm().lcm(b.lm());
    let ma = a.lm().quotient_of(&l);
    let mb = b.lm().quotient_of(&l);
    let ka = a.lc().recip();
    let kb = b.lc().recip();
    let left: Vec<_> = a.terms.iter().map(|(m, c)| (m.mul(&ma), c * &ka)).collect();
    Sorted { terms: sub_mul(&left, &kb, &mb, &b.terms, order) }
}

pub fn standard_basis(ideal: &IdealPresentation, budget: &Budget) -> Result<LocalStandardBasis> {
    let order = MonomialOrder::local();
    let ring = ideal.ring().clone();
    let mut basis: Vec<Sorted> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for g in ideal.gens() {
        let mut s = Sorted::from_poly(g, &order);
        if s.is_zero() {
            continue;
        }
        s.make_monic();
        for i in 0..basis.len() {
            pairs.push((i, basis.len()));
        }
        basis.push(s);
    }
    let mut steps = 0;
    while let Some((i, j)) = pairs.pop() {
        if basis[i].lm().coprime(basis[j].lm()) {
            continue;
        }
        steps += 1;
        if steps > budget.max_pairs {
            return Err(Error::budget("local standard basis", steps - 1, basis.iter().map(|s| s.to_poly(&ring)).collect()));
        }
        let s = spoly(&basis[i], &basis[j], &order);
        let mut h = mora_normal_form(&s, &basis, &order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        for k in 0..basis.len() {
            pairs.push((k, basis.len()));
        }
        basis.push(h);
    }
    let lms = super::minimal_monomials(basis.iter().map(|s| s.lm().clone()).collect());
    Ok(LocalStandardBasis { ring: ring.clone(), basis: basis.iter().map(|s| s.to_poly(&ring)).collect(), lms })
}

/// Local multiplicity at the origin of a polynomial ideal.
pub fn local_multiplicity(ideal: &IdealPresentation, budget: &Budget) -> Result<super::Multiplicity> {
    let sb = standard_basis(ideal, budget)?;
    Ok(super::staircase_count(ideal.ring().len(), &sb.lms))
}
