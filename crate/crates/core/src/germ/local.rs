//! Local standard bases of ideals of leaf germs, computed in the truncated
//! algebra `Q[t1,t2]/m^(N+1)` under the local degree order.
//!
//! If no standard monomial has degree `N`, then `m^N ⊆ I + m^(N+1)` and by
//! Nakayama `m^N ⊆ I`; the staircase count is then the exact multiplicity and
//! membership modulo `I` is decided exactly at order `N`.

use std::collections::HashSet;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{sub_mul, Multiplicity, Sorted};
use crate::poly::{Monomial, MonomialOrder, Q};

use super::Jet2;

fn local_order() -> MonomialOrder {
    MonomialOrder::local()
}

fn truncate(terms: Vec<(Monomial, Q)>, n: u32) -> Sorted {
    Sorted { terms: terms.into_iter().filter(|(m, _)| m.degree() <= n).collect() }
}

fn sorted_of(j: &Jet2, n: u32) -> Sorted {
    let terms: Vec<(Monomial, Q)> = j.coeffs().iter().filter(|((a, b), _)| a + b <= n).map(|((a, b), c)| (Monomial::new(vec![*a, *b]), c.clone())).collect();
    let mut s = Sorted { terms };
    let o = local_order();
    s.terms.sort_by(|x, y| o.cmp(&y.0, &x.0));
    s
}

fn reduce_full(p: &Sorted, basis: &[Sorted], n: u32) -> Sorted {
    let o = local_order();
    let mut work = p.terms.clone();
    let mut start = 0;
    let mut rem = Vec::new();
    while start < work.len() {
        let (m, c) = &work[start];
        match basis.iter().find(|g| g.lm().divides(m)) {
            Some(g) => {
                let q = g.lm().quotient_of(m);
                let k = c / g.lc();
                work = truncate(sub_mul(&work[start..], &k, &q, &g.terms, &o), n).terms;
                start = 0;
            }
            None => {
                rem.push(work[start].clone());
                start += 1;
            }
        }
    }
    Sorted { terms: rem }
}

fn spoly(a: &Sorted, b: &Sorted, n: u32) -> Sorted {
    let o = local_order();
    let l = a.lm().lcm(b.lm());
    let ma = a.lm().quotient_of(&l);
    let mb = b.lm().quotient_of(&l);
    let ka = a.lc().recip();
    let kb = b.lc().recip();
    let left: Vec<_> = a.terms.iter().map(|(m, c)| (m.mul(&ma), c * &ka)).collect();
    truncate(sub_mul(&left, &kb, &mb, &b.terms, &o), n)
}

/// Standard basis of `<gens> + m^(N+1)` in the truncated algebra.
#[derive(Clone, Debug)]
pub struct LocalBasis {
    order: u32,
    basis: Vec<Sorted>,
    lms: Vec<(u32, u32)>,
}

impl LocalBasis {
    pub fn compute(gens: &[Jet2], n: u32) -> Result<LocalBasis> {
        if let Some(g) = gens.iter().find(|g| g.order() < n) {
            return Err(Error::Inconclusive { order: g.order(), reason: format!("generator known only to order {} < {}", g.order(), n) });
        }
        let mut basis: Vec<Sorted> = Vec::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for g in gens {
            let s = reduce_full(&sorted_of(g, n), &basis, n);
            if s.is_zero() {
                continue;
            }
            let mut s = s;
            s.make_monic();
            for i in 0..basis.len() {
                pairs.push((i, basis.len()));
            }
            basis.push(s);
        }
        while let Some((i, j)) = pairs.pop() {
            if basis[i].lm().coprime(basis[j].lm()) {
                continue;
            }
            let s = spoly(&basis[i], &basis[j], n);
            let mut h = reduce_full(&s, &basis, n);
            if h.is_zero() {
                continue;
            }
            h.make_monic();
            for k in 0..basis.len() {
                pairs.push((k, basis.len()));
            }
            basis.push(h);
        }
        let lms =
            crate::ideal::minimal_monomials(basis.iter().map(|s| s.lm().clone()).collect()).into_iter().map(|m| (m.exponents()[0], m.exponents()[1])).collect();
        Ok(LocalBasis { order: n, basis, lms })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn leading_monomials(&self) -> &[(u32, u32)] {
        &self.lms
    }

    /// Monomials of degree `<= N` outside the leading ideal.
    pub fn staircase(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for d in 0..=self.order {
            for a in 0..=d {
                let b = d - a;
                if !self.lms.iter().any(|&(x, y)| x <= a && y <= b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// True when `m^N` lies in the ideal (no standard monomial of degree N).
    pub fn is_certified(&self) -> bool {
        let n = self.order;
        (0..=n).all(|a| self.lms.iter().any(|&(x, y)| x <= a && y <= n - a))
    }

    pub fn is_unit(&self) -> bool {
        self.lms.contains(&(0, 0))
    }

    /// Normal form of `h` in the truncated algebra.
    pub fn normal_form(&self, h: &Jet2) -> Result<Jet2> {
        if h.order() < self.order {
            return Err(Error::Inconclusive { order: h.order(), reason: format!("jet known only to order {} < {}", h.order(), self.order) });
        }
        let r = reduce_full(&sorted_of(h, self.order), &self.basis, self.order);
        Ok(Jet2::from_coeffs(self.order, r.terms.into_iter().map(|(m, c)| ((m.exponents()[0], m.exponents()[1]), c))))
    }

    /// Membership of `h` in `<gens> + m^(N+1)`; exact for the germ ideal
    /// when the basis is certified.
    pub fn contains(&self, h: &Jet2) -> Result<bool> {
        Ok(self.normal_form(h)?.is_zero())
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StabilizationCertificate {
    /// The two consecutive truncation orders compared.
    pub orders: (u32, u32),
    pub staircase: Vec<(u32, u32)>,
    /// `m^N` shown to lie in the ideal at the lower order.
    pub contains_power_of_maximal_ideal: bool,
}

#[derive(Clone, Debug)]
pub struct LocalMultiplicity {
    pub value: Multiplicity,
    pub certificate: Option<StabilizationCertificate>,
    /// Reason for an infinite value.
    pub note: Option<String>,
}

/// Multiplicity of `<gens>` with stabilization certificate, trying orders
/// `start`, doubling up to `max_order`. Returns `None` when stabilization was
/// not reached, leaving the infinite/inconclusive decision to the caller.
pub fn stabilized_multiplicity(gens: &[Jet2], start: u32, max_order: u32) -> Result<Option<(LocalBasis, StabilizationCertificate)>> {
    // highest order every generator can reach
    let avail = gens.iter().map(|g| if g.can_regenerate() { u32::MAX } else { g.order() }).min().unwrap_or(u32::MAX);
    if avail == 0 {
        return Ok(None);
    }
    let max_order = max_order.min(avail - 1);
    let mut n = start.max(1).min(max_order.max(1));
    loop {
        if n + 1 > avail {
            return Ok(None);
        }
        let here: Vec<Jet2> = gens.iter().map(|g| g.regenerate(n + 1)).collect::<Result<_>>()?;
        let lb = LocalBasis::compute(&here, n)?;
        if lb.is_certified() {
            let next = LocalBasis::compute(&here, n + 1)?;
            let a: HashSet<_> = lb.staircase().into_iter().collect();
            let b: HashSet<_> = next.staircase().into_iter().collect();
            if a != b {
                return Err(Error::Certificate(format!("staircases at orders {} and {} disagree", n, n + 1)));
            }
            let cert = StabilizationCertificate { orders: (n, n + 1), staircase: lb.staircase(), contains_power_of_maximal_ideal: true };
            return Ok(Some((lb, cert)));
        }
        if n >= max_order {
            return Ok(None);
        }
        n = (2 * n).min(max_order);
    }
}

/// Outcome of a membership test. Non-membership is always exact; membership
/// is exact when the basis carries a stabilization certificate.
#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub exact: bool,
    pub order: u32,
}

/// A local ideal with its standard basis at a fixed order.
#[derive(Clone, Debug)]
pub struct LocalIdeal {
    basis: LocalBasis,
    certificate: Option<StabilizationCertificate>,
}

impl LocalIdeal {
    /// Tries to certify from `order` up to `max_order`; otherwise keeps the
    /// truncated basis at the highest order all generators reach, capped by
    /// `order`.
    pub fn new(gens: &[Jet2], order: u32, max_order: u32) -> Result<LocalIdeal> {
        if let Some((basis, cert)) = stabilized_multiplicity(gens, order, max_order)? {
            return Ok(LocalIdeal { basis, certificate: Some(cert) });
        }
        let n = gens.iter().map(|g| if g.can_regenerate() { order } else { g.order() }).min().unwrap_or(order).min(order);
        let here: Vec<Jet2> = gens.iter().map(|g| if g.order() >= n { Ok(g.clone()) } else { g.regenerate(n) }).collect::<Result<_>>()?;
        Ok(LocalIdeal { basis: LocalBasis::compute(&here, n)?, certificate: None })
    }

    pub fn order(&self) -> u32 {
        self.basis.order()
    }

    pub fn basis(&self) -> &LocalBasis {
        &self.basis
    }

    pub fn certificate(&self) -> Option<&StabilizationCertificate> {
        self.certificate.as_ref()
    }

    pub fn is_certified(&self) -> bool {
        self.certificate.is_some()
    }

    /// Exact multiplicity when certified.
    pub fn multiplicity(&self) -> Option<u64> {
        self.certificate.as_ref().map(|_| self.basis.staircase().len() as u64)
    }

    pub fn contains(&self, h: &Jet2) -> Result<Membership> {
        let n = self.order();
        let h = if h.order() >= n { h.clone() } else { h.regenerate(n)? };
        let member = self.basis.contains(&h)?;
        Ok(Membership { member, exact: self.is_certified() || !member, order: n })
    }
}

/// `true` if every jet vanishes at the origin.
pub fn all_vanish_at_origin(gens: &[Jet2]) -> bool {
    gens.iter().all(|g| g.constant_term().is_zero())
}
