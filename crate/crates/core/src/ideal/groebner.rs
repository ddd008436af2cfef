//! Buchberger's algorithm on a sorted-term representation.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring, Q};

/// Terms sorted in decreasing order.
#[derive(Clone, Debug)]
pub(crate) struct Sorted {
    pub terms: Vec<(Monomial, Q)>,
}

impl Sorted {
    pub fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Q)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Sorted { terms }
    }

    pub fn to_poly(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Q {
        &self.terms[0].1
    }

    pub fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let inv = self.terms[0].1.recip();
        if inv.is_one() {
            return;
        }
        for t in &mut self.terms {
            t.1 *= &inv;
        }
    }
}

/// `a[start..] - c * m * g`, where multiplying by `m` keeps `g` sorted.
pub(crate) fn sub_mul(a: &[(Monomial, Q)], c: &Q, m: &Monomial, g: &[(Monomial, Q)], order: &MonomialOrder) -> Vec<(Monomial, Q)> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let mut gm: Option<(Monomial, Q)> = g.first().map(|(gm, gc)| (gm.mul(m), gc * c));
    while i < a.len() || gm.is_some() {
        let take = match (&gm, a.get(i)) {
            (None, _) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some((mb, _)), Some((ma, _))) => order.cmp(ma, mb),
        };
        match take {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (mb, cb) = gm.take().unwrap();
                out.push((mb, -cb));
                j += 1;
                gm = g.get(j).map(|(x, y)| (x.mul(m), y * c));
            }
            Ordering::Equal => {
                let (mb, cb) = gm.take().unwrap();
                let v = &a[i].1 - cb;
                if !v.is_zero() {
                    out.push((mb, v));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|(x, y)| (x.mul(m), y * c));
            }
        }
    }
    out
}

/// Full reduction of `p` by `basis`; the remainder has no term divisible by a
/// leading monomial of the basis.
pub(crate) fn reduce(p: &Sorted, basis: &[Sorted], order: &MonomialOrder) -> Sorted {
    let mut work = p.terms.clone();
    let mut start = 0;
    let mut rem = Vec::new();
    while start < work.len() {
        let (m, c) = &work[start];
        match basis.iter().find(|g| g.lm().divides(m)) {
            Some(g) => {
                let q = g.lm().quotient_of(m);
                let k = c / g.lc();
                work = sub_mul(&work[start..], &k, &q, &g.terms, order);
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

fn spoly(a: &Sorted, b: &Sorted, order: &MonomialOrder) -> Sorted {
    let l = a.lm().lcm(b.lm());
    let ma = a.lm().quotient_of(&l);
    let mb = b.lm().quotient_of(&l);
    let ka = a.lc().recip();
    let kb = b.lc().recip();
    let left: Vec<(Monomial, Q)> = a.terms.iter().map(|(m, c)| (m.mul(&ma), c * &ka)).collect();
    Sorted { terms: sub_mul(&left, &kb, &mb, &b.terms, order) }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct GroebnerStats {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub max_degree: u32,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Groebner basis of the ideal generated by `gens`, elements monic and
/// sorted by increasing leading monomial. Fails once more than `max_pairs`
/// S-pairs have been reduced.
pub(crate) fn buchberger(ring: &Ring, gens: &[Polynomial], order: &MonomialOrder, max_pairs: usize) -> Result<(Vec<Polynomial>, GroebnerStats)> {
    let mut stats = GroebnerStats::default();
    let mut basis: Vec<Sorted> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    fn add(h: Sorted, basis: &mut Vec<Sorted>, pairs: &mut Vec<Pair>, pending: &mut HashSet<(usize, usize)>, stats: &mut GroebnerStats) {
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            stats.pairs_created += 1;
            if g.lm().coprime(h.lm()) {
                continue;
            }
            pairs.push(Pair { i, j, lcm: g.lm().lcm(h.lm()) });
            pending.insert((i, j));
        }
        stats.max_degree = stats.max_degree.max(h.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0));
        basis.push(h);
    }

    for g in gens {
        let mut s = Sorted::from_poly(g, order);
        if s.is_zero() {
            continue;
        }
        s.make_monic();
        if s.lm().is_one() {
            return Ok((vec![Polynomial::one(ring)], stats));
        }
        add(s, &mut basis, &mut pairs, &mut pending, &mut stats);
    }

    while !pairs.is_empty() {
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                let pa = &pairs[a];
                let pb = &pairs[b];
                pa.lcm.degree().cmp(&pb.lcm.degree()).then_with(|| order.cmp(&pa.lcm, &pb.lcm)).then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(k);
        pending.remove(&(pair.i, pair.j));

        // chain criterion
        let chain = (0..basis.len()).any(|t| {
            t != pair.i
                && t != pair.j
                && basis[t].lm().divides(&pair.lcm)
                && !pending.contains(&(pair.i.min(t), pair.i.max(t)))
                && !pending.contains(&(pair.j.min(t), pair.j.max(t)))
        });
        if chain {
            continue;
        }

        stats.pairs_reduced += 1;
        if stats.pairs_reduced > max_pairs {
            let partial = basis.iter().map(|s| s.to_poly(ring)).collect();
            return Err(Error::budget("groebner", stats.pairs_reduced - 1, partial));
        }
        let s = spoly(&basis[pair.i], &basis[pair.j], order);
        let mut h = reduce(&s, &basis, order);
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        h.make_monic();
        if h.lm().is_one() {
            return Ok((vec![Polynomial::one(ring)], stats));
        }
        add(h, &mut basis, &mut pairs, &mut pending, &mut stats);
    }

    Ok((interreduce(ring, basis, order), stats))
}

fn interreduce(ring: &Ring, basis: Vec<Sorted>, order: &MonomialOrder) -> Vec<Polynomial> {
    let mut minimal: Vec<Sorted> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| j != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || j < i));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    minimal.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let head = Sorted { terms: vec![minimal[i].terms[0].clone()] };
        let tail = Sorted { terms: minimal[i].terms[1..].to_vec() };
        let others: Vec<Sorted> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let r = reduce(&tail, &others, order);
        let mut full = head;
        full.terms.extend(r.terms);
        full.make_monic();
        out.push(full.to_poly(ring));
    }
    out
}
