//! Truncated power series in the two leaf coordinates `t1`, `t2`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{divide_exact, Monomial, Polynomial, Ring, Q};

pub type Producer = Arc<dyn Fn(u32) -> Result<Jet2> + Send + Sync>;

/// How a jet can be re-emitted at a higher order.
#[derive(Clone)]
pub enum JetSource {
    /// The germ is this polynomial in `t1, t2`; every order is available.
    Polynomial(Arc<Polynomial>),
    /// Regeneration by recomputation.
    Lazy(Producer),
}

/// Coefficients of `t1^a t2^b` for `a + b <= order`; zero coefficients are
/// never stored.
#[derive(Clone)]
pub struct Jet2 {
    order: u32,
    coeffs: BTreeMap<(u32, u32), Q>,
    source: Option<JetSource>,
}

pub fn leaf_ring() -> &'static Ring {
    static RING: OnceLock<Ring> = OnceLock::new();
    RING.get_or_init(|| Ring::new(["t1", "t2"]))
}

impl PartialEq for Jet2 {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.coeffs == other.coeffs
    }
}

impl Eq for Jet2 {}

impl Jet2 {
    pub fn from_coeffs(order: u32, coeffs: impl IntoIterator<Item = ((u32, u32), Q)>) -> Self {
        let mut map = BTreeMap::new();
        for ((a, b), c) in coeffs {
            if a + b <= order && !c.is_zero() {
                *map.entry((a, b)).or_insert_with(Q::zero) += c;
            }
        }
        map.retain(|_, c: &mut Q| !c.is_zero());
        Jet2 { order, coeffs: map, source: None }
    }

    pub fn zero(order: u32) -> Self {
        Self::from_polynomial(&Polynomial::zero(leaf_ring()), order)
    }

    pub fn constant(c: Q, order: u32) -> Self {
        Self::from_polynomial(&Polynomial::constant(leaf_ring(), c), order)
    }

    pub fn one(order: u32) -> Self {
        Self::constant(Q::one(), order)
    }

    pub fn t1(order: u32) -> Self {
        Self::from_polynomial(&Polynomial::var(leaf_ring(), 0), order)
    }

    pub fn t2(order: u32) -> Self {
        Self::from_polynomial(&Polynomial::var(leaf_ring(), 1), order)
    }

    /// Jet of an exact polynomial germ in `(t1, t2)`; carries the polynomial
    /// as its source.
    pub fn from_polynomial(p: &Polynomial, order: u32) -> Self {
        assert_eq!(p.ring().len(), 2, "leaf polynomials have two variables");
        let coeffs = p.terms().map(|(m, c)| ((m.exponents()[0], m.exponents()[1]), c.clone()));
        let mut j = Self::from_coeffs(order, coeffs);
        let p = if p.ring() == leaf_ring() { p.clone() } else { Polynomial::from_terms(leaf_ring(), p.terms().map(|(m, c)| (m.clone(), c.clone()))) };
        j.source = Some(JetSource::Polynomial(Arc::new(p)));
        j
    }

    pub fn parse(src: &str, order: u32) -> Result<Self> {
        Ok(Self::from_polynomial(&Polynomial::parse(leaf_ring(), src)?, order))
    }

    pub fn with_producer(mut self, producer: Producer) -> Self {
        self.source = Some(JetSource::Lazy(producer));
        self
    }

    pub fn without_source(mut self) -> Self {
        self.source = None;
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, a: u32, b: u32) -> Q {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), Q> {
        &self.coeffs
    }

    pub fn source(&self) -> Option<&JetSource> {
        self.source.as_ref()
    }

    /// The exact polynomial germ, when known.
    pub fn exact_polynomial(&self) -> Option<&Polynomial> {
        match &self.source {
            Some(JetSource::Polynomial(p)) => Some(p),
            _ => None,
        }
    }

    pub fn can_regenerate(&self) -> bool {
        self.source.is_some()
    }

    /// Zero up to the stored order.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(0, 0)
    }

    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// Lowest total degree of a nonzero coefficient, if any is visible.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().map(|(a, b)| a + b).min()
    }

    /// Homogeneous part of degree `d` as a polynomial in `(t1, t2)`.
    pub fn homogeneous(&self, d: u32) -> Polynomial {
        Polynomial::from_terms(leaf_ring(), self.coeffs.iter().filter(|((a, b), _)| a + b == d).map(|((a, b), c)| (Monomial::new(vec![*a, *b]), c.clone())))
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(leaf_ring(), self.coeffs.iter().map(|((a, b), c)| (Monomial::new(vec![*a, *b]), c.clone())))
    }

    pub fn truncate(&self, n: u32) -> Jet2 {
        let n = n.min(self.order);
        Jet2 { order: n, coeffs: self.coeffs.iter().filter(|((a, b), _)| a + b <= n).map(|(k, c)| (*k, c.clone())).collect(), source: self.source.clone() }
    }

    /// The same germ at order `n`. Lower orders truncate; higher orders need
    /// a source.
    pub fn regenerate(&self, n: u32) -> Result<Jet2> {
        if n <= self.order {
            return Ok(self.truncate(n));
        }
        match &self.source {
            Some(JetSource::Polynomial(p)) => Ok(Jet2::from_polynomial(p, n)),
            Some(JetSource::Lazy(f)) => {
                let mut j = f(n)?;
                if j.order < n {
                    return Err(Error::Inconclusive { order: j.order, reason: format!("producer returned order {} < {}", j.order, n) });
                }
                j = j.truncate(n);
                j.source = self.source.clone();
                Ok(j)
            }
            None => Err(Error::Inconclusive { order: self.order, reason: format!("jet has no producer to reach order {}", n) }),
        }
    }

    fn combine_source(a: &Jet2, b: &Jet2, exact: impl Fn(&Polynomial, &Polynomial) -> Polynomial, lazy: fn(&Jet2, &Jet2) -> Jet2) -> Option<JetSource> {
        match (&a.source, &b.source) {
            (Some(JetSource::Polynomial(p)), Some(JetSource::Polynomial(q))) => Some(JetSource::Polynomial(Arc::new(exact(p, q)))),
            (Some(_), Some(_)) => {
                let (a, b) = (a.clone(), b.clone());
                let f: Producer = Arc::new(move |n| Ok(lazy(&a.regenerate(n)?, &b.regenerate(n)?)));
                Some(JetSource::Lazy(f))
            }
            _ => None,
        }
    }

    fn add_raw(a: &Jet2, b: &Jet2) -> Jet2 {
        let order = a.order.min(b.order);
        let mut coeffs = a.truncate(order).coeffs;
        for (k, c) in b.coeffs.iter().filter(|((x, y), _)| x + y <= order) {
            *coeffs.entry(*k).or_insert_with(Q::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Jet2 { order, coeffs, source: None }
    }

    fn mul_raw(a: &Jet2, b: &Jet2) -> Jet2 {
        let order = a.order.min(b.order);
        let mut coeffs: BTreeMap<(u32, u32), Q> = BTreeMap::new();
        for ((a1, b1), c1) in &a.coeffs {
            for ((a2, b2), c2) in &b.coeffs {
                if a1 + b1 + a2 + b2 <= order {
                    *coeffs.entry((a1 + a2, b1 + b2)).or_insert_with(Q::zero) += c1 * c2;
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Jet2 { order, coeffs, source: None }
    }

    fn neg_raw(a: &Jet2) -> Jet2 {
        Jet2 { order: a.order, coeffs: a.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect(), source: None }
    }

    pub fn add(&self, other: &Jet2) -> Jet2 {
        let mut out = Self::add_raw(self, other);
        out.source = Self::combine_source(self, other, |p, q| p + q, Self::add_raw);
        out
    }

    pub fn sub(&self, other: &Jet2) -> Jet2 {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Jet2 {
        let mut out = Self::neg_raw(self);
        out.source = match &self.source {
            Some(JetSource::Polynomial(p)) => Some(JetSource::Polynomial(Arc::new(-p.as_ref()))),
            Some(JetSource::Lazy(_)) => {
                let a = self.clone();
                Some(JetSource::Lazy(Arc::new(move |n| Ok(Self::neg_raw(&a.regenerate(n)?)))))
            }
            None => None,
        };
        out
    }

    pub fn mul(&self, other: &Jet2) -> Jet2 {
        let mut out = Self::mul_raw(self, other);
        out.source = Self::combine_source(self, other, |p, q| p * q, Self::mul_raw);
        out
    }

    pub fn scale(&self, c: &Q) -> Jet2 {
        self.mul(&Jet2::constant(c.clone(), self.order))
    }

    pub fn pow(&self, k: u32) -> Jet2 {
        let mut out = Jet2::one(self.order);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    fn derive_raw(a: &Jet2, var: usize) -> Jet2 {
        let order = a.order.saturating_sub(1);
        let coeffs = a.coeffs.iter().filter_map(|((x, y), c)| {
            let (e, k) = if var == 0 { (*x, (x.wrapping_sub(1), *y)) } else { (*y, (*x, y.wrapping_sub(1))) };
            if e == 0 {
                None
            } else {
                Some((k, c * Q::from_integer(e.into())))
            }
        });
        Jet2::from_coeffs(order, coeffs)
    }

    /// `∂/∂t1` (`var = 0`) or `∂/∂t2` (`var = 1`); the order drops by one.
    pub fn derive(&self, var: usize) -> Jet2 {
        let mut out = Self::derive_raw(self, var);
        out.source = match &self.source {
            Some(JetSource::Polynomial(p)) => Some(JetSource::Polynomial(Arc::new(p.derive(var).expect("two variables")))),
            Some(JetSource::Lazy(_)) => {
                let a = self.clone();
                Some(JetSource::Lazy(Arc::new(move |n| Ok(Self::derive_raw(&a.regenerate(n + 1)?, var)))))
            }
            None => None,
        };
        out
    }

    /// Jacobian determinant `a_t1 b_t2 - a_t2 b_t1`.
    pub fn jacobian(a: &Jet2, b: &Jet2) -> Jet2 {
        a.derive(0).mul(&b.derive(1)).sub(&a.derive(1).mul(&b.derive(0)))
    }

    /// Exact quotient `self / h`, valid to order `self.order - ord(h)`.
    /// Fails if `h` is zero at the stored order or does not divide.
    pub fn divide(&self, h: &Jet2) -> Result<Jet2> {
        if let (Some(p), Some(q)) = (self.exact_polynomial(), h.exact_polynomial()) {
            if let Ok(quot) = divide_exact(p, q) {
                let v = h.valuation().unwrap_or(0);
                return Ok(Jet2::from_polynomial(&quot, self.order.min(h.order).saturating_sub(v)));
            }
        }
        let q = Self::divide_raw(self, h)?;
        let source = match (&self.source, &h.source) {
            (Some(_), Some(_)) => {
                let (a, b) = (self.clone(), h.clone());
                let v = h.valuation().unwrap();
                let f: Producer = Arc::new(move |n| Self::divide_raw(&a.regenerate(n + v)?, &b.regenerate(n + v)?));
                Some(JetSource::Lazy(f))
            }
            _ => None,
        };
        Ok(Jet2 { source, ..q })
    }

    fn divide_raw(f: &Jet2, h: &Jet2) -> Result<Jet2> {
        let v = h.valuation().ok_or_else(|| Error::Inconclusive { order: h.order, reason: "divisor vanishes to its stored order".into() })?;
        let order = f.order.min(h.order);
        if let Some(fv) = f.valuation() {
            if fv < v && fv <= order {
                return Err(Error::Hypothesis("jet division: divisor has higher order than dividend".into()));
            }
        }
        let out_order = order - v.min(order);
        let hv = h.homogeneous(v);
        let mut quotient: Vec<Polynomial> = Vec::new();
        for k in 0..=out_order {
            let mut rhs = f.homogeneous(v + k);
            for (i, qi) in quotient.iter().enumerate() {
                let hk = h.homogeneous(v + k - i as u32);
                if !hk.is_zero() && !qi.is_zero() {
                    rhs = &rhs - &(qi * &hk);
                }
            }
            let qk = divide_exact(&rhs, &hv).map_err(|_| Error::Hypothesis(format!("jet division is not exact in degree {}", v + k)))?;
            quotient.push(qk);
        }
        // remaining degrees up to `order` must also match
        let mut coeffs = BTreeMap::new();
        for qk in &quotient {
            for (m, c) in qk.terms() {
                coeffs.insert((m.exponents()[0], m.exponents()[1]), c.clone());
            }
        }
        let q = Jet2 { order: out_order, coeffs, source: None };
        let check = q.mul_raw_order(h, order);
        if check != f.truncate(order).without_source() {
            return Err(Error::Hypothesis("jet division leaves a remainder".into()));
        }
        Ok(q)
    }

    // product keeping the larger target order (valid since q is exact up to
    // out_order and h has valuation v)
    fn mul_raw_order(&self, h: &Jet2, order: u32) -> Jet2 {
        let mut coeffs: BTreeMap<(u32, u32), Q> = BTreeMap::new();
        for ((a1, b1), c1) in &self.coeffs {
            for ((a2, b2), c2) in &h.coeffs {
                if a1 + b1 + a2 + b2 <= order {
                    *coeffs.entry((a1 + a2, b1 + b2)).or_insert_with(Q::zero) += c1 * c2;
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Jet2 { order, coeffs, source: None }
    }

    /// Does `h` divide `self` up to the stored orders?
    pub fn divisible_by(&self, h: &Jet2) -> bool {
        Self::divide_raw(self, h).is_ok()
    }

    /// Substitute `t1 = a(s), t2 = b(s)` with `a, b` univariate series in `s`
    /// given as coefficient vectors; result truncated to `len` coefficients.
    pub fn substitute_curve(&self, a: &[Q], b: &[Q], len: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); len];
        let pa = powers(a, len, self.coeffs.keys().map(|k| k.0).max().unwrap_or(0));
        let pb = powers(b, len, self.coeffs.keys().map(|k| k.1).max().unwrap_or(0));
        for ((i, j), c) in &self.coeffs {
            let prod = series_mul(&pa[*i as usize], &pb[*j as usize], len);
            for (k, v) in prod.iter().enumerate() {
                out[k] += c * v;
            }
        }
        out
    }
}

pub(crate) fn series_mul(a: &[Q], b: &[Q], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn powers(a: &[Q], len: usize, max: u32) -> Vec<Vec<Q>> {
    let mut one = vec![Q::zero(); len];
    if len > 0 {
        one[0] = Q::one();
    }
    let mut out = vec![one];
    for k in 1..=max as usize {
        let next = series_mul(&out[k - 1], a, len);
        out.push(next);
    }
    out
}

impl fmt::Display for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self.to_polynomial(), self.order + 1)
    }
}

impl fmt::Debug for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet2[{}; {}]", self.order, self.to_polynomial())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn j(s: &str, n: u32) -> Jet2 {
        Jet2::parse(s, n).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(j("t1", 5).mul(&j("t2", 5)), j("t1*t2", 5));
        assert_eq!(j("1+t1", 2).mul(&j("1-t1", 2)), j("1-t1^2", 2));
        assert_eq!(j("t1^3+t2", 4).add(&Jet2::zero(4)), j("t1^3+t2", 4));
        assert_eq!(j("t1+t2", 5).mul(&j("t1", 3)).order(), 3);
    }

    #[test]
    fn polynomial_source_regenerates() {
        let a = j("1+t1", 2).mul(&j("1+t2^5", 2));
        let up = a.regenerate(6).unwrap();
        assert_eq!(up, j("1+t1+t2^5+t1*t2^5", 6));
        assert_eq!(up.truncate(2), a);
    }

    #[test]
    fn lazy_source_regenerates() {
        // exp(t1) via a producer
        let exp = |n: u32| -> Result<Jet2> {
            let mut c = Q::one();
            let mut coeffs = Vec::new();
            for a in 0..=n {
                coeffs.push(((a, 0), c.clone()));
                c /= Q::from_integer((a + 1).into());
            }
            Ok(Jet2::from_coeffs(n, coeffs))
        };
        let e = exp(3).unwrap().with_producer(Arc::new(exp));
        let sq = e.mul(&e);
        let up = sq.regenerate(5).unwrap();
        // exp(2 t1): 2^5/5! = 4/15
        assert_eq!(up.coeff(5, 0), crate::poly::q_frac(4, 15));
        assert_eq!(up.truncate(3), sq);
        assert!(Jet2::from_coeffs(3, vec![]).regenerate(4).is_err());
    }

    #[test]
    fn division_and_jacobian() {
        let f = j("t1^2*(t1-t2^2)", 8).without_source();
        let h = j("t1", 8);
        let quot = f.divide(&h).unwrap();
        assert_eq!(quot, j("t1^2-t1*t2^2", 7).without_source());
        assert!(j("t1+t2^3", 6).without_source().divide(&j("t1^2", 6)).is_err());
        let u = j("1+t1", 6).without_source();
        let inv = j("1", 6).without_source().divide(&u).unwrap();
        assert_eq!(inv.coeff(6, 0), q(1));
        assert_eq!(Jet2::jacobian(&j("t1", 4), &j("t2", 4)), j("1", 3));
        assert_eq!(Jet2::jacobian(&j("t1^2", 4), &j("t2^2", 4)), j("4*t1*t2", 3));
    }

    #[test]
    fn curve_substitution() {
        // t2^2 - t1^3 at (s^2, s^3) vanishes
        let f = j("t2^2-t1^3", 6);
        let a = vec![q(0), q(0), q(1)];
        let b = vec![q(0), q(0), q(0), q(1)];
        assert!(f.substitute_curve(&a, &b, 12).iter().all(Zero::is_zero));
    }
}
