//! Exact multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] lives in a [`Ring`] (an ordered list of variable names)
//! and stores only nonzero coefficients. Arithmetic never rounds.

mod gcd;
mod order;
mod parse;
pub mod univariate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use gcd::{divide_exact, gcd, gcd_all, squarefree_decomposition, squarefree_part};
pub use order::{MonomialOrder, OrderKind};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn format_q(c: &Q) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q, PolyError> {
    let s = s.trim();
    let bad = || PolyError::Parse { input: s.to_string(), position: 0, message: "not a rational literal".into() };
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(PolyError::Parse { input: s.to_string(), position: 0, message: "zero denominator".into() });
    }
    Ok(Q::new(n, d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },
    #[error("parse error in `{input}` at {position}: {message}")]
    Parse { input: String, position: usize, message: String },
    #[error("variable index {index} out of range for a ring with {size} variables")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("point has {got} coordinates, ring has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroInput,
    #[error("division is not exact")]
    InexactDivision,
}

/// Ordered list of variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Arc<[String]>,
}

impl Ring {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self { vars: names.into_iter().map(Into::into).collect::<Vec<_>>().into() }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A ring with one more variable appended. The name is made unique.
    pub fn extend(&self, name: &str) -> Ring {
        let mut fresh = name.to_string();
        while self.index_of(&fresh).is_some() {
            fresh.push('_');
        }
        Ring::new(self.vars.iter().cloned().chain(std::iter::once(fresh)))
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring[{}]", self.vars.join(","))
    }
}

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    pub fn extended(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat_n(0, extra));
        Monomial(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Sparse polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Self { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Q::one())
    }

    pub fn constant(ring: &Ring, c: Q) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.len()), c);
        }
        p
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.len(), i), Q::one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Q) -> Self {
        debug_assert_eq!(m.0.len(), ring.len());
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(ring: &Ring, terms: I) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn parse(ring: &Ring, src: &str) -> Result<Self, PolyError> {
        parse::parse(ring, src)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.ring.len()))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch { left: self.ring.names().join(","), right: other.ring.names().join(",") })
        }
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(match op {
            ArithOp::Add => self.add_impl(other, false),
            ArithOp::Sub => self.add_impl(other, true),
            ArithOp::Mul => self.mul_impl(other),
        })
    }

    fn add_impl(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, x)| (t.mul(m), x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derive(&self, var: usize) -> Result<Polynomial, PolyError> {
        if var >= self.ring.len() {
            return Err(PolyError::IndexOutOfRange { index: var, size: self.ring.len() });
        }
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut dm = m.clone();
                dm.0[var] -= 1;
                out.add_term(dm, c * Q::from_integer(BigInt::from(e)));
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Q]) -> Result<Q, PolyError> {
        if point.len() != self.ring.len() {
            return Err(PolyError::ArityMismatch { expected: self.ring.len(), got: point.len() });
        }
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute `images[i]` for variable `i`. All images share one target ring.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.ring.len() {
            return Err(PolyError::ArityMismatch { expected: self.ring.len(), got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-express in `target`, which must contain every variable of this ring
    /// that actually occurs.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial, PolyError> {
        let map: Vec<Option<usize>> = self.ring.names().iter().map(|n| target.index_of(n)).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = x,
                    None => return Err(PolyError::RingMismatch { left: self.ring.names().join(","), right: target.names().join(",") }),
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Divide by the leading coefficient under degrevlex. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading(&MonomialOrder::degrevlex()) {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Coefficients with respect to one variable: `(exponent, coefficient)` pairs,
    /// coefficients free of that variable.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut rest = m.clone();
            rest.0[var] = 0;
            out.entry(e).or_insert_with(|| Polynomial::zero(&self.ring)).add_term(rest, c.clone());
        }
        out
    }

    pub fn is_unit_at_origin(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// Clear denominators and make the integer content 1 (sign from degrevlex lead).
    pub fn primitive_integer(&self) -> Polynomial {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&lcm / c.denom());
            g = g.gcd(&n);
        }
        let mut s = Q::new(lcm, g);
        if self.leading(&MonomialOrder::degrevlex()).map(|(_, c)| c.is_negative()).unwrap_or(false) {
            s = -s;
        }
        self.scale(&s)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let order = MonomialOrder::degrevlex();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(b.0, a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let name = &self.ring.vars[i];
                        if e == 1 {
                            name.clone()
                        } else {
                            format!("{}^{}", name, e)
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{}", format_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_q(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// Operator sugar for same-ring arithmetic; mixing rings is a programming error.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Add).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Sub).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Mul).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Ring {
        Ring::new(["x", "y"])
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(&ring2(), s).unwrap()
    }

    #[test]
    fn arith_examples() {
        assert_eq!(&p("x+y") + &p("x-y"), p("2*x"));
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2-y^2"));
        assert_eq!(&p("x^2+3*y") + &Polynomial::zero(&ring2()), p("x^2+3*y"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let other = Polynomial::var(&Ring::new(["x", "z"]), 0);
        assert!(matches!(p("x").arith(&other, ArithOp::Add), Err(PolyError::RingMismatch { .. })));
    }

    #[test]
    fn derive_examples() {
        assert_eq!(p("x^2*y").derive(0).unwrap(), p("2*x*y"));
        assert_eq!(p("7").derive(0).unwrap(), p("0"));
        assert_eq!(p("x^3+x*y^2").derive(1).unwrap(), p("2*x*y"));
        assert!(p("x").derive(5).is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("x^2+y").evaluate(&[q(2), q(1)]).unwrap(), q(5));
        assert_eq!(p("0").evaluate(&[q(7), q(-3)]).unwrap(), q(0));
        assert_eq!(p("(x-y)*(x+y)").evaluate(&[q(3), q(3)]).unwrap(), q(0));
    }

    #[test]
    fn display_is_degrevlex() {
        assert_eq!(p("y^2 + x*y + x^2 - 1/2").to_string(), "x^2 + x*y + y^2 - 1/2");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn compose_substitutes() {
        let r1 = Ring::new(["t"]);
        let t = Polynomial::var(&r1, 0);
        let img = [t.clone(), &t * &t];
        assert_eq!(p("x*y - y").compose(&img).unwrap(), Polynomial::parse(&r1, "t^3 - t^2").unwrap());
    }
}
