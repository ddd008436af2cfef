//! Simple algebraic extensions `Q[a]/(m)` with `m` monic and squarefree.
//!
//! `m` is irreducible whenever it has degree at most 3 and no rational root;
//! higher-degree moduli are used as they come and a zero divisor met during
//! inversion is reported as unsupported rather than split.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::univariate::UPoly;
use crate::poly::Q;

/// An element, reduced modulo the field's modulus.
pub type Elem = UPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    modulus: UPoly,
    traces: Vec<Q>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[a]/({})", self.modulus.to_string_in("a"))
    }
}

impl NumberField {
    pub fn rational() -> Arc<NumberField> {
        Self::new(UPoly::x())
    }

    pub fn new(modulus: UPoly) -> Arc<NumberField> {
        let modulus = modulus.monic();
        let traces = power_sums(&modulus);
        Arc::new(NumberField { modulus, traces })
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn zero(&self) -> Elem {
        UPoly::zero()
    }

    pub fn one(&self) -> Elem {
        UPoly::constant(Q::one())
    }

    pub fn from_q(&self, c: Q) -> Elem {
        self.reduce(&UPoly::constant(c))
    }

    /// The class of `a`.
    pub fn generator(&self) -> Elem {
        self.reduce(&UPoly::x())
    }

    pub fn reduce(&self, a: &UPoly) -> Elem {
        a.rem(&self.modulus)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.add(b)
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.sub(b)
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.scale(&-Q::one())
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return UPoly::zero();
        }
        if a.degree() == Some(0) {
            return b.scale(&a.coeff(0));
        }
        if b.degree() == Some(0) {
            return a.scale(&b.coeff(0));
        }
        a.mul(b).rem(&self.modulus)
    }

    pub fn scale(&self, a: &Elem, c: &Q) -> Elem {
        a.scale(c)
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::Unsupported("division by zero in a number field".into()));
        }
        if a.degree() == Some(0) {
            return Ok(UPoly::constant(a.coeff(0).recip()));
        }
        let (g, s, _) = a.egcd(&self.modulus);
        if g.degree() != Some(0) {
            return Err(Error::Unsupported(format!("zero divisor {} modulo {}", a.to_string_in("a"), self.modulus.to_string_in("a"))));
        }
        Ok(s.scale(&g.coeff(0).recip()).rem(&self.modulus))
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, k: i64) -> Result<Elem> {
        let mut base = if k < 0 { self.inv(a)? } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Sum of the images under all embeddings.
    pub fn trace(&self, a: &Elem) -> Q {
        a.coeffs().iter().zip(&self.traces).map(|(c, t)| c * t).fold(Q::zero(), |x, y| x + y)
    }

    pub fn as_rational(&self, a: &Elem) -> Option<Q> {
        match a.degree() {
            None => Some(Q::zero()),
            Some(0) => Some(a.coeff(0)),
            _ => None,
        }
    }

    pub fn format(&self, a: &Elem) -> String {
        a.to_string_in("a")
    }
}

// Newton's identities: traces of a^0 .. a^(d-1).
fn power_sums(m: &UPoly) -> Vec<Q> {
    let d = m.degree().unwrap_or(0);
    // m = w^d + c_{d-1} w^{d-1} + ... ; e_k = (-1)^k c_{d-k}
    let e: Vec<Q> = (0..=d).map(|k| if k % 2 == 0 { m.coeff(d - k) } else { -m.coeff(d - k) }).collect();
    let mut p = vec![Q::from_integer(d.into())];
    for k in 1..d {
        let mut s = Q::zero();
        for i in 1..k {
            let term = &e[i] * &p[k - i];
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        let last = &e[k] * Q::from_integer(k.into());
        if k % 2 == 1 {
            s += last;
        } else {
            s -= last;
        }
        p.push(s);
    }
    p
}

/// Dense polynomials over a number field, lowest degree first, trimmed.
pub mod kpoly {
    use super::*;

    pub type KPoly = Vec<Elem>;

    pub fn trim(mut p: KPoly) -> KPoly {
        while p.last().map(|c| c.is_zero()).unwrap_or(false) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &KPoly) -> Option<usize> {
        p.len().checked_sub(1)
    }

    pub fn sub(k: &NumberField, a: &KPoly, b: &KPoly) -> KPoly {
        let n = a.len().max(b.len());
        let z = k.zero();
        trim((0..n).map(|i| k.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
    }

    pub fn derivative(k: &NumberField, a: &KPoly) -> KPoly {
        trim(a.iter().enumerate().skip(1).map(|(i, c)| k.scale(c, &Q::from_integer(i.into()))).collect())
    }

    pub fn monic(k: &NumberField, a: &KPoly) -> Result<KPoly> {
        match a.last() {
            None => Ok(Vec::new()),
            Some(l) => {
                let li = k.inv(l)?;
                Ok(a.iter().map(|c| k.mul(c, &li)).collect())
            }
        }
    }

    pub fn divrem(k: &NumberField, a: &KPoly, b: &KPoly) -> Result<(KPoly, KPoly)> {
        let db = degree(b).ok_or_else(|| Error::Unsupported("polynomial division by zero".into()))?;
        let li = k.inv(&b[db])?;
        let mut r = trim(a.clone());
        if r.len() <= db {
            return Ok((Vec::new(), r));
        }
        let mut q = vec![k.zero(); r.len() - db];
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let c = k.mul(&r[dr], &li);
            for (i, bc) in b.iter().enumerate() {
                r[dr - db + i] = k.sub(&r[dr - db + i], &k.mul(&c, bc));
            }
            q[dr - db] = c;
            r = trim(r);
        }
        Ok((trim(q), r))
    }

    pub fn gcd(k: &NumberField, a: &KPoly, b: &KPoly) -> Result<KPoly> {
        let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
        while !b.is_empty() {
            let r = divrem(k, &a, &b)?.1;
            a = b;
            b = r;
        }
        monic(k, &a)
    }

    /// `(f_i, i)` with `a = c * prod f_i^i`, each `f_i` monic and squarefree.
    pub fn squarefree_decomposition(k: &NumberField, a: &KPoly) -> Result<Vec<(KPoly, u32)>> {
        let mut out = Vec::new();
        if degree(a).unwrap_or(0) == 0 {
            return Ok(out);
        }
        let f = monic(k, a)?;
        let fp = derivative(k, &f);
        let g = gcd(k, &f, &fp)?;
        let mut b = divrem(k, &f, &g)?.0;
        let mut d = sub(k, &divrem(k, &fp, &g)?.0, &derivative(k, &b));
        let mut i = 1;
        loop {
            let a = gcd(k, &b, &d)?;
            if degree(&a).unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = divrem(k, &b, &a)?.0;
            if degree(&b).unwrap_or(0) == 0 {
                break;
            }
            let c = divrem(k, &d, &a)?.0;
            d = sub(k, &c, &derivative(k, &b));
            i += 1;
        }
        Ok(out)
    }
}
