//! Dense univariate polynomials over the rationals, used for edge polynomials
//! of Newton polygons and for arithmetic in `Q[w]/(m)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Q;

/// Coefficients from degree 0 upward; never has a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The variable `w`.
    pub fn x() -> Self {
        Self(vec![Q::zero(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.0.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &Q) -> UPoly {
        UPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> UPoly {
        let mut out = UPoly::constant(Q::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.0.len() - 1;
        let lc = d.lead();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn egcd(&self, o: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::constant(Q::one()), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::constant(Q::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer(BigInt::from(i))).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Yun's algorithm: `(f_i, i)` with `self = c * prod f_i^i`, `f_i` monic squarefree.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.divrem(&a0).0;
        let mut c = fp.divrem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.divrem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.divrem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Rational roots (each once), via the rational root theorem on the
    /// integer-cleared polynomial. Returns `None` when the candidate set would
    /// need factoring integers that are too large.
    pub fn rational_roots(&self) -> Option<Vec<Q>> {
        let mut roots = Vec::new();
        let mut p = self.clone();
        if p.is_zero() {
            return Some(roots);
        }
        if p.coeff(0).is_zero() {
            roots.push(Q::zero());
            let k = p.0.iter().position(|c| !c.is_zero()).unwrap();
            p = UPoly::new(p.0[k..].to_vec());
        }
        if p.degree().unwrap_or(0) == 0 {
            return Some(roots);
        }
        let ints = integer_coeffs(&p);
        let a0 = ints[0].abs();
        let an = ints[ints.len() - 1].abs();
        let num_div = divisors(&a0)?;
        let den_div = divisors(&an)?;
        let mut cands: Vec<Q> = Vec::new();
        for n in &num_div {
            for d in &den_div {
                let c = Q::new(n.clone(), d.clone());
                cands.push(c.clone());
                cands.push(-c);
            }
        }
        cands.sort();
        cands.dedup();
        for c in cands {
            if p.eval(&c).is_zero() {
                roots.push(c);
            }
        }
        roots.sort();
        Some(roots)
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Q) -> u32 {
        let lin = UPoly::new(vec![-r.clone(), Q::one()]);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, rem) = p.divrem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = super::format_q(c);
            parts.push(match i {
                0 => cs,
                1 => format!("{}*{}", cs, var),
                _ => format!("{}*{}^{}", cs, var, i),
            });
        }
        parts.join(" + ")
    }
}

fn integer_coeffs(p: &UPoly) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in &p.0 {
        l = l.lcm(c.denom());
    }
    p.0.iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{q, q_frac};

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn egcd_identity() {
        let a = up(&[-1, 0, 1]);
        let b = up(&[-1, 1]);
        let (g, s, t) = a.egcd(&b);
        assert_eq!(g, b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn yun_decomposition() {
        // (w-1)^2 (w+2)^3 w
        let p = up(&[-1, 1]).pow(2).mul(&up(&[2, 1]).pow(3)).mul(&up(&[0, 1]));
        let d = p.squarefree_decomposition();
        assert_eq!(d, vec![(up(&[0, 1]), 1), (up(&[-1, 1]), 2), (up(&[2, 1]), 3)]);
    }

    #[test]
    fn rational_roots_found() {
        // (2w - 3)(w + 1)(w^2 - 2)
        let p = up(&[-3, 2]).mul(&up(&[1, 1])).mul(&up(&[-2, 0, 1]));
        assert_eq!(p.rational_roots().unwrap(), vec![q(-1), q_frac(3, 2)]);
        assert_eq!(up(&[0, 0, 1]).rational_roots().unwrap(), vec![q(0)]);
        assert_eq!(up(&[-1, 1]).pow(3).root_multiplicity(&q(1)), 3);
    }
}
