//! Multivariate gcd by content/primitive-part recursion on the highest
//! occurring variable, with a primitive pseudo-remainder sequence.

use num_traits::One;

use super::{Monomial, PolyError, Polynomial, Q};

/// Exact division `a / b`; fails unless `b` divides `a`.
pub fn divide_exact(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, PolyError> {
    if b.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let (quot, rem) = divide_lex(a, b);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(PolyError::InexactDivision)
    }
}

// Division with remainder under lex (the term map's native order).
fn divide_lex(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial) {
    let ring = a.ring().clone();
    let (lb_m, lb_c) = b.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero divisor");
    let mut p = a.clone();
    let mut quot = Polynomial::zero(&ring);
    let mut rem = Polynomial::zero(&ring);
    while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        if lb_m.divides(&m) {
            let t = lb_m.quotient_of(&m);
            let k = &c / &lb_c;
            p = &p - &b.mul_monomial(&t, &k);
            quot.add_term(t, k);
        } else {
            p.terms.remove(&m);
            rem.add_term(m, c);
        }
    }
    (quot, rem)
}

fn highest_var(a: &Polynomial, b: &Polynomial) -> Option<usize> {
    (0..a.ring().len()).rev().find(|&v| a.uses_var(v) || b.uses_var(v))
}

fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let coeffs = p.coefficients_in(var);
    let mut g = Polynomial::zero(p.ring());
    for c in coeffs.values() {
        g = gcd(&g, c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn lead_in(p: &Polynomial, var: usize) -> (u32, Polynomial) {
    let mut coeffs = p.coefficients_in(var);
    coeffs.pop_last().expect("nonzero polynomial")
}

fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let (db, lb) = lead_in(b, var);
    let n = a.ring().len();
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lr) = lead_in(&r, var);
        if dr < db {
            break;
        }
        let mut shift = Monomial::one(n);
        shift.0[var] = dr - db;
        let lhs = &lb * &r;
        let rhs = &(&lr * b).mul_monomial(&shift, &Q::one());
        r = (&lhs - rhs).monic();
    }
    r
}

/// Greatest common divisor, normalized to leading coefficient 1 under
/// degrevlex. `gcd(a, 0)` is the normalized `a`; `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert!(a.ring() == b.ring(), "gcd across rings");
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let var = match highest_var(a, b) {
        Some(v) => v,
        None => return Polynomial::one(a.ring()),
    };
    if !a.uses_var(var) {
        return gcd(a, &content_in(b, var));
    }
    if !b.uses_var(var) {
        return gcd(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let c = gcd(&ca, &cb);
    let mut x = divide_exact(a, &ca).expect("content divides");
    let mut y = divide_exact(b, &cb).expect("content divides");
    if x.degree_in(var) < y.degree_in(var) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = pseudo_remainder(&x, &y, var);
        x = y;
        if r.is_zero() {
            y = r;
        } else if !r.uses_var(var) {
            x = Polynomial::one(a.ring());
            y = Polynomial::zero(a.ring());
        } else {
            let cr = content_in(&r, var);
            y = divide_exact(&r, &cr).expect("content divides");
        }
    }
    let cx = content_in(&x, var);
    let prim = divide_exact(&x, &cx).expect("content divides");
    (&c * &prim).monic()
}

pub fn gcd_all<'a, I: IntoIterator<Item = &'a Polynomial>>(ring: &super::Ring, ps: I) -> Polynomial {
    let mut g = Polynomial::zero(ring);
    for p in ps {
        g = gcd(&g, p);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn gcd_with_partials(p: &Polynomial) -> Polynomial {
    let mut g = p.clone();
    for v in 0..p.ring().len() {
        if g.is_constant() {
            break;
        }
        let d = p.derive(v).expect("index in range");
        if !d.is_zero() {
            g = gcd(&g, &d);
        }
    }
    g.monic()
}

/// Product of the distinct irreducible factors of `p`, each once:
/// `p / gcd(p, all partial derivatives)`, normalized.
pub fn squarefree_part(p: &Polynomial) -> Result<Polynomial, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    if p.is_constant() {
        return Ok(Polynomial::one(p.ring()));
    }
    let g = gcd_with_partials(p);
    Ok(divide_exact(p, &g)?.monic())
}

/// `p = c * prod f_i^i` with each `f_i` squarefree and pairwise coprime.
/// Returns the non-constant `(f_i, i)` in increasing `i`.
pub fn squarefree_decomposition(p: &Polynomial) -> Result<Vec<(Polynomial, u32)>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let mut out = Vec::new();
    let mut a = p.monic();
    let mut sqf_a = squarefree_part(&a)?;
    let mut i = 1;
    while !a.is_constant() {
        let next = gcd_with_partials(&a);
        let sqf_next = squarefree_part(&next)?;
        let f = divide_exact(&sqf_a, &sqf_next)?.monic();
        if !f.is_constant() {
            out.push((f, i));
        }
        a = next;
        sqf_a = sqf_next;
        i += 1;
    }
    Ok(out)
}
