//! Commuting polynomial vector fields, the leafwise Poisson bracket, and
//! Lie-series expansion of polynomials along the leaf through a point.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::germ::{leaf_ring, Jet2, Producer};
use crate::poly::{factorial, format_q, Monomial, PolyError, Polynomial, Ring, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    ring: Ring,
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(ring: &Ring, components: Vec<Polynomial>) -> Result<Self> {
        if components.len() != ring.len() {
            return Err(PolyError::ArityMismatch { expected: ring.len(), got: components.len() }.into());
        }
        for c in &components {
            if c.ring() != ring {
                return Err(PolyError::RingMismatch { left: ring.names().join(","), right: c.ring().names().join(",") }.into());
            }
        }
        Ok(VectorField { ring: ring.clone(), components })
    }

    pub fn parse(ring: &Ring, components: &[&str]) -> Result<Self> {
        let cs = components.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, cs)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn at(&self, point: &[Q]) -> Result<Vec<Q>> {
        self.components.iter().map(|c| c.evaluate(point).map_err(Error::from)).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.components.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0)
    }
}

/// `Σ V_i ∂F/∂x_i`.
pub fn lie_derivative(v: &VectorField, f: &Polynomial) -> Result<Polynomial> {
    if f.ring() != &v.ring {
        return Err(PolyError::RingMismatch { left: v.ring.names().join(","), right: f.ring().names().join(",") }.into());
    }
    let mut out = Polynomial::zero(&v.ring);
    for (i, c) in v.components.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = f.derive(i)?;
        if !d.is_zero() {
            out = &out + &(c * &d);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommuteCheck {
    pub commute: bool,
    /// First nonzero component of `[V1, V2]`, with its index.
    pub witness: Option<(usize, Polynomial)>,
}

pub fn check_commute(v1: &VectorField, v2: &VectorField) -> Result<CommuteCheck> {
    for i in 0..v1.ring.len() {
        let b = &lie_derivative(v1, &v2.components[i])? - &lie_derivative(v2, &v1.components[i])?;
        if !b.is_zero() {
            return Ok(CommuteCheck { commute: false, witness: Some((i, b)) });
        }
    }
    Ok(CommuteCheck { commute: true, witness: None })
}

// Row k holds V1^a V2^(k-a) F for a = 0..=k.
type Triangle = Vec<Vec<Polynomial>>;

/// Two commuting vector fields and a nonsingular base point.
pub struct FoliationContext {
    v1: VectorField,
    v2: VectorField,
    point: Vec<Q>,
    memo: RwLock<HashMap<Polynomial, Arc<Triangle>>>,
}

impl std::fmt::Debug for FoliationContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FoliationContext").field("v1", &self.v1).field("v2", &self.v2).field("point", &self.point).finish()
    }
}

impl FoliationContext {
    /// Validates commutation and linear independence of `V1(p)`, `V2(p)`.
    pub fn new(v1: VectorField, v2: VectorField, point: Vec<Q>) -> Result<Arc<Self>> {
        if v1.ring != v2.ring {
            return Err(PolyError::RingMismatch { left: v1.ring.names().join(","), right: v2.ring.names().join(",") }.into());
        }
        if point.len() != v1.ring.len() {
            return Err(PolyError::ArityMismatch { expected: v1.ring.len(), got: point.len() }.into());
        }
        let c = check_commute(&v1, &v2)?;
        if let Some((i, w)) = c.witness {
            return Err(Error::Hypothesis(format!("vector fields do not commute: component {} of [V1,V2] is {}", v1.ring.names()[i], w)));
        }
        if !independent_at(&v1, &v2, &point)? {
            let show = |v: Vec<Q>| v.iter().map(format_q).collect::<Vec<_>>().join(", ");
            return Err(Error::Hypothesis(format!(
                "point is singular for the foliation: V1(p) = ({}), V2(p) = ({})",
                show(v1.at(&point)?),
                show(v2.at(&point)?)
            )));
        }
        Ok(Arc::new(FoliationContext { v1, v2, point, memo: RwLock::new(HashMap::new()) }))
    }

    pub fn ring(&self) -> &Ring {
        &self.v1.ring
    }

    pub fn v1(&self) -> &VectorField {
        &self.v1
    }

    pub fn v2(&self) -> &VectorField {
        &self.v2
    }

    pub fn point(&self) -> &[Q] {
        &self.point
    }

    /// `V1(F) V2(G) - V2(F) V1(G)`.
    pub fn poisson(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        let a = &lie_derivative(&self.v1, f)? * &lie_derivative(&self.v2, g)?;
        let b = &lie_derivative(&self.v2, f)? * &lie_derivative(&self.v1, g)?;
        Ok(&a - &b)
    }

    fn triangle(&self, f: &Polynomial, n: u32) -> Result<Arc<Triangle>> {
        if let Some(t) = self.memo.read().expect("memo lock").get(f) {
            if t.len() > n as usize {
                return Ok(t.clone());
            }
        }
        let mut rows: Triangle = match self.memo.read().expect("memo lock").get(f) {
            Some(t) => t.as_ref().clone(),
            None => vec![vec![f.clone()]],
        };
        while rows.len() <= n as usize {
            let prev = rows.last().unwrap();
            let k = rows.len();
            let mut row = Vec::with_capacity(k + 1);
            row.push(lie_derivative(&self.v2, &prev[0])?);
            for a in 1..=k {
                row.push(lie_derivative(&self.v1, &prev[a - 1])?);
            }
            rows.push(row);
        }
        let rows = Arc::new(rows);
        let mut memo = self.memo.write().expect("memo lock");
        let keep = match memo.get(f) {
            Some(t) if t.len() >= rows.len() => t.clone(),
            _ => {
                memo.insert(f.clone(), rows.clone());
                rows
            }
        };
        Ok(keep)
    }

    /// `V1^a V2^b F`, memoized.
    pub fn derivative(&self, f: &Polynomial, a: u32, b: u32) -> Result<Polynomial> {
        Ok(self.triangle(f, a + b)?[(a + b) as usize][a as usize].clone())
    }

    fn jet_coeffs(&self, f: &Polynomial, n: u32) -> Result<Vec<((u32, u32), Q)>> {
        let t = self.triangle(f, n)?;
        let mut out = Vec::new();
        for (k, row) in t.iter().enumerate().take(n as usize + 1) {
            for (a, d) in row.iter().enumerate() {
                let v = d.evaluate(&self.point)?;
                if v.is_zero() {
                    continue;
                }
                let a = a as u32;
                let b = k as u32 - a;
                let denom = Q::from_integer(factorial(a) * factorial(b));
                out.push(((a, b), v / denom));
            }
        }
        Ok(out)
    }

    /// Smallest `k ≤ cap` such that every derivative of total order `k`
    /// vanishes identically; the leaf restriction is then a polynomial of
    /// degree `< k` in the leaf coordinates.
    pub fn polynomial_degree_bound(&self, f: &Polynomial, cap: u32) -> Result<Option<u32>> {
        let t = self.triangle(f, cap)?;
        Ok(t.iter().position(|row| row.iter().all(Polynomial::is_zero)).map(|k| k as u32))
    }

    /// Lie-series jet of `F` on the leaf at `p`: the coefficient of
    /// `t1^a t2^b` is `(V1^a V2^b F)(p) / (a! b!)`. When the restriction is a
    /// polynomial in the leaf coordinates, the jet carries it exactly;
    /// otherwise it carries a producer for higher orders.
    pub fn leaf_jet(self: &Arc<Self>, f: &Polynomial, n: u32) -> Result<Jet2> {
        let cap = n.max(2 * f.total_degree().unwrap_or(0) + 6);
        if let Some(k) = self.polynomial_degree_bound(f, cap)? {
            let coeffs = self.jet_coeffs(f, k.saturating_sub(1))?;
            let poly = Polynomial::from_terms(leaf_ring(), coeffs.into_iter().map(|((a, b), c)| (Monomial::new(vec![a, b]), c)));
            return Ok(Jet2::from_polynomial(&poly, n));
        }
        let ctx = self.clone();
        let g = f.clone();
        let producer: Producer = Arc::new(move |m| Ok(Jet2::from_coeffs(m, ctx.jet_coeffs(&g, m)?)));
        Ok(Jet2::from_coeffs(n, self.jet_coeffs(f, n)?).with_producer(producer))
    }
}

fn independent_at(v1: &VectorField, v2: &VectorField, p: &[Q]) -> Result<bool> {
    let a = v1.at(p)?;
    let b = v2.at(p)?;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if !(&a[i] * &b[j] - &a[j] * &b[i]).is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Default starting jet order `2 (deg F + deg G) + 4`.
pub fn default_jet_order(f: &Polynomial, g: &Polynomial) -> u32 {
    2 * (f.total_degree().unwrap_or(0) + g.total_degree().unwrap_or(0)) + 4
}
