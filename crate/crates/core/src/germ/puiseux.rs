//! Newton-Puiseux expansion of plane germs.
//!
//! Branches are grouped into classes closed under both the ramification
//! conjugation `X -> zeta X` and the Galois conjugation of the coefficient
//! field, so every class has a defining factor with rational coefficients.
//! Expansions are rational in the sense of Duval: a class is the image of
//! `X -> (gamma X^e, y(X))` with `gamma` and the coefficients of `y` in a
//! single field `Q[a]/(m)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::univariate::UPoly;
use crate::poly::{format_q, squarefree_decomposition, Monomial, Polynomial, Q};

use super::field::{kpoly, Elem, NumberField};
use super::{leaf_ring, Jet2};

type Bi = BTreeMap<(u32, u32), Elem>;

/// `x = gamma X^e`, `y = A(X) + B X^b Y`.
#[derive(Clone)]
struct Chart {
    e: u32,
    gamma: Elem,
    a: BTreeMap<u32, Elem>,
    bc: Elem,
    b: u32,
}

#[derive(Clone)]
struct Work {
    field: Arc<NumberField>,
    f: Bi,
    // exact for X-degree below this; `None` when exact everywhere
    prec: Option<u32>,
    chart: Chart,
    first: Option<(u32, u32)>,
}

enum Halt {
    Precision,
    Fail(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        Halt::Fail(e)
    }
}

/// One class of conjugate branches.
#[derive(Clone, Debug)]
pub struct PuiseuxCycle {
    field: Arc<NumberField>,
    shift: Q,
    ramification: u32,
    gamma: Elem,
    series: Vec<Elem>,
    precision: Option<u32>,
    multiplicity: u32,
    initial_exponent: Option<(u32, u32)>,
    clustered: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CycleSummary {
    pub ramification: u32,
    pub degree: u32,
    pub minimal_polynomial: String,
    pub initial_exponent: Option<(u32, u32)>,
    pub multiplicity: u32,
    pub gamma: String,
    /// Nonzero coefficients of `y(X)` as (exponent, value in `a`).
    pub terms: Vec<(u32, String)>,
    pub precision: Option<u32>,
    pub clustered: bool,
}

impl PuiseuxCycle {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    /// Number of branches in the class: `e * [K:Q]`.
    pub fn degree(&self) -> u32 {
        self.ramification * self.field.degree() as u32
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn initial_exponent(&self) -> Option<(u32, u32)> {
        self.initial_exponent
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// `y(X)` known modulo `X^precision`; `None` for a finite exact expansion.
    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    /// True when the class stands for an unresolved cluster of coinciding
    /// roots at the available order.
    pub fn is_clustered(&self) -> bool {
        self.clustered
    }

    pub fn with_multiplicity(&self, m: u32) -> PuiseuxCycle {
        PuiseuxCycle { multiplicity: m, ..self.clone() }
    }

    pub fn summary(&self) -> CycleSummary {
        CycleSummary {
            ramification: self.ramification,
            degree: self.degree(),
            minimal_polynomial: self.field.modulus().to_string_in("a"),
            initial_exponent: self.initial_exponent,
            multiplicity: self.multiplicity,
            gamma: self.field.format(&self.gamma),
            terms: self.series.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as u32, self.field.format(c))).collect(),
            precision: self.precision,
            clustered: self.clustered,
        }
    }

    /// X-precision needed for the class product to be exact to order `n`.
    pub fn precision_for_order(&self, n: u32) -> u32 {
        self.ramification * (n + 1)
    }

    fn known_len(&self, want: u32) -> Result<usize> {
        match self.precision {
            Some(p) if p < want => Err(Error::Inconclusive { order: p, reason: format!("branch expansion known to X^{} but X^{} is needed", p, want) }),
            _ => Ok(want as usize),
        }
    }

    fn y_series(&self, len: usize) -> Vec<Elem> {
        (0..len).map(|i| self.series.get(i).cloned().unwrap_or_else(UPoly::zero)).collect()
    }

    /// The defining factor of the class, `prod (t2 - y_i)` over all its
    /// branches in the sheared chart, as a jet of order `n` in `t1, t2`
    /// (multiplicity not applied).
    pub fn product(&self, n: u32) -> Result<Jet2> {
        let k = &self.field;
        let e = self.ramification;
        let len = self.known_len(self.precision_for_order(n))?;
        let d = self.degree() as usize;
        let y = self.y_series(len);
        let ginv = k.inv(&self.gamma)?;
        let ginv_pows: Vec<Elem> = (0..=n).map(|i| k.pow(&ginv, i as i64)).collect::<Result<_>>()?;
        // power sums p_j(x), j = 1..d, as rational series mod x^(n+1)
        let mut p: Vec<Vec<Q>> = vec![Vec::new()];
        let mut yj = one_series(k, len);
        for _ in 1..=d {
            yj = series_mul(k, &yj, &y, len);
            let mut pj = vec![Q::zero(); n as usize + 1];
            for (i, slot) in pj.iter_mut().enumerate() {
                let idx = e as usize * i;
                if idx < len && !yj[idx].is_zero() {
                    let v = k.mul(&yj[idx], &ginv_pows[i]);
                    *slot = k.trace(&v) * Q::from_integer(e.into());
                }
            }
            p.push(pj);
        }
        // Newton's identities for the elementary symmetric functions
        let len_x = n as usize + 1;
        let mut sigma: Vec<Vec<Q>> = vec![unit_q(len_x)];
        for kk in 1..=d {
            let mut acc = vec![Q::zero(); len_x];
            for i in 1..=kk {
                let prod = q_series_mul(&sigma[kk - i], &p[i], len_x);
                for (a, b) in acc.iter_mut().zip(prod) {
                    if i % 2 == 1 {
                        *a += b;
                    } else {
                        *a -= b;
                    }
                }
            }
            let inv = Q::from_integer(kk.into()).recip();
            sigma.push(acc.into_iter().map(|c| c * &inv).collect());
        }
        let mut terms = Vec::new();
        for (kk, s) in sigma.iter().enumerate() {
            let vdeg = (d - kk) as u32;
            for (i, c) in s.iter().enumerate() {
                if c.is_zero() || i as u32 + vdeg > n {
                    continue;
                }
                let c = if kk % 2 == 1 { -c.clone() } else { c.clone() };
                terms.push((Monomial::new(vec![i as u32, vdeg]), c));
            }
        }
        let w = Polynomial::from_terms(leaf_ring(), terms);
        Ok(Jet2::from_polynomial(&unshear(&w, &self.shift), n).without_source())
    }

    /// The curve `X -> (t1(X), t2(X))` in leaf coordinates, with the number
    /// of valid coefficients.
    fn curve(&self, len: usize) -> (Vec<Elem>, Vec<Elem>) {
        let k = &self.field;
        let y = self.y_series(len);
        let mut t1: Vec<Elem> = y.iter().map(|c| k.scale(c, &self.shift)).collect();
        if (self.ramification as usize) < len {
            let i = self.ramification as usize;
            t1[i] = k.add(&t1[i], &self.gamma);
        }
        (t1, y)
    }

    /// `h` restricted to the class, as a series in `X`, and the number of
    /// its leading coefficients that are certain.
    pub fn evaluate(&self, h: &Jet2) -> Result<(Vec<Elem>, usize)> {
        let k = &self.field;
        let probe = self.precision.unwrap_or(self.ramification * (h.order() + 2)).max(1) as usize;
        let (t1, t2) = self.curve(probe);
        let ord = |s: &[Elem]| s.iter().position(|c| !c.is_zero()).unwrap_or(probe);
        let o = ord(&t1).min(ord(&t2)).max(1);
        let valid = probe.min((h.order() as usize + 1) * o);
        let (t1, t2) = (t1[..valid].to_vec(), t2[..valid].to_vec());
        let max_a = h.coeffs().keys().map(|x| x.0).max().unwrap_or(0);
        let max_b = h.coeffs().keys().map(|x| x.1).max().unwrap_or(0);
        let p1 = series_powers(k, &t1, max_a, valid);
        let p2 = series_powers(k, &t2, max_b, valid);
        let mut out = vec![k.zero(); valid];
        for ((a, b), c) in h.coeffs() {
            let prod = series_mul(k, &p1[*a as usize], &p2[*b as usize], valid);
            for (slot, v) in out.iter_mut().zip(prod) {
                if !v.is_zero() {
                    *slot = k.add(slot, &k.scale(&v, c));
                }
            }
        }
        Ok((out, valid))
    }

    /// `Some(true)` if `h` vanishes on the class to every certain order,
    /// `Some(false)` if a nonzero coefficient shows it does not.
    pub fn vanishes(&self, h: &Jet2) -> Result<bool> {
        let (s, _) = self.evaluate(h)?;
        Ok(s.iter().all(|c| c.is_zero()))
    }
}

/// Branch classes of a germ, with multiplicities.
#[derive(Clone, Debug)]
pub struct PuiseuxBranchSet {
    shift: Q,
    cycles: Vec<PuiseuxCycle>,
    mu: u32,
    order: u32,
    order_limited: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BranchSetSummary {
    pub shift: String,
    pub mu: u32,
    pub order: u32,
    pub order_limited: bool,
    pub cycles: Vec<CycleSummary>,
}

impl PuiseuxBranchSet {
    pub fn cycles(&self) -> &[PuiseuxCycle] {
        &self.cycles
    }

    /// Order of the germ at the origin.
    pub fn mu(&self) -> u32 {
        self.mu
    }

    /// Expansion chart: `t1 = u + shift * t2`, branches solved for `t2`.
    pub fn shift(&self) -> &Q {
        &self.shift
    }

    /// Jet order of the input used for the expansion.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// True when some class could not be resolved at the reachable order.
    pub fn order_limited(&self) -> bool {
        self.order_limited
    }

    /// `sum e * [K:Q] * multiplicity`.
    pub fn local_degree(&self) -> u32 {
        self.cycles.iter().map(|c| c.degree() * c.multiplicity).sum()
    }

    pub fn summary(&self) -> BranchSetSummary {
        BranchSetSummary {
            shift: format_q(&self.shift),
            mu: self.mu,
            order: self.order,
            order_limited: self.order_limited,
            cycles: self.cycles.iter().map(PuiseuxCycle::summary).collect(),
        }
    }

    /// The classes at the given indices; in the generic chart each branch
    /// contributes one to the order at the origin.
    pub fn subset(&self, idx: &[usize]) -> PuiseuxBranchSet {
        let cycles: Vec<PuiseuxCycle> = idx.iter().map(|&i| self.cycles[i].clone()).collect();
        let mu = cycles.iter().map(|c| c.degree() * c.multiplicity).sum();
        PuiseuxBranchSet { cycles, mu, ..self.clone() }
    }

    /// Product of the class factors raised to their multiplicities.
    pub fn reconstruct(&self, n: u32) -> Result<Jet2> {
        let mut acc = Jet2::one(n);
        for c in &self.cycles {
            acc = acc.mul(&c.product(n)?.pow(c.multiplicity));
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug)]
pub struct PuiseuxConfig {
    /// Chart `t1 = u + shift * t2`; chosen automatically when absent.
    pub shift: Option<i64>,
    /// Jet order at which class products must be exact.
    pub order: u32,
    /// Highest order a lazy germ may be regenerated to.
    pub max_order: u32,
}

impl Default for PuiseuxConfig {
    fn default() -> Self {
        PuiseuxConfig { shift: None, order: 12, max_order: 96 }
    }
}

/// Smallest shift in 0, 1, -1, 2, -2, ... making the tangent cone regular in
/// `t2`, i.e. `f_nu(c, 1) != 0`.
pub fn regular_shift(lowest: &[&Polynomial]) -> i64 {
    for k in 0..64i64 {
        let c = if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) };
        let pt = [Q::from_integer(c.into()), Q::one()];
        if lowest.iter().all(|p| !p.evaluate(&pt).map(|v| v.is_zero()).unwrap_or(true)) {
            return c;
        }
    }
    0
}

/// `p(u, v) -> p(t1 - c t2, t2)`.
fn unshear(p: &Polynomial, c: &Q) -> Polynomial {
    if c.is_zero() {
        return p.clone();
    }
    let r = leaf_ring();
    let t1 = Polynomial::var(r, 0);
    let t2 = Polynomial::var(r, 1);
    p.compose(&[&t1 - &t2.scale(c), t2]).expect("two variables")
}

/// `p(t1, t2) -> p(u + c v, v)`.
pub(crate) fn shear(p: &Polynomial, c: &Q) -> Polynomial {
    if c.is_zero() {
        return p.clone();
    }
    let r = leaf_ring();
    let u = Polynomial::var(r, 0);
    let v = Polynomial::var(r, 1);
    p.compose(&[&u + &v.scale(c), v]).expect("two variables")
}

pub fn newton_puiseux(f: &Jet2, cfg: &PuiseuxConfig) -> Result<PuiseuxBranchSet> {
    let mut f = f.clone();
    while f.valuation().is_none() {
        if !f.can_regenerate() || f.order() >= cfg.max_order {
            return Err(Error::Inconclusive { order: f.order(), reason: "germ vanishes to the reachable order".into() });
        }
        f = f.regenerate((2 * f.order()).clamp(1, cfg.max_order))?;
    }
    let nu = f.valuation().unwrap();
    let lowest = f.homogeneous(nu);
    let c = match cfg.shift {
        Some(c) => {
            let pt = [Q::from_integer(c.into()), Q::one()];
            if lowest.evaluate(&pt)?.is_zero() {
                return Err(Error::Hypothesis(format!("germ is not regular in t2 after the shift t1 -> t1 + {} t2", c)));
            }
            c
        }
        None => regular_shift(&[&lowest]),
    };
    let shift = Q::from_integer(c.into());
    let mut set = PuiseuxBranchSet { shift: shift.clone(), cycles: Vec::new(), mu: nu, order: f.order(), order_limited: false };
    if nu == 0 {
        return Ok(set);
    }
    if let Some(p) = f.exact_polynomial() {
        let puv = shear(p, &shift);
        for (level, m) in squarefree_decomposition(&puv)? {
            if !level.constant_term().is_zero() {
                continue;
            }
            let mut ctx = Ctx { target: cfg.order, allow_cluster: false, out: Vec::new(), limited: false, mult: m, shift: shift.clone() };
            match expand(start_work(&level, None), &mut ctx) {
                Ok(()) => set.cycles.extend(ctx.out),
                Err(Halt::Fail(e)) => return Err(e),
                Err(Halt::Precision) => unreachable!("exact expansion never runs out of precision"),
            }
        }
        return Ok(set);
    }
    let mut n = f.order().max(nu + 1);
    loop {
        let jet = f.regenerate(n).or_else(|_| Ok::<_, Error>(f.clone()))?;
        let n_eff = jet.order();
        let puv = shear(&jet.to_polynomial(), &shift);
        let puv = Jet2::from_polynomial(&puv, n_eff).to_polynomial();
        let can_more = f.can_regenerate() && n_eff < cfg.max_order;
        let mut ctx = Ctx { target: cfg.order, allow_cluster: !can_more, out: Vec::new(), limited: false, mult: 1, shift: shift.clone() };
        match expand(start_work(&puv, Some(n_eff + 1)), &mut ctx) {
            Ok(()) => {
                set.cycles = ctx.out;
                set.order = n_eff;
                set.order_limited = ctx.limited;
                return Ok(set);
            }
            Err(Halt::Fail(e)) => return Err(e),
            Err(Halt::Precision) => {
                n = (2 * n_eff).min(cfg.max_order);
            }
        }
    }
}

fn start_work(p: &Polynomial, prec: Option<u32>) -> Work {
    let k = NumberField::rational();
    let f: Bi = p.terms().map(|(m, c)| ((m.exponents()[0], m.exponents()[1]), k.from_q(c.clone()))).collect();
    Work { field: k.clone(), f, prec, chart: Chart { e: 1, gamma: k.one(), a: BTreeMap::new(), bc: k.one(), b: 0 }, first: None }
}

struct Ctx {
    target: u32,
    allow_cluster: bool,
    out: Vec<PuiseuxCycle>,
    limited: bool,
    mult: u32,
    shift: Q,
}

impl Ctx {
    fn emit(&mut self, w: &Work, series: Vec<Elem>, precision: Option<u32>, mult: u32, clustered: bool) {
        self.out.push(PuiseuxCycle {
            field: w.field.clone(),
            shift: self.shift.clone(),
            ramification: w.chart.e,
            gamma: w.chart.gamma.clone(),
            series,
            precision,
            multiplicity: mult * self.mult,
            initial_exponent: w.first,
            clustered,
        });
    }
}

fn chart_series(w: &Work, len: usize) -> Vec<Elem> {
    let mut s = vec![w.field.zero(); len];
    for (i, c) in &w.chart.a {
        if (*i as usize) < len {
            s[*i as usize] = c.clone();
        }
    }
    s
}

fn expand(mut w: Work, ctx: &mut Ctx) -> Result<(), Halt> {
    loop {
        let r = match w.f.keys().filter(|(i, _)| *i == 0).map(|(_, j)| *j).min() {
            Some(r) => r,
            None => return Err(Error::Certificate("branch expansion lost regularity".into()).into()),
        };
        if r == 0 {
            return Ok(());
        }
        let j_min = w.f.keys().map(|(_, j)| *j).min().unwrap();
        if j_min > 0 && w.prec.is_none() {
            // Y^k divides exactly: the current chart is an exact branch
            let len = w.chart.a.keys().max().map(|m| *m as usize + 1).unwrap_or(1);
            let s = chart_series(&w, len);
            ctx.emit(&w, s, None, j_min, false);
            w.f = w.f.into_iter().map(|((i, j), c)| ((i, j - j_min), c)).collect();
            continue;
        }
        if r == 1 {
            return smooth(&w, ctx);
        }
        if j_min > 0 {
            // a_0 vanishes to the known precision: j_min roots have
            // valuation at least (P - i) / j_min
            let pp = w.prec.unwrap();
            let i0 = w.f.keys().filter(|(_, j)| *j == j_min).map(|(i, _)| *i).min().unwrap();
            let vz = (pp - i0).div_ceil(j_min);
            near_zero(&w, ctx, j_min, vz)?;
        }
        for (i1, j1, i2, j2) in lower_hull(&w.f, r) {
            let g = (i2 - i1).gcd(&(j1 - j2));
            let p = (i2 - i1) / g;
            let q = (j1 - j2) / g;
            let m = q * i1 + p * j1;
            let k = &w.field;
            let psi: Vec<Elem> = (0..=(j1 - j2) / q).map(|t| w.f.get(&(i2 - t * p, j2 + t * q)).cloned().unwrap_or_else(|| k.zero())).collect();
            for (field, xi, _mult) in edge_roots(&w.field, &psi)? {
                let next = step(&w, &field, &xi, p, q, m)?;
                expand(next, ctx)?;
            }
        }
        return Ok(());
    }
}

// Edges of the lower convex hull from (0, r) to the first point on the lowest
// occupied row,
// as (i1, j1, i2, j2), by increasing slope.
fn lower_hull(f: &Bi, r: u32) -> Vec<(u32, u32, u32, u32)> {
    let floor = f.keys().map(|(_, j)| *j).min().unwrap_or(0);
    let mut mins: BTreeMap<u32, u32> = BTreeMap::new();
    for (i, j) in f.keys() {
        if *j <= r {
            let e = mins.entry(*j).or_insert(*i);
            *e = (*e).min(*i);
        }
    }
    let mut edges = Vec::new();
    let (mut ci, mut cj) = (0u32, r);
    while cj > floor {
        let mut best: Option<(u32, u32)> = None;
        for (&j, &i) in mins.range(..cj) {
            best = match best {
                None => Some((i, j)),
                Some((bi, bj)) => {
                    // compare (i - ci)/(cj - j) with (bi - ci)/(cj - bj)
                    let lhs = (i as i64 - ci as i64) * (cj as i64 - bj as i64);
                    let rhs = (bi as i64 - ci as i64) * (cj as i64 - j as i64);
                    if lhs < rhs || (lhs == rhs && j < bj) {
                        Some((i, j))
                    } else {
                        Some((bi, bj))
                    }
                }
            };
        }
        let (ni, nj) = best.expect("a point on the axis");
        edges.push((ci, cj, ni, nj));
        ci = ni;
        cj = nj;
    }
    edges
}

/// Nonzero roots of the edge polynomial, each with its multiplicity and the
/// field it lives in.
fn edge_roots(k: &Arc<NumberField>, psi: &[Elem]) -> Result<Vec<(Arc<NumberField>, Elem, u32)>> {
    let mut out = Vec::new();
    if k.is_rational() {
        let up = UPoly::new(psi.iter().map(|c| k.as_rational(c).expect("rational")).collect());
        for (phi, mult) in up.squarefree_decomposition() {
            let roots = phi.rational_roots().unwrap_or_default();
            let mut rest = phi.clone();
            for r in &roots {
                rest = rest.divrem(&UPoly::new(vec![-r.clone(), Q::one()])).0;
                out.push((k.clone(), k.from_q(r.clone()), mult));
            }
            if rest.degree().unwrap_or(0) > 0 {
                let ext = NumberField::new(rest);
                let a = ext.generator();
                out.push((ext, a, mult));
            }
        }
        return Ok(out);
    }
    for (phi, mult) in kpoly::squarefree_decomposition(k, &psi.to_vec())? {
        match kpoly::degree(&phi) {
            Some(1) => out.push((k.clone(), k.neg(&phi[0]), mult)),
            _ => {
                let rat: Option<Vec<Q>> = phi.iter().map(|c| k.as_rational(c)).collect();
                let up = rat.map(UPoly::new).ok_or_else(nested)?;
                let roots = up.rational_roots().unwrap_or_default();
                if roots.len() != up.degree().unwrap_or(0) {
                    return Err(nested());
                }
                for r in roots {
                    out.push((k.clone(), k.from_q(r), mult));
                }
            }
        }
    }
    Ok(out)
}

fn nested() -> Error {
    Error::Unsupported("branch expansion needs a nested algebraic extension".into())
}

fn step(w: &Work, field: &Arc<NumberField>, xi: &Elem, p: u32, q: u32, m: u32) -> Result<Work> {
    let k = field;
    let v = (0..q).find(|v| (1 + v * p).is_multiple_of(q)).expect("p, q coprime");
    let u = (1 + v * p) / q;
    let lambda = k.pow(xi, v as i64)?;
    let mu = k.pow(xi, u as i64)?;
    let prec = w.prec.map(|pp| q * pp - m);
    let max_i = w.f.keys().map(|x| x.0).max().unwrap_or(0);
    let max_j = w.f.keys().map(|x| x.1).max().unwrap_or(0);
    let lp = pow_table(k, &lambda, max_i.max(w.chart.e).max(w.chart.b).max(w.chart.a.keys().max().copied().unwrap_or(0)));
    let mp = pow_table(k, &mu, max_j);
    let mut f1: Bi = BTreeMap::new();
    for ((i, j), c) in &w.f {
        let d0 = q * i + p * j - m;
        if prec.map(|pp| d0 >= pp).unwrap_or(false) {
            continue;
        }
        let base = k.mul(c, &lp[*i as usize]);
        let mut binom = Q::one();
        for l in 0..=*j {
            let coef = k.scale(&k.mul(&base, &mp[(*j - l) as usize]), &binom);
            if !coef.is_zero() {
                let slot = f1.entry((d0, l)).or_insert_with(|| k.zero());
                *slot = k.add(slot, &coef);
            }
            binom = binom * Q::from_integer((*j - l).into()) / Q::from_integer((l + 1).into());
        }
    }
    f1.retain(|_, c| !c.is_zero());
    let ch = &w.chart;
    let mut a: BTreeMap<u32, Elem> = ch.a.iter().map(|(i, c)| (q * i, k.mul(c, &lp[*i as usize]))).collect();
    let bl = k.mul(&ch.bc, &lp[ch.b as usize]);
    let nb = q * ch.b + p;
    let slot = a.entry(nb).or_insert_with(|| k.zero());
    *slot = k.add(slot, &k.mul(&bl, &mu));
    a.retain(|_, c| !c.is_zero());
    let chart = Chart { e: ch.e * q, gamma: k.mul(&ch.gamma, &lp[ch.e as usize]), a, bc: bl, b: nb };
    Ok(Work { field: k.clone(), f: f1, prec, chart, first: w.first.or(Some((p, q))) })
}

fn pow_table(k: &NumberField, x: &Elem, max: u32) -> Vec<Elem> {
    let mut out = vec![k.one()];
    for i in 1..=max as usize {
        out.push(k.mul(&out[i - 1], x));
    }
    out
}

fn near_zero(w: &Work, ctx: &mut Ctx, mult: u32, vz: u32) -> Result<(), Halt> {
    let need_x = w.chart.e * (ctx.target + 1);
    let len = w.chart.b + vz;
    let enough = mult == 1 && len >= need_x;
    if !enough {
        if !ctx.allow_cluster {
            return Err(Halt::Precision);
        }
        ctx.limited = true;
    }
    let s = chart_series(w, len as usize);
    ctx.emit(w, s, Some(len), mult, mult > 1);
    Ok(())
}

// Y with f(X, Y) = 0, Y(0) = 0, when f_Y(0, 0) != 0.
fn smooth(w: &Work, ctx: &mut Ctx) -> Result<(), Halt> {
    let k = &w.field;
    let need_x = w.chart.e * (ctx.target + 1);
    let needed = need_x.saturating_sub(w.chart.b).max(1);
    let len = match w.prec {
        None => needed,
        Some(pp) if pp >= needed => needed,
        Some(pp) => {
            if !ctx.allow_cluster {
                return Err(Halt::Precision);
            }
            ctx.limited = true;
            pp
        }
    } as usize;
    let maxj = w.f.keys().map(|x| x.1).max().unwrap_or(0) as usize;
    let mut cs: Vec<Vec<Elem>> = vec![vec![k.zero(); len]; maxj + 1];
    for ((i, j), c) in &w.f {
        if (*i as usize) < len {
            cs[*j as usize][*i as usize] = c.clone();
        }
    }
    let dcs: Vec<Vec<Elem>> = (1..=maxj).map(|j| cs[j].iter().map(|c| k.scale(c, &Q::from_integer(j.into()))).collect()).collect();
    let mut y = vec![k.zero(); len];
    let mut cur = 1usize;
    while cur < len {
        cur = (2 * cur).min(len);
        let fy = horner(k, &cs, &y, cur);
        let dy = horner(k, &dcs, &y, cur);
        let corr = series_mul(k, &fy, &series_inv(k, &dy, cur)?, cur);
        for i in 0..cur {
            y[i] = k.sub(&y[i], &corr[i]);
        }
    }
    let total = w.chart.b as usize + len;
    let mut s = chart_series(w, total);
    for (i, c) in y.iter().enumerate() {
        let idx = w.chart.b as usize + i;
        if idx < total && !c.is_zero() {
            s[idx] = k.add(&s[idx], &k.mul(&w.chart.bc, c));
        }
    }
    ctx.emit(w, s, Some(total as u32), 1, false);
    Ok(())
}

fn horner(k: &NumberField, cs: &[Vec<Elem>], y: &[Elem], len: usize) -> Vec<Elem> {
    let mut acc = vec![k.zero(); len];
    for c in cs.iter().rev() {
        acc = series_mul(k, &acc, y, len);
        for (a, b) in acc.iter_mut().zip(c.iter()) {
            *a = k.add(a, b);
        }
    }
    acc
}

fn one_series(k: &NumberField, len: usize) -> Vec<Elem> {
    let mut s = vec![k.zero(); len];
    if len > 0 {
        s[0] = k.one();
    }
    s
}

fn series_mul(k: &NumberField, a: &[Elem], b: &[Elem], len: usize) -> Vec<Elem> {
    let mut out = vec![k.zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] = k.add(&out[i + j], &k.mul(x, y));
            }
        }
    }
    out
}

fn series_inv(k: &NumberField, a: &[Elem], len: usize) -> Result<Vec<Elem>> {
    let a0 = k.inv(&a[0])?;
    let mut out = vec![k.zero(); len];
    out[0] = a0.clone();
    for n in 1..len {
        let mut s = k.zero();
        for i in 1..=n.min(a.len() - 1) {
            s = k.add(&s, &k.mul(&a[i], &out[n - i]));
        }
        out[n] = k.neg(&k.mul(&s, &a0));
    }
    Ok(out)
}

fn series_powers(k: &NumberField, a: &[Elem], max: u32, len: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![one_series(k, len)];
    for i in 1..=max as usize {
        let next = series_mul(k, &out[i - 1], a, len);
        out.push(next);
    }
    out
}

fn unit_q(len: usize) -> Vec<Q> {
    let mut s = vec![Q::zero(); len];
    s[0] = Q::one();
    s
}

fn q_series_mul(a: &[Q], b: &[Q], len: usize) -> Vec<Q> {
    super::jet::series_mul(a, b, len)
}

#[cfg(test)]
mod tests;
