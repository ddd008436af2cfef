//! Seeded randomized checks of the multiplicity lemmas the bound relies on,
//! and offline re-verification of bound traces.

use std::ops::RangeInclusive;
use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foliation::{lie_derivative, FoliationContext, VectorField};
use crate::germ::{leaf_ring, Jet2, LocalIdeal};
use crate::ideal::{
    groebner, ideal_power, leading_term_ideal, monomial_in, mora, multiplicity_zero_dim, staircase_count, Budget, IdealPresentation, Multiplicity,
};
use crate::pairs::{compose, BoundReport, Evidence, FinalStatus, PairSnapshot, StepKind};
use crate::poly::{factorial, parse_q, q, Monomial, MonomialOrder, Polynomial, Ring, Q};

pub const SUITES: [&str; 5] = ["radical-lemma", "power-lemma", "lt-facts", "poisson-lemma", "foliation"];

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
    pub millis: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_suite(name: &str, seed: u64, count: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let case: fn(&mut ChaCha8Rng) -> Result<Option<String>> = match name {
        "radical-lemma" => radical_lemma_case,
        "power-lemma" => power_lemma_case,
        "lt-facts" => lt_facts_case,
        "poisson-lemma" => poisson_lemma_case,
        "foliation" => foliation_case,
        _ => return Err(Error::Hypothesis(format!("unknown suite {} (expected one of {})", name, SUITES.join(", ")))),
    };
    let mut failures = Vec::new();
    for i in 0..count {
        if let Some(f) = case(&mut rng)? {
            failures.push(format!("case {}: {}", i, f));
        }
    }
    Ok(SuiteReport { suite: name.to_string(), seed, cases: count, failures, millis: start.elapsed().as_millis() as u64 })
}

fn budget() -> Budget {
    Budget::default()
}

fn ring(m: usize) -> Ring {
    Ring::new(["x", "y", "z"].iter().take(m).cloned())
}

fn random_monomial(rng: &mut ChaCha8Rng, m: usize, d: u32) -> Monomial {
    let mut e = vec![0; m];
    for _ in 0..d {
        e[rng.gen_range(0..m)] += 1;
    }
    Monomial::new(e)
}

fn coeff(rng: &mut ChaCha8Rng) -> Q {
    let c: i64 = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        q(-c)
    } else {
        q(c)
    }
}

fn random_poly(rng: &mut ChaCha8Rng, r: &Ring, degs: RangeInclusive<u32>, terms: RangeInclusive<usize>) -> Polynomial {
    let mut p = Polynomial::zero(r);
    for _ in 0..rng.gen_range(terms) {
        let d = rng.gen_range(degs.clone());
        let mono = random_monomial(rng, r.len(), d);
        let c = coeff(rng);
        p = &p + &Polynomial::monomial(r, mono, c);
    }
    p
}

/// `x_i^a_i` plus terms of higher degree for every variable, so the tangent
/// cones only meet at the origin, and possibly one extra generator.
fn local_ideal(rng: &mut ChaCha8Rng, r: &Ring, max_a: u32) -> IdealPresentation {
    let mut gens = Vec::new();
    for i in 0..r.len() {
        let a = rng.gen_range(1..=max_a);
        let g = &Polynomial::monomial(r, Monomial::var(r.len(), i).pow(a), q(1)) + &random_poly(rng, r, a + 1..=a + 2, 0..=2);
        gens.push(g);
    }
    if rng.gen_bool(0.5) {
        gens.push(random_poly(rng, r, 1..=3, 2..=2));
    }
    IdealPresentation::new(r, gens).expect("same ring")
}

/// `x_i^a_i` plus higher-degree terms in the later variables only, so the
/// origin is the only common zero and local and global multiplicities agree.
fn supported_at_origin(rng: &mut ChaCha8Rng, r: &Ring, max_a: u32) -> IdealPresentation {
    let m = r.len();
    let mut gens = Vec::new();
    for i in 0..m {
        let a = rng.gen_range(1..=max_a);
        let mut g = Polynomial::monomial(r, Monomial::var(m, i).pow(a), q(1));
        if i + 1 < m {
            for _ in 0..rng.gen_range(0..=2) {
                let d = rng.gen_range(a + 1..=a + 2);
                let tail = random_monomial(rng, m - i - 1, d);
                let mut e = vec![0; i + 1];
                e.extend_from_slice(tail.exponents());
                let c = coeff(rng);
                g = &g + &Polynomial::monomial(r, Monomial::new(e), c);
            }
        }
        gens.push(g);
    }
    if rng.gen_bool(0.5) {
        gens.push(random_poly(rng, r, 1..=3, 2..=2));
    }
    IdealPresentation::new(r, gens).expect("same ring")
}

fn local_mult(i: &IdealPresentation) -> Result<Option<u64>> {
    Ok(mora::local_multiplicity(i, &budget())?.finite())
}

fn jets(i: &IdealPresentation, n: u32) -> Vec<Jet2> {
    i.gens().iter().map(|g| Jet2::from_polynomial(g, n)).collect()
}

// f^n ∈ K  ⇒  mult K ≤ n · mult <K, f>
fn radical_lemma_case(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let r = leaf_ring().clone();
    let k = local_ideal(rng, &r, 3);
    let f = random_poly(rng, &r, 1..=2, 1..=3);
    let Some(mk) = local_mult(&k)? else { return Ok(Some(format!("{:?} has infinite multiplicity", k.gens()))) };
    let li = LocalIdeal::new(&jets(&k, 8), 8, 48)?;
    if li.multiplicity() != Some(mk) {
        return Ok(Some(format!("staircase {:?} and standard basis {} disagree for {:?}", li.multiplicity(), mk, k.gens())));
    }
    let fj = Jet2::from_polynomial(&f, li.order());
    let mut pow = fj.clone();
    let mut n = 1;
    while !li.contains(&pow)?.member {
        pow = pow.mul(&fj);
        n += 1;
        if n > li.order() + 1 {
            return Ok(Some(format!("no power of {} found in {:?}", f, k.gens())));
        }
    }
    let mkf = local_mult(&k.with([f.clone()]))?.unwrap_or(0);
    if mk > u64::from(n) * mkf {
        return Ok(Some(format!("mult {} > {} * {} for f = {}, K = {:?}", mk, n, mkf, f, k.gens())));
    }
    Ok(None)
}

// K' ⊇ K^n  ⇒  mult K' ≤ n^m · mult K
fn power_lemma_case(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let m = rng.gen_range(1..=3);
    let n = rng.gen_range(1..=3u32);
    let r = ring(m);
    let k = supported_at_origin(rng, &r, if m == 3 { 2 } else { 3 });
    let mut kp = ideal_power(&k, n);
    for _ in 0..rng.gen_range(0..=2) {
        let g = k.gens()[rng.gen_range(0..k.gens().len())].clone();
        let h = random_poly(rng, &r, 0..=1, 1..=1);
        kp = kp.with([&g * &h]);
    }
    let o = MonomialOrder::degrevlex();
    let Some(mk) = multiplicity_zero_dim(&k, &o, &budget())?.finite() else { return Ok(Some("infinite multiplicity".into())) };
    let mkp = multiplicity_zero_dim(&kp, &o, &budget())?.finite().unwrap_or(u64::MAX);
    if mkp > u64::from(n).pow(m as u32) * mk {
        return Ok(Some(format!("mult K' = {} > {}^{} * {} for K = {:?}", mkp, n, m, mk, k.gens())));
    }
    Ok(None)
}

fn zero_dim_ideal(rng: &mut ChaCha8Rng, r: &Ring) -> IdealPresentation {
    let mut gens = Vec::new();
    for i in 0..r.len() {
        let a = rng.gen_range(1..=3);
        gens.push(&Polynomial::monomial(r, Monomial::var(r.len(), i).pow(a), q(1)) + &random_poly(rng, r, 0..=a - 1, 0..=2));
    }
    gens.push(random_poly(rng, r, 0..=2, 2..=2));
    IdealPresentation::new(r, gens).expect("same ring")
}

fn monomials(i: &IdealPresentation) -> Vec<Monomial> {
    i.gens().iter().flat_map(|g| g.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>()).collect()
}

// mult K = mult LT(K), and LT(K)^n ⊆ LT(K^n)
fn lt_facts_case(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let m = rng.gen_range(2..=3);
    let r = ring(m);
    let k = zero_dim_ideal(rng, &r);
    let o = MonomialOrder::degrevlex();
    let lt = leading_term_ideal(&k, &o, &budget())?;
    let by_lex = multiplicity_zero_dim(&k, &MonomialOrder::lex(), &budget())?;
    let by_lt = staircase_count(m, &monomials(&lt));
    if by_lex != by_lt {
        return Ok(Some(format!("dim {:?} vs LT staircase {:?} for {:?}", by_lex, by_lt, k.gens())));
    }
    if by_lex == Multiplicity::Finite(0) {
        return Ok(None);
    }
    let n = rng.gen_range(1..=if m == 2 { 3 } else { 2 });
    let lt_of_pow = monomials(&leading_term_ideal(&ideal_power(&k, n), &o, &budget())?);
    let gens = monomials(&lt);
    let mut idx = vec![0usize; n as usize];
    loop {
        let prod = idx.iter().fold(Monomial::one(m), |acc, &i| acc.mul(&gens[i]));
        if !monomial_in(&prod, &lt_of_pow) {
            return Ok(Some(format!("{:?} of LT(K)^{} is not in LT(K^{})", prod.exponents(), n, n)));
        }
        let mut j = 0;
        while j < idx.len() && idx[j] + 1 == gens.len() {
            idx[j] = 0;
            j += 1;
        }
        if j == idx.len() {
            break;
        }
        idx[j] += 1;
    }
    Ok(None)
}

fn jacobian(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    Ok(&(&f.derive(0)? * &g.derive(1)?) - &(&f.derive(1)? * &g.derive(0)?))
}

// f, g ∈ K  ⇒  mult K ≤ mult <K, {f, g}> + 1
fn poisson_lemma_case(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let r = leaf_ring().clone();
    let k = local_ideal(rng, &r, 3);
    let pick = |rng: &mut ChaCha8Rng| {
        let mut acc = Polynomial::zero(&r);
        for g in k.gens() {
            let a = random_poly(rng, &r, 0..=1, 0..=2);
            acc = &acc + &(&a * g);
        }
        acc
    };
    let f = pick(rng);
    let g = pick(rng);
    let br = jacobian(&f, &g)?;
    let Some(mk) = local_mult(&k)? else { return Ok(Some("infinite multiplicity".into())) };
    let mb = local_mult(&k.with([br.clone()]))?.unwrap_or(0);
    if mk > mb + 1 {
        return Ok(Some(format!("mult {} > {} + 1 for f = {}, g = {}, K = {:?}", mk, mb, f, g, k.gens())));
    }
    Ok(None)
}

fn model(k: usize) -> Result<Arc<FoliationContext>> {
    let r = ring(3);
    let (a, b, p): ([&str; 3], [&str; 3], [i64; 3]) = match k {
        0 => (["1", "0", "z"], ["0", "1", "0"], [0, 0, 1]),
        1 => (["1", "0", "z"], ["0", "1", "y*z"], [0, 0, 1]),
        _ => (["1", "0", "0"], ["0", "1", "0"], [0, 0, 0]),
    };
    FoliationContext::new(VectorField::parse(&r, &a)?, VectorField::parse(&r, &b)?, p.iter().map(|c| q(*c)).collect())
}

// jets are a ring morphism, the fields act as coordinate derivations and
// the leafwise bracket is the Jacobian determinant
fn foliation_case(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let ctx = model(rng.gen_range(0..3))?;
    let r = ctx.ring().clone();
    let f = random_poly(rng, &r, 0..=2, 1..=3);
    let g = random_poly(rng, &r, 0..=2, 1..=3);
    let n = rng.gen_range(0..=8);
    let jf = ctx.leaf_jet(&f, n)?;
    let jg = ctx.leaf_jet(&g, n)?;
    if ctx.leaf_jet(&(&f * &g), n)? != jf.mul(&jg) {
        return Ok(Some(format!("jet of {} * {} is not the product of jets", f, g)));
    }
    if ctx.leaf_jet(&(&f + &g), n)? != jf.add(&jg) {
        return Ok(Some(format!("jet of {} + {} is not the sum of jets", f, g)));
    }
    let up = ctx.leaf_jet(&f, n + 1)?;
    for (i, v) in [ctx.v1(), ctx.v2()].into_iter().enumerate() {
        if ctx.leaf_jet(&lie_derivative(v, &f)?, n)? != up.derive(i) {
            return Ok(Some(format!("V{} does not act as d/dt{} on {}", i + 1, i + 1, f)));
        }
    }
    let br = ctx.poisson(&f, &g)?;
    if ctx.leaf_jet(&br, n)? != Jet2::jacobian(&up, &ctx.leaf_jet(&g, n + 1)?) {
        return Ok(Some(format!("bracket of {} and {} is not the leaf Jacobian", f, g)));
    }
    Ok(None)
}

/// Coefficients `[t1^a] z|_L` for `a ≤ n` on the leaf through `(0,0,1)` of
/// `V1 = (1,0,z)`, `V2 = (0,1,0)`.
pub fn exponential_leaf_coefficients(n: u32) -> Result<Vec<Q>> {
    let ctx = model(0)?;
    let z = Polynomial::var(ctx.ring(), 2);
    let j = ctx.leaf_jet(&z, n)?;
    Ok((0..=n).map(|a| j.coeff(a, 0)).collect())
}

/// `1/a!` for `a ≤ n`.
pub fn reciprocal_factorials(n: u32) -> Vec<Q> {
    (0..=n).map(|a| Q::from_integer(factorial(a)).recip()).collect()
}

fn parse_all(r: &Ring, gens: &[String]) -> Result<Vec<Polynomial>> {
    Ok(gens.iter().map(|s| Polynomial::parse(r, s)).collect::<Result<_, _>>()?)
}

fn snapshot_ideal(r: &Ring, s: &PairSnapshot) -> Result<(IdealPresentation, LocalIdeal)> {
    let global = IdealPresentation::new(r, parse_all(r, &s.global)?)?;
    let local: Vec<Jet2> = parse_all(leaf_ring(), &s.local)?.iter().map(|p| Jet2::from_polynomial(p, s.order + 1).without_source()).collect();
    let li = LocalIdeal::new(&local, s.order, s.order)?;
    Ok((global, li))
}

/// Re-checks every certificate of a bound trace from its text alone.
pub fn verify_trace(rep: &BoundReport, b: &Budget) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut fails = Vec::new();
    if rep.trace_version != crate::pairs::TRACE_VERSION {
        fails.push(format!("trace version {} is not supported", rep.trace_version));
    }
    let r = Ring::new(rep.input.variables.iter().cloned());
    let point: Vec<Q> = rep.input.point.iter().map(|s| parse_q(s)).collect::<Result<_, _>>()?;
    let ctx = FoliationContext::new(VectorField::new(&r, parse_all(&r, &rep.input.v1)?)?, VectorField::new(&r, parse_all(&r, &rep.input.v2)?)?, point)?;
    let f = Polynomial::parse(&r, &rep.input.f)?;
    let g = Polynomial::parse(&r, &rep.input.g)?;

    let contained = |s: &PairSnapshot, fails: &mut Vec<String>, tag: &str| -> Result<(IdealPresentation, LocalIdeal)> {
        let (gl, li) = snapshot_ideal(&r, s)?;
        for p in gl.gens() {
            if !li.contains(&ctx.leaf_jet(p, s.order)?)?.member {
                fails.push(format!("{}: {} does not restrict into the local ideal", tag, p));
            }
        }
        Ok((gl, li))
    };
    let (mut prev, mut prev_local) = contained(&rep.initial, &mut fails, "initial")?;
    let gb0 = groebner(&prev, &MonomialOrder::degrevlex(), b)?;
    let fg = groebner(&IdealPresentation::new(&r, [f.clone(), g.clone()])?, &MonomialOrder::degrevlex(), b)?;
    if !gb0.contains(&f) || !gb0.contains(&g) || prev.gens().iter().any(|p| !fg.contains(p)) {
        fails.push("initial global ideal is not <F, G>".into());
    }
    for (i, st) in rep.ledger.steps.iter().enumerate() {
        let tag = format!("step {} ({:?})", i, st.kind);
        let gb = groebner(&prev, &MonomialOrder::degrevlex(), b)?;
        let (next, next_local) = contained(&st.after, &mut fails, &tag)?;
        let gbn = groebner(&next, &MonomialOrder::degrevlex(), b)?;
        if prev.gens().iter().any(|p| !gbn.contains(p)) {
            fails.push(format!("{}: global ideal shrank", tag));
        }
        match (&st.kind, &st.evidence) {
            (StepKind::Radical, Evidence::Radical { exponents, power, .. }) => {
                let mut sum = 1;
                for e in exponents {
                    let p = Polynomial::parse(&r, &e.generator)?;
                    if !gb.contains(&p.pow(e.exponent)) {
                        fails.push(format!("{}: {}^{} is not in the ideal", tag, p, e.exponent));
                    }
                    sum += u64::from(e.exponent.saturating_sub(1));
                }
                if sum != *power || st.transfer.a != power * power || st.transfer.b != 0 {
                    fails.push(format!("{}: transfer does not match the exponents", tag));
                }
                let listed: Vec<Polynomial> = exponents.iter().map(|e| Polynomial::parse(&r, &e.generator)).collect::<Result<_, _>>()?;
                if next.gens().iter().any(|p| !listed.contains(p)) {
                    fails.push(format!("{}: uncertified generator in the radical", tag));
                }
            }
            (StepKind::Poisson, Evidence::Poisson { f, g, bracket }) => {
                let (pf, pg) = (Polynomial::parse(&r, f)?, Polynomial::parse(&r, g)?);
                if !gb.contains(&pf) || !gb.contains(&pg) {
                    fails.push(format!("{}: bracket arguments are not in the ideal", tag));
                }
                if ctx.poisson(&pf, &pg)? != Polynomial::parse(&r, bracket)? {
                    fails.push(format!("{}: bracket does not recompute", tag));
                }
                if st.transfer.a != 1 || st.transfer.b != 1 {
                    fails.push(format!("{}: transfer is not m + 1", tag));
                }
            }
            (StepKind::Jacobian, Evidence::Jacobian { f, k, big_k, reduced, derivatives, formula_factor, certified_exponent, .. }) => {
                let pf = Polynomial::parse(&r, f)?;
                if !gb.contains(&pf) {
                    fails.push(format!("{}: F is not in the ideal", tag));
                }
                for (a, d) in derivatives.iter().enumerate() {
                    if ctx.derivative(&pf, a as u32, k - a as u32)? != Polynomial::parse(&r, d)? {
                        fails.push(format!("{}: derivative {} does not recompute", tag, a));
                    }
                }
                if *formula_factor != u64::from(*big_k) << big_k || st.transfer.b != 0 || st.transfer.a > *formula_factor {
                    fails.push(format!("{}: transfer exceeds the K 2^K factor", tag));
                }
                if st.transfer.a < *formula_factor {
                    let red = Jet2::from_polynomial(&Polynomial::parse(leaf_ring(), reduced)?, prev_local.order());
                    let ok = *certified_exponent == Some(st.transfer.a as u32)
                        && prev_local.is_certified()
                        && prev_local.contains(&red.pow(st.transfer.a as u32))?.member;
                    if !ok {
                        fails.push(format!("{}: certified exponent {} does not check", tag, st.transfer.a));
                    }
                }
            }
            _ => fails.push(format!("{}: evidence does not match the step kind", tag)),
        }
        prev = next;
        prev_local = next_local;
    }
    if rep.ledger.status == FinalStatus::PointExcluded {
        let mut excluded = false;
        for p in prev.gens() {
            if !p.evaluate(ctx.point())?.is_zero() {
                excluded = true;
            }
        }
        if !excluded {
            fails.push("final ideal does not exclude the point".into());
        }
        if rep.bound != Some(compose(&rep.ledger.steps, 0)) {
            fails.push("bound is not the composed ledger".into());
        }
    } else if rep.bound.is_some() {
        fails.push("bound reported without excluding the point".into());
    }
    if rep.is_sound() == Some(false) {
        fails.push(format!("direct value {:?} exceeds bound {:?}", rep.direct, rep.bound));
    }
    Ok(SuiteReport { suite: "trace".into(), seed: rep.seed, cases: rep.ledger.steps.len(), failures: fails, millis: start.elapsed().as_millis() as u64 })
}
