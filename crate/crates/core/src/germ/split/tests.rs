use super::*;
use crate::germ::puiseux::PuiseuxConfig;
use crate::poly::{factorial, Q};

fn jet(s: &str) -> Jet2 {
    Jet2::from_polynomial(&Polynomial::parse(super::super::leaf_ring(), s).unwrap(), 12)
}

fn associate(a: &Jet2, b: &str) -> bool {
    a.divide(&jet(b)).map(|q| q.is_unit()).unwrap_or(false)
}

fn cfg() -> PuiseuxConfig {
    PuiseuxConfig { shift: None, order: 12, max_order: 48 }
}

fn exp_minus_one(n: u32) -> Jet2 {
    Jet2::from_coeffs(n, (1..=n).map(|a| ((a, 0), Q::new(1.into(), factorial(a)))))
}

fn lazy_times(p: &'static str, n: u32) -> Jet2 {
    let prod: Producer = Arc::new(move |m| Ok(exp_minus_one(m).mul(&Jet2::parse(p, m).unwrap())));
    exp_minus_one(n).mul(&Jet2::parse(p, n).unwrap()).with_producer(prod)
}

#[test]
fn gcd_split_examples() {
    let s = split_common(&jet("t1*(t1-t2^2)"), &jet("t1*(t1-2*t2^2)"), &cfg()).unwrap();
    assert_eq!(s.method, SplitMethod::PolynomialGcd);
    assert_eq!(s.h_f, jet("t1"));
    assert_eq!(s.h_g, jet("t1"));
    assert_eq!(s.f, jet("t1-t2^2"));
    assert_eq!(s.g, jet("t1-2*t2^2"));
    assert_eq!(s.h_f.mul(&s.f), jet("t1*(t1-t2^2)"));

    let s = split_common(&jet("t1^2*t2"), &jet("t1*t2^2"), &cfg()).unwrap();
    assert_eq!(s.h_f, jet("t1^2*t2"));
    assert_eq!(s.h_g, jet("t1*t2^2"));
    assert!(s.f.is_unit() && s.g.is_unit());
    assert_eq!(s.common_f.cycles().len(), 2);

    let s = split_common(&jet("t1"), &jet("t2"), &cfg()).unwrap();
    assert_eq!(s.h_f, jet("1"));
    assert_eq!(s.f, jet("t1"));
    assert!(!s.has_common_branch());
}

#[test]
fn branch_matching_split_on_lazy_germs() {
    let fl = lazy_times("t1-t2^2", 12);
    let gl = lazy_times("t1-2*t2^2", 12);
    let s = split_common(&fl, &gl, &cfg()).unwrap();
    assert_eq!(s.method, SplitMethod::BranchMatching);
    assert_eq!(s.common_f.cycles().len(), 1);
    assert_eq!(s.h_f.truncate(8), jet("t1").truncate(8));
    assert_eq!(s.h_f.mul(&s.f), fl.truncate(s.f.order()));
    let m = local_multiplicity(&s.f, &s.g, &cfg()).unwrap();
    assert_eq!(m.value, Multiplicity::Finite(2));
    assert!(m.certificate.is_some());
}

#[test]
fn factor_examples() {
    let d = factor_multiplicities(&jet("t1^2*(t1-t2^2)"), &cfg()).unwrap();
    assert_eq!((d.k, d.big_k), (1, 2));
    assert!(associate(&d.reduced, "t1*(t1-t2^2)"), "{:?}", d.reduced);
    assert_eq!(d.branch_count, 3);
    let d = factor_multiplicities(&jet("t1"), &cfg()).unwrap();
    assert_eq!((d.k, d.big_k, d.mu), (1, 1, 1));
    assert!(associate(&d.reduced, "t1"));
    let h = jet("(t2^2-t1^3)^2");
    let d = factor_multiplicities(&h, &cfg()).unwrap();
    assert_eq!((d.k, d.big_k), (2, 2));
    assert!(associate(&d.reduced, "t2^2-t1^3"));
    assert!(d.reduced.pow(2).divisible_by(&h));
    assert!(factor_multiplicities(&jet("1+t1"), &cfg()).is_err());
}

#[test]
fn lazy_factor_data() {
    let h = lazy_times("t1", 12);
    let d = factor_multiplicities(&h, &cfg()).unwrap();
    assert_eq!((d.k, d.big_k, d.branch_count), (2, 2, 2));
    assert_eq!(d.reduced.truncate(6), jet("t1").truncate(6));
}

#[test]
fn multiplicity_values() {
    let m = |a: &str, b: &str| local_multiplicity(&jet(a), &jet(b), &cfg()).unwrap().value;
    assert_eq!(m("t1", "t2"), Multiplicity::Finite(1));
    assert_eq!(m("t1^2", "t2^3"), Multiplicity::Finite(6));
    assert_eq!(m("t2^2-t1^3", "t2"), Multiplicity::Finite(3));
    assert_eq!(m("t1-t2^2", "t1-2*t2^2"), Multiplicity::Finite(2));
    assert_eq!(m("1+t1", "t2"), Multiplicity::Finite(0));
    assert_eq!(m("t1*t2", "t1*(1+t2)"), Multiplicity::Infinite);
    // common factor away from the origin does not count
    assert_eq!(m("(1+t1)*t1", "(1+t1)*t2"), Multiplicity::Finite(1));
}

#[test]
fn lazy_common_branch_is_infinite() {
    let fl = lazy_times("t2", 10);
    let gl = lazy_times("t2-t1", 10);
    let m = local_multiplicity(&fl, &gl, &cfg()).unwrap();
    assert_eq!(m.value, Multiplicity::Infinite);
}

#[test]
fn no_producer_and_no_stabilization_is_inconclusive() {
    // stored order too low and nothing to regenerate from
    let f = Jet2::parse("t1^5", 4).unwrap().without_source();
    let g = Jet2::parse("t2^5", 4).unwrap().without_source();
    assert!(matches!(local_multiplicity(&f, &g, &cfg()), Err(Error::Inconclusive { .. })));
}
