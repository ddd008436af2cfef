use super::*;
use crate::germ::Producer;
use crate::poly::{factorial, q};

fn jet(s: &str, n: u32) -> Jet2 {
    Jet2::parse(s, n).unwrap()
}

fn cfg(order: u32) -> PuiseuxConfig {
    PuiseuxConfig { shift: None, order, max_order: 48 }
}

fn exp_minus_one(n: u32) -> Jet2 {
    Jet2::from_coeffs(n, (1..=n).map(|a| ((a, 0), Q::new(1.into(), factorial(a)))))
}

fn lazy(build: fn(u32) -> Jet2, n: u32) -> Jet2 {
    let p: Producer = Arc::new(move |m| Ok(build(m)));
    build(n).with_producer(p)
}

#[test]
fn cusp_is_one_ramified_class() {
    let f = jet("t2^2-t1^3", 10);
    let b = newton_puiseux(&f, &cfg(10)).unwrap();
    assert_eq!(b.mu(), 2);
    assert_eq!(b.cycles().len(), 1);
    let c = &b.cycles()[0];
    assert_eq!((c.ramification(), c.multiplicity(), c.degree()), (2, 1, 2));
    assert_eq!(c.initial_exponent(), Some((3, 2)));
    assert!(c.is_exact());
    // parameterization (s^2, s^3) substituted back
    assert!(c.vanishes(&f).unwrap());
    assert_eq!(c.product(10).unwrap(), f);
}

#[test]
fn two_rational_lines() {
    let f = jet("t2^2-t1^2", 8);
    let b = newton_puiseux(&f, &cfg(8)).unwrap();
    assert_eq!(b.mu(), 2);
    assert_eq!(b.cycles().len(), 2);
    let prods: Vec<Jet2> = b.cycles().iter().map(|c| c.product(8).unwrap()).collect();
    assert!(prods.contains(&jet("t2-t1", 8)));
    assert!(prods.contains(&jet("t2+t1", 8)));
    assert!(b.cycles().iter().all(|c| c.ramification() == 1 && c.field().is_rational()));
}

#[test]
fn double_line() {
    let b = newton_puiseux(&jet("t2^2", 6), &cfg(6)).unwrap();
    assert_eq!(b.cycles().len(), 1);
    assert_eq!(b.cycles()[0].multiplicity(), 2);
    assert_eq!(b.mu(), 2);
    assert_eq!(b.cycles()[0].product(6).unwrap(), jet("t2", 6));
}

#[test]
fn irrational_pair_is_one_class() {
    let f = jet("t2^2-2*t1^2+t1^3", 9);
    let b = newton_puiseux(&f, &cfg(9)).unwrap();
    assert_eq!(b.cycles().len(), 1);
    let c = &b.cycles()[0];
    assert_eq!(c.field().degree(), 2);
    assert_eq!(c.degree(), 2);
    assert_eq!(c.product(9).unwrap(), f);
    assert!(c.vanishes(&f).unwrap());
}

#[test]
fn vertical_branches_use_a_shift() {
    let b = newton_puiseux(&jet("t1", 6), &cfg(6)).unwrap();
    assert_eq!(b.shift(), &q(1));
    assert_eq!(b.cycles()[0].product(6).unwrap(), jet("t1", 6));
    let b = newton_puiseux(&jet("t1*t2", 6), &cfg(6)).unwrap();
    assert_eq!(b.reconstruct(6).unwrap(), jet("t1*t2", 6));
}

#[test]
fn two_step_ramification() {
    // one class with e = 4: y = x^(3/2) + x^(7/4)/2 + ...
    let f = jet("(t2^2-t1^3)^2-t1^5*t2", 16);
    let b = newton_puiseux(&f, &cfg(16)).unwrap();
    assert_eq!(b.cycles().len(), 1);
    assert_eq!(b.cycles()[0].ramification(), 4);
    assert_eq!(b.local_degree(), 4);
    assert!(b.cycles()[0].vanishes(&f).unwrap());
    let w = b.reconstruct(16).unwrap();
    assert!(f.divide(&w).unwrap().is_unit());
}

#[test]
fn conjugate_pair_of_ramified_classes() {
    // y^2 = x^3 (1 +- x^(1/2)): two classes with e = 2
    let f = jet("(t2^2-t1^3)^2-t1^7", 16);
    let b = newton_puiseux(&f, &cfg(16)).unwrap();
    assert_eq!(b.cycles().len(), 2);
    assert!(b.cycles().iter().all(|c| c.ramification() == 2));
    assert!(f.divide(&b.reconstruct(16).unwrap()).unwrap().is_unit());
}

#[test]
fn unit_has_no_branches() {
    let b = newton_puiseux(&jet("1+t1", 5), &cfg(5)).unwrap();
    assert!(b.cycles().is_empty());
    assert_eq!(b.mu(), 0);
}

#[test]
fn lazy_germ_regenerates() {
    fn build(n: u32) -> Jet2 {
        exp_minus_one(n).mul(&Jet2::parse("t1-t2^2", n).unwrap())
    }
    let f = lazy(build, 6);
    let b = newton_puiseux(&f, &cfg(8)).unwrap();
    assert!(!b.order_limited());
    assert_eq!(b.cycles().len(), 2);
    let w = b.reconstruct(8).unwrap();
    let full = f.regenerate(8).unwrap();
    assert!(full.divide(&w).unwrap().is_unit());
}

#[test]
fn lazy_double_factor_is_a_cluster() {
    fn build(n: u32) -> Jet2 {
        exp_minus_one(n).pow(2)
    }
    let f = lazy(build, 6);
    let b = newton_puiseux(&f, &PuiseuxConfig { shift: None, order: 4, max_order: 24 }).unwrap();
    assert!(b.order_limited());
    assert_eq!(b.cycles().len(), 1);
    assert_eq!(b.cycles()[0].multiplicity(), 2);
    assert!(b.cycles()[0].is_clustered());
}

#[test]
fn fixed_shift_must_be_regular() {
    let c = PuiseuxConfig { shift: Some(0), order: 4, max_order: 8 };
    assert!(matches!(newton_puiseux(&jet("t1", 4), &c), Err(Error::Hypothesis(_))));
}
