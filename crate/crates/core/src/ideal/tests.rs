use super::*;
use crate::poly::MonomialOrder;

fn r2() -> Ring {
    Ring::new(["x", "y"])
}

fn r3() -> Ring {
    Ring::new(["x", "y", "z"])
}

fn ideal(r: &Ring, gens: &[&str]) -> IdealPresentation {
    IdealPresentation::parse(r, gens).unwrap()
}

fn p(r: &Ring, s: &str) -> Polynomial {
    Polynomial::parse(r, s).unwrap()
}

fn b() -> Budget {
    Budget::default()
}

fn basis_strings(gb: &GroebnerBasis) -> Vec<String> {
    gb.basis().iter().map(|g| g.to_string()).collect()
}

#[test]
fn groebner_examples() {
    let r = r2();
    let dr = MonomialOrder::degrevlex();
    assert_eq!(basis_strings(&groebner(&ideal(&r, &["x", "y"]), &dr, &b()).unwrap()), vec!["y", "x"]);
    assert_eq!(basis_strings(&groebner(&ideal(&r, &["x^2+y^2", "x^2-y^2"]), &dr, &b()).unwrap()), vec!["y^2", "x^2"]);
    let unit = groebner(&ideal(&r, &["1"]), &dr, &b()).unwrap();
    assert!(unit.is_unit());
    assert_eq!(basis_strings(&unit), vec!["1"]);
}

#[test]
fn groebner_budget_carries_partial_basis() {
    let r = r3();
    let i = ideal(&r, &["x^2+y*z", "y^2-x*z", "z^2+x*y-1"]);
    match groebner(&i, &MonomialOrder::degrevlex(), &Budget::with_pairs(1)) {
        Err(Error::Budget { partial, .. }) => assert!(partial.len() >= 3),
        other => panic!("expected budget error, got {:?}", other.map(|g| g.basis().to_vec())),
    }
}

#[test]
fn normal_form_examples() {
    let r = r2();
    let dr = MonomialOrder::degrevlex();
    let gx = groebner(&ideal(&r, &["x"]), &dr, &b()).unwrap();
    assert!(normal_form(&p(&r, "x^2"), &gx).is_zero());
    let g = groebner(&ideal(&r, &["x-y"]), &dr, &b()).unwrap();
    assert_eq!(normal_form(&p(&r, "x+y"), &g), p(&r, "2*y"));
    let gxy = groebner(&ideal(&r, &["x", "y"]), &dr, &b()).unwrap();
    assert_eq!(normal_form(&p(&r, "1"), &gxy), p(&r, "1"));
}

#[test]
fn radical_membership_examples() {
    let r = r2();
    assert!(radical_membership(&p(&r, "x"), &ideal(&r, &["x^2"]), &b()).unwrap());
    assert!(!radical_membership(&p(&r, "y"), &ideal(&r, &["x^2"]), &b()).unwrap());
    assert!(radical_membership(&p(&r, "x+y"), &ideal(&r, &["x^2", "y^2"]), &b()).unwrap());
}

#[test]
fn leading_term_ideal_examples() {
    let r = r2();
    let lt = leading_term_ideal(&ideal(&r, &["x+y^2", "y^3"]), &MonomialOrder::lex(), &b()).unwrap();
    let mut got: Vec<String> = lt.gens().iter().map(|g| g.to_string()).collect();
    got.sort();
    assert_eq!(got, vec!["x", "y^3"]);
    let lt = leading_term_ideal(&ideal(&r, &["x", "y"]), &MonomialOrder::degrevlex(), &b()).unwrap();
    assert_eq!(lt.gens().len(), 2);
    let lt = leading_term_ideal(&ideal(&r, &["x^2-y^2"]), &MonomialOrder::degrevlex(), &b()).unwrap();
    assert_eq!(lt.gens(), &[p(&r, "x^2")]);
}

#[test]
fn multiplicity_examples() {
    let r = r2();
    let dr = MonomialOrder::degrevlex();
    assert_eq!(multiplicity_zero_dim(&ideal(&r, &["x^2", "y^3"]), &dr, &b()).unwrap(), Multiplicity::Finite(6));
    assert_eq!(multiplicity_zero_dim(&ideal(&r, &["x", "y"]), &dr, &b()).unwrap(), Multiplicity::Finite(1));
    assert_eq!(multiplicity_zero_dim(&ideal(&r, &["x^2+y^2", "x^2-y^2"]), &dr, &b()).unwrap(), Multiplicity::Finite(4));
    assert_eq!(multiplicity_zero_dim(&ideal(&r, &["x"]), &dr, &b()).unwrap(), Multiplicity::Infinite);
}

#[test]
fn local_multiplicity_ignores_other_points() {
    let r = r2();
    // (y - x^2, y - x): roots (0,0) and (1,1); one at the origin
    let i = ideal(&r, &["y-x^2", "y-x"]);
    assert_eq!(multiplicity_zero_dim(&i, &MonomialOrder::degrevlex(), &b()).unwrap(), Multiplicity::Finite(2));
    assert_eq!(multiplicity_zero_dim(&i, &MonomialOrder::local(), &b()).unwrap(), Multiplicity::Finite(1));
    let cusp = ideal(&r, &["y^2-x^3", "y"]);
    assert_eq!(mora::local_multiplicity(&cusp, &b()).unwrap(), Multiplicity::Finite(3));
    let unit = ideal(&r, &["1+x", "y"]);
    assert_eq!(mora::local_multiplicity(&unit, &b()).unwrap(), Multiplicity::Finite(0));
    let common = ideal(&r, &["x*y", "x^2"]);
    assert_eq!(mora::local_multiplicity(&common, &b()).unwrap(), Multiplicity::Infinite);
}

#[test]
fn ideal_power_examples() {
    let r = r2();
    let sq = ideal_power(&ideal(&r, &["x", "y"]), 2);
    assert_eq!(sq, ideal(&r, &["x^2", "x*y", "y^2"]));
    let i = ideal(&r, &["x^2+y", "x*y"]);
    assert_eq!(ideal_power(&i, 1), i);
    assert_eq!(ideal_power(&ideal(&r, &["x^2", "y^2"]), 2), ideal(&r, &["x^4", "x^2*y^2", "y^4"]));
}

#[test]
fn dimension_examples() {
    let r = r2();
    assert_eq!(dimension(&ideal(&r, &["x"]), &b()).unwrap(), 1);
    assert_eq!(dimension(&ideal(&r, &["x", "y"]), &b()).unwrap(), 0);
    assert_eq!(dimension(&ideal(&r, &["1"]), &b()).unwrap(), -1);
    assert_eq!(dimension(&ideal(&r3(), &["x*y", "x*z"]), &b()).unwrap(), 2);
}

#[test]
fn saturation_and_intersection() {
    let r = r2();
    let sat = saturate(&ideal(&r, &["x*y", "x^2"]), &p(&r, "y"), &b()).unwrap();
    assert_eq!(canonical(&sat, &b()).unwrap(), ideal(&r, &["x"]));
    let inter = intersect(&ideal(&r, &["x"]), &ideal(&r, &["y"]), &b()).unwrap();
    assert_eq!(canonical(&inter, &b()).unwrap(), ideal(&r, &["x*y"]));
}

fn radical_of(r: &Ring, gens: &[&str]) -> RadicalOutcome {
    attempt_radical(&ideal(r, gens), &b()).unwrap()
}

#[test]
fn radical_examples() {
    let r = r2();
    let o = radical_of(&r, &["x^2"]);
    assert_eq!(o.status, RadicalStatus::Exact);
    assert_eq!(o.radical, ideal(&r, &["x"]));
    assert_eq!(o.certificate.exponents(), vec![2]);

    let o = radical_of(&r, &["x^2", "y^2"]);
    assert_eq!(o.status, RadicalStatus::Exact);
    assert_eq!(canonical(&o.radical, &b()).unwrap(), ideal(&r, &["y", "x"]));
    assert_eq!(o.certificate.exponents(), vec![2, 2]);

    // oracle: squarefree part of the single generator
    let o = radical_of(&r, &["x^2*(x-y^2)^2"]);
    assert_eq!(o.status, RadicalStatus::Exact);
    let expected = crate::poly::squarefree_part(&p(&r, "x^2*(x-y^2)^2")).unwrap();
    assert_eq!(o.radical.gens(), std::slice::from_ref(&expected));
    assert_eq!(expected, p(&r, "x*(x-y^2)").monic());
}

#[test]
fn radical_positive_dimensional() {
    let r = r3();
    let o = radical_of(&r, &["x*(x-y^2)", "x*(x-2*y^2)"]);
    assert_eq!(o.status, RadicalStatus::Exact);
    assert_eq!(canonical(&o.radical, &b()).unwrap(), ideal(&r, &["x"]));
    assert_eq!(o.certificate.exponents(), vec![2]);

    // a line union an embedded point: (x^2, x*y) has radical (x)
    let o = radical_of(&r2(), &["x^2", "x*y"]);
    assert_eq!(canonical(&o.radical, &b()).unwrap(), ideal(&r2(), &["x"]));

    // twisted cubic squared stays a prime's square: radical is the prime
    let prime = ideal(&r, &["y-x^2", "z-x^3"]);
    let sq = ideal_power(&prime, 2);
    let o = attempt_radical(&sq, &b()).unwrap();
    assert_eq!(o.status, RadicalStatus::Exact);
    assert_eq!(canonical(&o.radical, &b()).unwrap(), canonical(&prime, &b()).unwrap());
}

#[test]
fn exponent_search_finds_least_power() {
    let r = r2();
    let gb = groebner(&ideal(&r, &["x^2", "y^2"]), &MonomialOrder::degrevlex(), &b()).unwrap();
    assert_eq!(nullstellensatz_exponent(&p(&r, "x+y"), &gb, 64), Some(3));
    let gb5 = groebner(&ideal(&r, &["x^5"]), &MonomialOrder::degrevlex(), &b()).unwrap();
    assert_eq!(nullstellensatz_exponent(&p(&r, "x"), &gb5, 64), Some(5));
    assert_eq!(nullstellensatz_exponent(&p(&r, "x"), &gb5, 4), None);
    assert_eq!(nullstellensatz_exponent(&p(&r, "y"), &gb5, 64), None);
}
