use super::*;
use crate::foliation::VectorField;
use crate::ideal::{membership, mora};
use crate::poly::{q, Polynomial, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring() -> Ring {
    Ring::new(["x", "y", "z"])
}

fn flat() -> Arc<FoliationContext> {
    let r = ring();
    FoliationContext::new(VectorField::parse(&r, &["1", "0", "0"]).unwrap(), VectorField::parse(&r, &["0", "1", "0"]).unwrap(), vec![q(0), q(0), q(0)]).unwrap()
}

fn p(s: &str) -> Polynomial {
    Polynomial::parse(&ring(), s).unwrap()
}

fn ideal(gens: &[&str]) -> IdealPresentation {
    IdealPresentation::parse(&ring(), gens).unwrap()
}

fn j(s: &str) -> Jet2 {
    Jet2::parse(s, 16).unwrap()
}

fn cfg() -> PairConfig {
    PairConfig::with_order(8)
}

fn pair(gens: &[&str], local: &[&str]) -> NoetherianPairState {
    make_pair(ideal(gens), local.iter().map(|s| j(s)).collect(), &flat(), &cfg()).unwrap()
}

fn mora_mult(gens: &[&str]) -> u64 {
    let r = crate::germ::leaf_ring();
    let i = IdealPresentation::new(r, gens.iter().map(|s| Polynomial::parse(r, s).unwrap())).unwrap();
    mora::local_multiplicity(&i, &Budget::default()).unwrap().finite().unwrap()
}

#[test]
fn pair_validation() {
    let s = pair(&["x*(x-y^2)", "x*(x-2*y^2)"], &["t1*(t1-t2^2)", "t1*(t1-2*t2^2)"]);
    assert_eq!(s.ideal().gens().len(), 2);
    let err = make_pair(ideal(&["x"]), vec![j("t1^2")], &flat(), &cfg()).unwrap_err();
    assert!(matches!(err, Error::Containment { ref generator, .. } if generator == "x"), "{}", err);
    let z = make_pair(IdealPresentation::zero(&ring()), vec![j("t1^3")], &flat(), &cfg()).unwrap();
    assert!(!z.point_excluded().unwrap());
}

#[test]
fn radical_transfers() {
    for (gens, local, expect) in
        [(&["x^2"][..], &["t1^2", "t2^3"][..], 4), (&["x^2", "y^2"][..], &["t1^2", "t2^2"][..], 9), (&["x"][..], &["t1", "t2^2"][..], 1)]
    {
        let s = pair(gens, local);
        let (t, st) = radical_extension(&s, &cfg()).unwrap();
        assert_eq!(st.kind, StepKind::Radical);
        assert_eq!(st.transfer, Transfer { a: expect, b: 0 });
        // oracle: each radical generator to its exponent lies in I, and not one power lower
        if let Evidence::Radical { exponents, .. } = &st.evidence {
            for e in exponents {
                let g = p(&e.generator);
                assert!(membership(&g.pow(e.exponent), s.ideal(), &Budget::default()).unwrap());
                if e.exponent > 1 {
                    assert!(!membership(&g.pow(e.exponent - 1), s.ideal(), &Budget::default()).unwrap());
                }
            }
        }
        assert_eq!(t.radical_status(), Some(RadicalStatus::Exact));
        assert_eq!(st.checked, Some(true));
    }
}

#[test]
fn poisson_examples() {
    let s = pair(&["x", "y"], &["t1", "t2"]);
    let (t, st) = poisson_extension(&s, &p("x"), &p("y"), &cfg()).unwrap();
    assert_eq!(st.transfer, Transfer { a: 1, b: 1 });
    assert!(t.point_excluded().unwrap());
    assert_eq!(t.local_multiplicity(), Some(0));

    let (t, st) = poisson_extension(&s, &p("x"), &p("x"), &cfg()).unwrap();
    assert_eq!(t.ideal(), s.ideal());
    assert_eq!(st.transfer, Transfer { a: 1, b: 1 });

    let s = pair(&["x^2", "y^2"], &["t1^2", "t2^2"]);
    let (t, st) = poisson_extension(&s, &p("x^2"), &p("y^2"), &cfg()).unwrap();
    assert!(matches!(&st.evidence, Evidence::Poisson { bracket, .. } if p(bracket) == p("4*x*y")));
    assert_eq!(s.local_multiplicity(), Some(mora_mult(&["t1^2", "t2^2"])));
    assert_eq!(t.local_multiplicity(), Some(mora_mult(&["t1^2", "t2^2", "4*t1*t2"])));
    assert_eq!((s.local_multiplicity(), t.local_multiplicity()), (Some(4), Some(3)));

    assert!(poisson_extension(&s, &p("x"), &p("y^2"), &cfg()).is_err());
}

#[test]
fn jacobian_on_a_line() {
    let s = pair(&["x"], &["t1-t2^2", "t1"]);
    let (s, _) = radical_extension(&s, &cfg()).unwrap();
    let (t, st) = jacobian_extension(&s, &p("x*(x-y^2)"), &cfg()).unwrap();
    let Evidence::Jacobian { k, big_k, formula_factor, certified_exponent, derivatives, h, strict_progress, .. } = &st.evidence else { panic!() };
    assert_eq!((*k, *big_k, *formula_factor), (1, 1, 2));
    assert_eq!(crate::germ::leaf_ring().len(), 2);
    assert_eq!(Polynomial::parse(crate::germ::leaf_ring(), h).unwrap(), Polynomial::parse(crate::germ::leaf_ring(), "t1").unwrap());
    let got: Vec<Polynomial> = derivatives.iter().map(|d| p(d)).collect();
    assert_eq!(got, vec![p("-2*x*y"), p("2*x-y^2")]);
    // t1 already lies in the local ideal: mult does not change when it is added
    assert_eq!(mora_mult(&["t1-t2^2", "t1"]), mora_mult(&["t1-t2^2", "t1", "t1"]));
    assert_eq!(*certified_exponent, Some(1));
    assert_eq!(st.transfer.a, 1);
    assert!(strict_progress);
    t.verify().unwrap();

    let r = jacobian_extension(&pair(&["x"], &["t1"]), &p("x"), &cfg());
    assert!(matches!(r, Err(Error::Hypothesis(_))));
}

#[test]
fn jacobian_formula_factor_for_a_double_branch() {
    let s = pair(&["x"], &["t1", "t2^3"]);
    let (s, _) = radical_extension(&s, &cfg()).unwrap();
    let (_, st) = jacobian_extension(&s, &p("x^2*(x-y^3)"), &cfg()).unwrap();
    let Evidence::Jacobian { k, big_k, formula_factor, derivatives, .. } = &st.evidence else { panic!() };
    assert_eq!((*k, *big_k, *formula_factor), (2, 2, 8));
    assert_eq!(derivatives.len(), 3);
    assert!(st.transfer.a <= 8);
}

#[test]
fn transverse_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let s = pair(&["x", "y"], &["t1", "t2"]);
    assert!(find_transverse_pair(&s, &cfg(), &mut rng).unwrap().is_some());
    let s = pair(&["x"], &["t1"]);
    assert!(find_transverse_pair(&s, &cfg(), &mut rng).unwrap().is_none());

    let s = pair(&["x-y^2", "y-x^2"], &["t1-t2^2", "t2-t1^2"]);
    let (f, g) = find_transverse_pair(&s, &cfg(), &mut rng).unwrap().unwrap();
    let br = flat().poisson(&f, &g).unwrap();
    // the zero set is the two lines over (0,0) and (1,1)
    let at = |a: i64| br.evaluate(&[q(a), q(a), q(0)]).unwrap();
    assert!(!at(0).is_zero() || !at(1).is_zero());
    assert!(membership(&f, s.ideal(), &Budget::default()).unwrap());
    assert!(membership(&g, s.ideal(), &Budget::default()).unwrap());
}

#[test]
fn isolated_reduction_examples() {
    let (t, steps, out) = isolated_locus_reduction(pair(&["x", "y"], &["t1", "t2"]), &cfg()).unwrap();
    assert_eq!(out, LoopOutcome::PointExcluded);
    assert!(steps.len() <= 2);
    assert!(t.point_excluded().unwrap());
    assert_eq!(compose(&steps, 0), 1);

    let (_, steps, out) = isolated_locus_reduction(pair(&["x"], &["t1"]), &cfg()).unwrap();
    assert_eq!(out, LoopOutcome::Stable);
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0].transfer, Transfer { a: 1, b: 0 });

    let (t, steps, out) = isolated_locus_reduction(pair(&["x^2"], &["t1^2"]), &cfg()).unwrap();
    assert_eq!(out, LoopOutcome::Stable);
    assert_eq!(steps.len(), 1);
    assert_eq!(t.ideal(), &ideal(&["x"]));
}

#[test]
fn worked_pipeline() {
    let r = nonisolated_bound(&p("x*(x-y^2)"), &p("x*(x-2*y^2)"), &flat(), &PairConfig::default()).unwrap();
    assert_eq!(r.ledger.status, FinalStatus::PointExcluded);
    assert_eq!(r.direct, Some(mora_mult(&["t1-t2^2", "t1-2*t2^2"])));
    assert_eq!(r.direct, Some(2));
    assert!(r.bound.unwrap() >= 2);
    assert_eq!(r.is_sound(), Some(true));
    assert_eq!(r.ledger.count(StepKind::Jacobian), 1);
    let jac = r.ledger.steps.iter().find(|s| s.kind == StepKind::Jacobian).unwrap();
    assert!(matches!(&jac.evidence, Evidence::Jacobian { h, .. } if h == "t1"));
    for st in &r.ledger.steps {
        assert_ne!(st.checked, Some(false));
    }
}

#[test]
fn pipeline_degenerate_inputs() {
    let err = nonisolated_bound(&p("x*(x-y^2)"), &p("x*(x-y^2)"), &flat(), &PairConfig::default()).unwrap_err();
    assert!(err.to_string().contains("common branch set equals germ"));

    let r = nonisolated_bound(&p("x"), &p("y"), &flat(), &PairConfig::default()).unwrap();
    assert_eq!(r.ledger.count(StepKind::Jacobian), 0);
    assert_eq!((r.bound, r.direct), (Some(1), Some(1)));
}
