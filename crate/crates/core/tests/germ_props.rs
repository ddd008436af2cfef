use leafmult::germ::{factor_multiplicities, leaf_ring, local_multiplicity, newton_puiseux, split_common, Jet2, PuiseuxConfig};
use leafmult::ideal::{mora, Budget, IdealPresentation, Multiplicity};
use leafmult::poly::{q, squarefree_part, Monomial, Polynomial};
use proptest::prelude::*;

const N: u32 = 14;

fn cfg() -> PuiseuxConfig {
    PuiseuxConfig { shift: None, order: N, max_order: 40 }
}

fn jet(p: &Polynomial) -> Jet2 {
    Jet2::from_polynomial(p, N)
}

// polynomials vanishing at the origin, low degree
fn arb_germ() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 1..4).prop_map(|ts| {
        let mut p = Polynomial::from_terms(leaf_ring(), ts.into_iter().filter(|(a, b, _)| a + b > 0).map(|(a, b, c)| (Monomial::new(vec![a, b]), q(c))));
        if p.is_zero() {
            p = Polynomial::var(leaf_ring(), 0);
        }
        p
    })
}

fn oracle(a: &Polynomial, b: &Polynomial) -> Option<u64> {
    let i = IdealPresentation::new(leaf_ring(), vec![a.clone(), b.clone()]).ok()?;
    mora::local_multiplicity(&i, &Budget::default()).ok()?.finite()
}

fn mult(a: &Polynomial, b: &Polynomial) -> Multiplicity {
    local_multiplicity(&jet(a), &jet(b), &cfg()).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn multiplicity_is_symmetric_and_matches_oracle(a in arb_germ(), b in arb_germ()) {
        let m = mult(&a, &b);
        prop_assert_eq!(m, mult(&b, &a));
        if let Multiplicity::Finite(v) = m {
            prop_assert_eq!(Some(v), oracle(&a, &b));
        }
    }

    #[test]
    fn multiplicity_is_additive(f in arb_germ(), g1 in arb_germ(), g2 in arb_germ()) {
        let a = mult(&f, &g1);
        let b = mult(&f, &g2);
        if let (Multiplicity::Finite(x), Multiplicity::Finite(y)) = (a, b) {
            prop_assert_eq!(mult(&f, &(&g1 * &g2)), Multiplicity::Finite(x + y));
        }
    }

    #[test]
    fn puiseux_reconstructs_the_germ(a in arb_germ(), b in arb_germ(), k in 1u32..3) {
        let p = &a.pow(k) * &b;
        let f = jet(&p);
        let set = newton_puiseux(&f, &cfg()).unwrap();
        prop_assert_eq!(set.local_degree(), set.mu());
        let w = set.reconstruct(N).unwrap();
        let u = f.divide(&w).unwrap();
        prop_assert!(u.is_unit());
        for c in set.cycles() {
            prop_assert!(c.vanishes(&f).unwrap());
        }
    }

    #[test]
    fn split_contract(c in arb_germ(), a in arb_germ(), b in arb_germ()) {
        let fl = jet(&(&c * &a));
        let gl = jet(&(&c * &b));
        let s = split_common(&fl, &gl, &cfg()).unwrap();
        prop_assert_eq!(s.h_f.mul(&s.f), fl.truncate(s.f.order()));
        prop_assert_eq!(s.h_g.mul(&s.g), gl.truncate(s.g.order()));
        if !s.f.is_unit() && !s.g.is_unit() {
            prop_assert!(mult(s.f.exact_polynomial().unwrap(), s.g.exact_polynomial().unwrap()).finite().is_some());
        }
        let sf = |j: &Jet2| squarefree_part(j.exact_polynomial().unwrap()).unwrap();
        if !s.h_f.is_unit() {
            let (x, y) = (sf(&s.h_f), sf(&s.h_g));
            prop_assert!(jet(&x).divide(&jet(&y)).unwrap().is_unit());
        }
    }

    #[test]
    fn factor_contract(a in arb_germ(), b in arb_germ(), i in 1u32..3, j in 1u32..3) {
        let h = jet(&(&a.pow(i) * &b.pow(j)));
        let d = factor_multiplicities(&h, &cfg()).unwrap();
        prop_assert!(d.k <= d.big_k);
        prop_assert!(d.reduced.pow(d.big_k).divisible_by(&h));
        let red = d.reduced.exact_polynomial().unwrap();
        prop_assert!(jet(&squarefree_part(red).unwrap()).divide(&d.reduced).unwrap().is_unit());
    }
}

#[test]
fn jet_arithmetic_examples() {
    let j = |s: &str, n| Jet2::parse(s, n).unwrap();
    assert_eq!(j("t1", 4).mul(&j("t2", 4)), j("t1*t2", 4));
    assert_eq!(j("1+t1", 2).mul(&j("1-t1", 2)), j("1-t1^2", 2));
    assert_eq!(j("t1^2+3*t2", 5).add(&Jet2::zero(5)), j("t1^2+3*t2", 5));
}
