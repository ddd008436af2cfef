use leafmult::ideal::{
    attempt_radical, groebner, ideal_power, leading_term_ideal, membership, multiplicity_zero_dim, radical_membership, Budget, IdealPresentation, Multiplicity,
    RadicalStatus,
};
use leafmult::poly::{q, Monomial, MonomialOrder, Polynomial, Ring};
use proptest::prelude::*;

fn ring(m: usize) -> Ring {
    Ring::new(["x", "y", "z"].iter().take(m).cloned())
}

fn small_poly(r: &Ring, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    Polynomial::from_terms(r, terms.iter().map(|(e, c)| (Monomial::new(e[..r.len()].to_vec()), q(*c))))
}

/// Zero-dimensional ideal: `x_i^{a_i} + (lower degree terms)` for each
/// variable, plus one arbitrary extra generator.
fn zero_dim_ideal(m: usize) -> impl Strategy<Value = IdealPresentation> {
    let lower = prop::collection::vec((prop::collection::vec(0u32..2, 3), -2i64..3), 0..3);
    (prop::collection::vec((1u32..4, lower), m), prop::collection::vec((prop::collection::vec(0u32..3, 3), -2i64..3), 0..3)).prop_map(move |(heads, extra)| {
        let r = ring(m);
        let mut gens = Vec::new();
        for (i, (a, low)) in heads.into_iter().enumerate() {
            let mut e = vec![0; m];
            e[i] = a;
            let mut g = Polynomial::monomial(&r, Monomial::new(e), q(1));
            let low: Vec<_> = low.into_iter().filter(|(e, _)| e[..m].iter().sum::<u32>() < a).collect();
            g = &g + &small_poly(&r, &low);
            gens.push(g);
        }
        gens.push(small_poly(&r, &extra));
        IdealPresentation::new(&r, gens).unwrap()
    })
}

fn b() -> Budget {
    Budget::default()
}

fn mult(i: &IdealPresentation, o: &MonomialOrder) -> u64 {
    match multiplicity_zero_dim(i, o, &b()).unwrap() {
        Multiplicity::Finite(n) => n,
        Multiplicity::Infinite => panic!("expected a finite multiplicity"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn combinations_reduce_to_zero(i in zero_dim_ideal(2), coeffs in prop::collection::vec((prop::collection::vec(0u32..2, 3), -3i64..4), 0..4)) {
        let r = i.ring().clone();
        let gb = groebner(&i, &MonomialOrder::degrevlex(), &b()).unwrap();
        let mut f = Polynomial::zero(&r);
        for (k, g) in i.gens().iter().enumerate() {
            let a = small_poly(&r, &coeffs.iter().skip(k).take(1).cloned().collect::<Vec<_>>());
            f = &f + &(&a * g);
        }
        prop_assert!(gb.normal_form(&f).is_zero());
        // adding a standard monomial leaves exactly that remainder
        let lms = gb.leading_monomials();
        if !gb.is_unit() {
            let stdm = Monomial::one(r.len());
            prop_assume!(!lms.iter().any(|l| l.divides(&stdm)));
            let g = &f + &Polynomial::monomial(&r, stdm.clone(), q(5));
            prop_assert_eq!(gb.normal_form(&g), Polynomial::monomial(&r, stdm, q(5)));
        }
    }

    #[test]
    fn multiplicity_equals_leading_term_multiplicity(i in zero_dim_ideal(3)) {
        for o in [MonomialOrder::degrevlex(), MonomialOrder::lex(), MonomialOrder::lex().with_perm(vec![2, 0, 1])] {
            let lt = leading_term_ideal(&i, &o, &b()).unwrap();
            prop_assert_eq!(mult(&i, &o), mult(&lt, &o));
        }
    }

    #[test]
    fn power_of_leading_terms_lies_in_leading_terms_of_power(i in zero_dim_ideal(2), n in 1u32..4) {
        let o = MonomialOrder::degrevlex();
        let lt_pow = ideal_power(&leading_term_ideal(&i, &o, &b()).unwrap(), n);
        let lt_of_pow = leading_term_ideal(&ideal_power(&i, n), &o, &b()).unwrap();
        for g in lt_pow.gens() {
            prop_assert!(membership(g, &lt_of_pow, &b()).unwrap());
        }
    }

    #[test]
    fn power_lemma(m in 1usize..4, seed_ideal in zero_dim_ideal(3), n in 1u32..4, picks in prop::collection::vec(0usize..8, 0..3)) {
        let r = ring(m);
        let gens: Vec<Polynomial> = seed_ideal.gens().iter().take(m).map(|g| {
            let images: Vec<Polynomial> = (0..3).map(|i| if i < m { Polynomial::var(&r, i) } else { Polynomial::zero(&r) }).collect();
            g.compose(&images).unwrap()
        }).collect();
        let k = IdealPresentation::new(&r, gens).unwrap();
        let kn = ideal_power(&k, n);
        // K' = K^n plus some elements of K
        let extra: Vec<Polynomial> = picks.iter().map(|&j| {
            let g = &k.gens()[j % k.gens().len()];
            let xs = Polynomial::var(&r, j % m);
            if j % 2 == 0 { g.clone() } else { &xs * g }
        }).collect();
        let kp = kn.with(extra);
        let o = MonomialOrder::degrevlex();
        prop_assert!(mult(&kp, &o) <= (n as u64).pow(m as u32) * mult(&k, &o));
    }

    #[test]
    fn exact_radical_agrees_with_radical_membership(
        base in prop::collection::vec((prop::collection::vec(0u32..3, 3), -2i64..3), 1..3),
        e in 1u32..3,
        probes in prop::collection::vec(prop::collection::vec((prop::collection::vec(0u32..2, 3), -2i64..3), 1..3), 3),
    ) {
        let r = ring(2);
        let f = small_poly(&r, &base);
        prop_assume!(!f.is_constant());
        let i = IdealPresentation::new(&r, [f.pow(e), (&f * &Polynomial::var(&r, 0)).pow(2)]).unwrap();
        let out = attempt_radical(&i, &b()).unwrap();
        for g in i.gens() {
            prop_assert!(membership(g, &out.radical, &b()).unwrap());
        }
        for c in &out.certificate.entries {
            let gb = groebner(&i, &MonomialOrder::degrevlex(), &b()).unwrap();
            prop_assert!(gb.contains(&c.generator.pow(c.exponent)));
        }
        if out.status == RadicalStatus::Exact {
            for pr in &probes {
                let g = small_poly(&r, pr);
                prop_assert_eq!(radical_membership(&g, &i, &b()).unwrap(), membership(&g, &out.radical, &b()).unwrap());
            }
        }
    }
}
