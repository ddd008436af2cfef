use std::sync::Arc;

use leafmult::foliation::{FoliationContext, VectorField};
use leafmult::germ::{leaf_ring, Jet2, LocalIdeal};
use leafmult::ideal::{membership, Budget, IdealPresentation};
use leafmult::pairs::{isolated_locus_reduction, make_pair, nonisolated_bound, poisson_extension, FinalStatus, PairConfig, PairSnapshot};
use leafmult::poly::{q, Monomial, Polynomial, Ring};
use leafmult::Error;
use proptest::prelude::*;

fn ring() -> Ring {
    Ring::new(["x", "y", "z"])
}

fn flat() -> Arc<FoliationContext> {
    let r = ring();
    FoliationContext::new(VectorField::parse(&r, &["1", "0", "0"]).unwrap(), VectorField::parse(&r, &["0", "1", "0"]).unwrap(), vec![q(0), q(0), q(0)]).unwrap()
}

// low-degree polynomials in x, y through the origin
fn arb_germ() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 1..4).prop_map(|ts| {
        let p = Polynomial::from_terms(&ring(), ts.into_iter().filter(|(a, b, _)| a + b > 0).map(|(a, b, c)| (Monomial::new(vec![a, b, 0]), q(c))));
        if p.is_zero() {
            Polynomial::var(&ring(), 1)
        } else {
            p
        }
    })
}

fn arb_common() -> impl Strategy<Value = Polynomial> {
    prop::sample::select(vec!["1", "x", "x^2", "y-x^2", "x*y", "y^2-x^3"]).prop_map(|s| Polynomial::parse(&ring(), s).unwrap())
}

fn parse_all(r: &Ring, gens: &[String]) -> Vec<Polynomial> {
    gens.iter().map(|s| Polynomial::parse(r, s).unwrap()).collect()
}

/// Each generator of `a` lies in the ideal of `b`, globally and locally.
fn contained(a: &PairSnapshot, b: &PairSnapshot) -> Result<(), String> {
    let big = IdealPresentation::new(&ring(), parse_all(&ring(), &b.global)).unwrap();
    for g in parse_all(&ring(), &a.global) {
        if !membership(&g, &big, &Budget::default()).unwrap() {
            return Err(format!("{} dropped from the global ideal", g));
        }
    }
    let n = a.order.min(b.order);
    let local: Vec<Jet2> = parse_all(leaf_ring(), &b.local).iter().map(|p| Jet2::from_polynomial(p, n + 1).without_source()).collect();
    let li = LocalIdeal::new(&local, n, n).unwrap();
    if !li.is_certified() {
        return Ok(());
    }
    for p in parse_all(leaf_ring(), &a.local) {
        if !li.contains(&Jet2::from_polynomial(&p, n)).unwrap().member {
            return Err(format!("{} dropped from the local ideal", p));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    // every chain the pipeline produces only grows, and a finished bound is sound
    #[test]
    fn pipeline_chains_grow_and_bounds_hold(c in arb_common(), a in arb_germ(), b in arb_germ()) {
        let f = &c * &a;
        let g = &c * &b;
        match nonisolated_bound(&f, &g, &flat(), &PairConfig::default()) {
            Ok(r) => {
                let mut prev = &r.initial;
                for st in &r.ledger.steps {
                    prop_assert!(contained(prev, &st.after).is_ok(), "{:?}", contained(prev, &st.after));
                    prop_assert_ne!(st.checked, Some(false));
                    prev = &st.after;
                }
                if r.ledger.status == FinalStatus::PointExcluded {
                    prop_assert!(r.bound.is_some());
                    prop_assert_ne!(r.is_sound(), Some(false), "direct {:?} bound {:?}", r.direct, r.bound);
                }
            }
            Err(e) => prop_assert!(!matches!(e, Error::Certificate(_) | Error::Containment { .. }), "{}", e),
        }
    }

    // the isolated loop keeps the pair valid at each stage
    #[test]
    fn isolated_loop_preserves_pairs(a in arb_germ(), b in arb_germ()) {
        let ctx = flat();
        let cfg = PairConfig::with_order(8);
        let local = vec![ctx.leaf_jet(&a, cfg.order).unwrap(), ctx.leaf_jet(&b, cfg.order).unwrap()];
        let s = make_pair(IdealPresentation::new(&ring(), vec![a, b]).unwrap(), local, &ctx, &cfg).unwrap();
        let before = PairSnapshot::of(&s);
        if let Ok((t, steps, _)) = isolated_locus_reduction(s, &cfg) {
            prop_assert!(t.verify().is_ok());
            let mut prev = &before;
            for st in &steps {
                prop_assert!(contained(prev, &st.after).is_ok(), "{:?}", contained(prev, &st.after));
                prev = &st.after;
            }
        }
    }

    // mult K <= mult <K, {f, g}> + 1 for f, g in K
    #[test]
    fn poisson_step_loses_at_most_one(a in arb_germ(), b in arb_germ(), u in -2i64..3, v in -2i64..3) {
        let ctx = flat();
        let cfg = PairConfig::with_order(8);
        let local = vec![ctx.leaf_jet(&a, cfg.order).unwrap(), ctx.leaf_jet(&b, cfg.order).unwrap()];
        let s = make_pair(IdealPresentation::new(&ring(), vec![a.clone(), b.clone()]).unwrap(), local, &ctx, &cfg).unwrap();
        let f = &a + &(&b * &Polynomial::constant(&ring(), q(u)));
        let g = &(&a * &Polynomial::constant(&ring(), q(v))) + &(&b * &a);
        let (t, st) = poisson_extension(&s, &f, &g, &cfg).unwrap();
        prop_assert_eq!((st.transfer.a, st.transfer.b), (1, 1));
        prop_assert!(t.verify().is_ok());
        if let (Some(m), Some(n)) = (s.local_multiplicity(), t.local_multiplicity()) {
            prop_assert!(m <= n + 1, "{} > {} + 1", m, n);
        }
    }
}
