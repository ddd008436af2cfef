use leafmult::verify::{run_suite, SUITES};

#[test]
fn every_suite_passes_on_seed_zero() {
    for s in SUITES {
        let r = run_suite(s, 0, 40).unwrap();
        println!("{} {} cases {} ms", s, r.cases, r.millis);
        assert!(r.passed(), "{:?}", r.failures);
    }
}

#[test]
fn zero_cases_is_a_vacuous_pass() {
    for s in SUITES {
        assert!(run_suite(s, 7, 0).unwrap().passed());
    }
    assert!(run_suite("no-such-suite", 0, 1).is_err());
}
