//! The verification suites pass on their lattice and notice an injected
//! error in the structure coefficients.

use opoly::verify::{run_verify, VerifyOptions, SUITES};

#[test]
fn all_suites_pass() {
    let report = run_verify(&VerifyOptions::default()).unwrap();
    assert_eq!(report.suites.len(), SUITES.len());
    for s in &report.suites {
        assert!(s.passed, "{}: {:?}", s.name, s.examples);
        assert!(s.checks > 1000, "{} ran only {} checks", s.name, s.checks);
    }
    assert!(report.passed);
}

#[test]
fn perturbed_b_fails_the_ladder_suites() {
    let opts = VerifyOptions {
        suites: Some(vec!["lemma22".into(), "electrostatics".into()]),
        b_perturbation: 1e-3,
    };
    let report = run_verify(&opts).unwrap();
    assert!(!report.passed);
    for s in &report.suites {
        assert!(!s.passed, "{} did not notice the perturbation", s.name);
        assert!(!s.examples.is_empty());
    }
}
