//! Recurrences, evaluation, norms and kernels of the classical families,
//! against closed forms and Gauss-rule integrals computed in `common`.

mod common;

use opoly::quadrature::GaussRule;
use opoly::{
    classical_recurrence, kernel_diag, kernel_value, ratio_at, squared_norm, ClassicalFamily,
    OpolyError, PolyEvaluator,
};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = ClassicalFamily> {
    prop_oneof![
        (-0.95..4.0f64, -0.95..4.0f64).prop_map(|(a, b)| ClassicalFamily::jacobi(a, b).unwrap()),
        (-0.95..4.0f64).prop_map(|a| ClassicalFamily::laguerre(a).unwrap()),
        Just(ClassicalFamily::Hermite),
    ]
}

/// Families whose support lies in `[-1, ∞)`.
fn bounded_below() -> impl Strategy<Value = ClassicalFamily> {
    prop_oneof![
        (-0.95..4.0f64, -0.95..4.0f64).prop_map(|(a, b)| ClassicalFamily::jacobi(a, b).unwrap()),
        (-0.95..4.0f64).prop_map(|a| ClassicalFamily::laguerre(a).unwrap()),
    ]
}

#[test]
fn closed_form_recurrences_match() {
    for fam in [
        ClassicalFamily::jacobi(-0.5, -0.5).unwrap(),
        ClassicalFamily::jacobi(0.0, 0.0).unwrap(),
        ClassicalFamily::jacobi(2.0, -0.5).unwrap(),
        ClassicalFamily::laguerre(-0.5).unwrap(),
        ClassicalFamily::laguerre(3.0).unwrap(),
        ClassicalFamily::Hermite,
    ] {
        let lib = classical_recurrence(&fam, 30).unwrap();
        let want = common::classical(&fam, 30);
        for k in 0..30 {
            assert!(common::rel(lib.beta(k), want.b[k]) < 1e-13 || (lib.beta(k) - want.b[k]).abs() < 1e-15, "{fam:?} beta_{k}");
        }
        for k in 1..30 {
            assert!(common::rel(lib.gamma(k), want.g[k]) < 1e-13, "{fam:?} gamma_{k}");
        }
        assert!(common::rel(lib.total_mass(), want.g[0]) < 1e-13, "{fam:?} total mass");
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(matches!(ClassicalFamily::jacobi(-1.0, 0.0), Err(OpolyError::InvalidMeasure(_))));
    assert!(matches!(ClassicalFamily::jacobi(0.0, f64::NAN), Err(OpolyError::InvalidMeasure(_))));
    assert!(matches!(ClassicalFamily::laguerre(-1.5), Err(OpolyError::InvalidMeasure(_))));
}

#[test]
fn evaluating_past_the_table_is_a_length_error() {
    let c = classical_recurrence(&ClassicalFamily::laguerre(0.0).unwrap(), 5).unwrap();
    let ev = PolyEvaluator::new(&c);
    assert!(matches!(ev.value(50, 1.0), Err(OpolyError::Length { .. })));
}

#[test]
fn library_gauss_rule_matches_reference_rule() {
    let fam = ClassicalFamily::jacobi(0.5, -0.5).unwrap();
    let c = classical_recurrence(&fam, 40).unwrap();
    let lib = GaussRule::new(&c, 20).unwrap();
    let want = common::gauss(&common::classical(&fam, 21), 20);
    let integrand = |x: f64| x.powi(10) - 3.0 * x.powi(7) + 0.5;
    let expect: f64 = want.x.iter().zip(&want.w).map(|(x, w)| w * integrand(*x)).sum();
    assert!(common::rel(lib.integrate(integrand), expect) < 1e-13);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monic_polynomials_are_orthogonal(fam in family(), m in 0usize..8, n in 0usize..8) {
        prop_assume!(m != n);
        let c = classical_recurrence(&fam, 12).unwrap();
        let ev = PolyEvaluator::new(&c);
        let rule = common::rule(&fam);
        let ip: f64 = rule.x.iter().zip(&rule.w)
            .map(|(&x, &w)| w * ev.value(m, x).unwrap() * ev.value(n, x).unwrap())
            .sum();
        let norm = (squared_norm(&c, m).unwrap() * squared_norm(&c, n).unwrap()).sqrt();
        prop_assert!(ip.abs() < 1e-10 * norm, "<p_{m}, p_{n}> = {ip:e}");
    }

    #[test]
    fn squared_norm_matches_quadrature(fam in family(), n in 0usize..10) {
        let c = classical_recurrence(&fam, 12).unwrap();
        let ev = PolyEvaluator::new(&c);
        let rule = common::rule(&fam);
        let q: f64 = rule.x.iter().zip(&rule.w).map(|(&x, &w)| w * ev.value(n, x).unwrap().powi(2)).sum();
        prop_assert!(common::rel(squared_norm(&c, n).unwrap(), q) < 1e-10);
    }

    #[test]
    fn derivatives_match_reference(fam in family(), n in 0usize..15, x in -3.0..3.0f64) {
        let c = classical_recurrence(&fam, 16).unwrap();
        let j = PolyEvaluator::new(&c).eval2(n, x).unwrap();
        let (v, d, d2) = common::jet(&common::classical(&fam, 16), n, x);
        let scale = 1.0 + v.abs() + d.abs() + d2.abs();
        prop_assert!((j.v - v).abs() < 1e-11 * scale);
        prop_assert!((j.d - d).abs() < 1e-11 * scale);
        prop_assert!((j.d2 - d2).abs() < 1e-11 * scale);
    }

    #[test]
    fn christoffel_darboux(fam in family(), n in 1usize..15, x in -0.9..0.9f64, y in -0.9..0.9f64) {
        prop_assume!((x - y).abs() > 1e-3);
        let c = classical_recurrence(&fam, 18).unwrap();
        let ev = PolyEvaluator::new(&c);
        let direct: f64 = (0..=n)
            .map(|k| ev.value(k, x).unwrap() * ev.value(k, y).unwrap() / squared_norm(&c, k).unwrap())
            .sum();
        let kern = kernel_value(&c, y, x, n).unwrap();
        let scale: f64 = (0..=n)
            .map(|k| (ev.value(k, x).unwrap() * ev.value(k, y).unwrap() / squared_norm(&c, k).unwrap()).abs())
            .sum();
        prop_assert!((kern - direct).abs() < 1e-10 * scale);
    }

    #[test]
    fn kernel_diagonal_grows(fam in family(), a in -5.0..5.0f64) {
        let c = classical_recurrence(&fam, 22).unwrap();
        let mut prev = 0.0;
        for n in 0..20 {
            let k = kernel_diag(&c, a, n).unwrap();
            prop_assert!(k > prev);
            prev = k;
        }
    }

    #[test]
    fn ratios_are_value_quotients(fam in bounded_below(), a in -4.0..-1.05f64, n in 0usize..20) {
        let c = classical_recurrence(&fam, 22).unwrap();
        let ev = PolyEvaluator::new(&c);
        let q = ev.value(n + 1, a).unwrap() / ev.value(n, a).unwrap();
        prop_assert!(common::rel(ratio_at(&c, a, n).unwrap(), q) < 1e-11);
    }
}
