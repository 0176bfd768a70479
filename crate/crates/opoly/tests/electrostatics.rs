//! Structure relations, the holonomic equation and the electrostatic
//! equilibrium, checked with reference polynomials and zeros from `common`.

mod common;

use opoly::electrostatics::{
    equilibrium_residual, q_zeros, structure_relation, QZeros, StructureCase, StructureRelation,
};
use opoly::eval::Jet;
use opoly::transforms::MeasureSpec;
use opoly::{ClassicalFamily, OpolyError, Poly};
use proptest::prelude::*;

/// One spec per structure case.
fn case_spec() -> impl Strategy<Value = MeasureSpec> {
    let p = -0.9..3.0f64;
    prop_oneof![
        (p.clone()).prop_map(|al| (ClassicalFamily::laguerre(al).unwrap(), 0.0)),
        (p.clone(), -3.0..-0.1f64).prop_map(|(al, a)| (ClassicalFamily::laguerre(al).unwrap(), a)),
        (p.clone(), p.clone()).prop_map(|(al, be)| (ClassicalFamily::jacobi(al, be).unwrap(), -1.0)),
        (p.clone(), p.clone(), prop_oneof![-3.0..-1.05f64, 1.05..3.0f64])
            .prop_map(|(al, be, a)| (ClassicalFamily::jacobi(al, be).unwrap(), a)),
    ]
    .prop_flat_map(|(f, a)| (Just(f), Just(a), prop_oneof![Just(0.0), 0.05..200.0f64]))
    .prop_map(|(f, a, m)| MeasureSpec::uvarov(f, a, m).unwrap())
}

fn reference_zeros(spec: &MeasureSpec, n: usize) -> Vec<f64> {
    common::zeros(&common::perturbed(&spec.family, 0, spec.a, spec.mass, n + 1), n)
}

#[test]
fn cases_are_detected() {
    let lag = ClassicalFamily::laguerre(1.0).unwrap();
    let jac = ClassicalFamily::jacobi(0.5, 0.5).unwrap();
    let tag = |f, a| StructureCase::detect(&MeasureSpec::uvarov(f, a, 1.0).unwrap()).map(|c| c.tag());
    assert_eq!(tag(lag, 0.0).unwrap(), "laguerre_a0");
    assert_eq!(tag(lag, -2.0).unwrap(), "laguerre_neg");
    assert_eq!(tag(jac, -1.0).unwrap(), "jacobi_m1");
    assert_eq!(tag(jac, -3.0).unwrap(), "jacobi_neg");
    assert_eq!(tag(jac, 3.0).unwrap(), "jacobi_neg");
    assert!(matches!(tag(jac, 1.0), Err(OpolyError::Domain(_))));
    let lifted = MeasureSpec::new(lag, 1, -1.0, 1.0).unwrap();
    assert!(StructureCase::detect(&lifted).is_err());
}

#[test]
fn laguerre_at_zero_has_constant_b() {
    for alpha in [-0.5, 0.0, 2.0] {
        let spec = MeasureSpec::uvarov(ClassicalFamily::laguerre(alpha).unwrap(), 0.0, 1.0).unwrap();
        let sr = structure_relation(&spec, 8).unwrap();
        for n in 1..=8 {
            let b = sr.b_poly(n).unwrap();
            let want = n as f64 * (n as f64 + alpha + 1.0);
            assert_eq!(b.degree(), Some(0));
            assert!((b.coeff(0) - want).abs() < 1e-12 * want);
        }
    }
}

#[test]
fn wrong_b_is_caught() {
    let spec = MeasureSpec::uvarov(ClassicalFamily::laguerre(1.0).unwrap(), 0.0, 1.0).unwrap();
    let sr = StructureRelation::new(&spec, 6).unwrap().with_b_perturbation(0.5);
    let xs = [0.3, 1.7, 4.2, 9.9];
    assert!(sr.lemma_residual(6, &xs).unwrap() > 1e-3);
    assert!(sr.structure_residual(6, &xs).unwrap() > 1e-3);
}

#[test]
fn q_zero_classification() {
    assert_eq!(q_zeros(&Poly::new(vec![-1.0, 0.0, 1.0])), QZeros::Real(vec![-1.0, 1.0]));
    assert!(matches!(q_zeros(&Poly::new(vec![1.0, 0.0, 1.0])), QZeros::ComplexPair { .. }));
    assert_eq!(q_zeros(&Poly::constant(2.0)), QZeros::NoZeros);
    assert_eq!(q_zeros(&Poly::linear(-2.0, 4.0)), QZeros::Real(vec![0.5]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn structure_relation_holds_for_reference_polynomials(spec in case_spec(), n in 2usize..11) {
        let sr = structure_relation(&spec, n).unwrap();
        let star = common::perturbed(&spec.family, 1, spec.a, 0.0, n + 1);
        let (a, b) = (sr.a_poly(n).unwrap(), sr.b_poly(n).unwrap());
        for x in opoly::electrostatics::sample_points(&spec, n, 15) {
            let (v, d, _) = common::jet(&star, n, x);
            let prev = common::value(&star, n - 1, x);
            let lhs = sr.phi().eval(x) * d;
            let (t1, t2) = (a.eval(x) * v, b.eval(x) * prev);
            prop_assert!((lhs - t1 - t2).abs() < 1e-8 * (lhs.abs() + t1.abs() + t2.abs()));
        }
    }

    #[test]
    fn reference_polynomial_solves_the_ode(spec in case_spec(), n in 2usize..11, x in -2.9..12.0f64) {
        let sr = StructureRelation::new(&spec, n).unwrap();
        let ode = sr.ode_coefficients(n).unwrap();
        let poles = match q_zeros(&ode.q) { QZeros::Real(z) => z, _ => vec![] };
        prop_assume!(poles.iter().all(|p| (x - p).abs() > 1e-3));
        prop_assume!(x != spec.a);
        let rec = common::perturbed(&spec.family, 0, spec.a, spec.mass, n + 1);
        let (v, d, d2) = common::jet(&rec, n, x);
        if let Ok(r) = ode.residual(x, Jet { v, d, d2 }) {
            prop_assert!(r < 1e-7, "residual {r:e}");
        }
    }

    #[test]
    fn reference_zeros_are_in_equilibrium(spec in case_spec(), n in 2usize..11) {
        prop_assume!(spec.mass > 0.0);
        let rep = equilibrium_residual(&spec, n).unwrap();
        prop_assert!(rep.max_residual < 1e-6);
        let z = reference_zeros(&spec, n);
        prop_assert!(common::max_dev(&rep.zeros, &z) < 1e-9);
        // the same balance evaluated directly at the reference zeros, where
        // they stay clear of a and of the zeros of Q
        let sr = StructureRelation::new(&spec, n).unwrap();
        let q = sr.q_polynomial(n).unwrap();
        let dq = q.derivative();
        let qz = match q_zeros(&q) { QZeros::Real(r) => r, _ => vec![] };
        for (j, &x) in z.iter().enumerate() {
            if (x - spec.a).abs() < 1e-3 || qz.iter().any(|r| (x - r).abs() < 1e-3) {
                continue;
            }
            let t1 = sr.psi().eval(x) / sr.phi().eval(x);
            let t2 = dq.eval(x) / q.eval(x);
            let mut s = 0.0;
            let mut s_abs = 0.0;
            for (k, &y) in z.iter().enumerate() {
                if k != j {
                    s += 2.0 / (x - y);
                    s_abs += 2.0 / (x - y).abs();
                }
            }
            let r = (t1 - t2 + s).abs() / (t1.abs() + t2.abs() + s_abs);
            prop_assert!(r < 1e-6, "zero {x}: balance {r:e}");
        }
    }

    #[test]
    fn displaced_charges_are_not_in_equilibrium(spec in case_spec(), n in 2usize..11) {
        prop_assume!(spec.mass > 0.0);
        let rep = equilibrium_residual(&spec, n).unwrap();
        let sr = StructureRelation::new(&spec, n).unwrap();
        let moved = opoly::verify::displaced_offsets(&rep.offsets);
        let worst = sr.stationarity_residuals(&rep.q, &moved)
            .map(|r| r.into_iter().fold(0.0, f64::max))
            .unwrap_or(f64::INFINITY);
        prop_assert!(worst > 1e-2);
    }

    #[test]
    fn q_closed_form_agrees(spec in case_spec(), n in 2usize..11) {
        let sr = StructureRelation::new(&spec, n).unwrap();
        let q = sr.q_polynomial(n).unwrap();
        let qc = sr.q_closed_form(n).unwrap();
        let scale = q.max_abs_coeff().max(qc.max_abs_coeff());
        for k in 0..3 {
            prop_assert!((q.coeff(k) - qc.coeff(k)).abs() < 1e-10 * scale);
        }
    }
}
