//! Zeros of the perturbed families: location, interlacing, motion in the
//! mass, limits, rates, minimum mass and the Hermite-type symmetrization.

mod common;

use opoly::transforms::{MeasureSpec, Side};
use opoly::zeros::{
    convergence_rate_for_zero, facing_endpoint, hermite_interlacing, hermite_type_jet,
    hermite_type_zeros, interlacing_report, laguerre_capture_rate, mass_scan, min_mass,
    uvarov_zeros, Direction, Endpoint,
};
use opoly::ClassicalFamily;
use proptest::prelude::*;

fn spec_strategy() -> impl Strategy<Value = MeasureSpec> {
    let jac = (-0.9..3.0f64, -0.9..3.0f64, prop_oneof![-1.1..-1.0f64, 1.0..1.1f64, Just(-1.0), Just(1.0)])
        .prop_map(|(al, be, a)| (ClassicalFamily::jacobi(al, be).unwrap(), a));
    let lag = (-0.9..3.0f64, prop_oneof![-2.0..0.0f64, Just(0.0)])
        .prop_map(|(al, a)| (ClassicalFamily::laguerre(al).unwrap(), a));
    (prop_oneof![jac, lag], 0.05..500.0f64)
        .prop_map(|((f, a), m)| MeasureSpec::uvarov(f, a, m).unwrap())
}

#[test]
fn legendre_table_row() {
    let spec = MeasureSpec::uvarov(ClassicalFamily::jacobi(0.0, 0.0).unwrap(), 1.0, 10.0).unwrap();
    let z = uvarov_zeros(&spec, 3).unwrap();
    let want = [-0.755305, 0.0868168, 0.994575];
    for (x, w) in z.zeros.iter().zip(want) {
        assert!((x - w).abs() < 1e-6);
    }
    assert!(z.residual < 1e-12);
}

#[test]
fn laguerre_limits_and_rates() {
    let spec = MeasureSpec::uvarov(ClassicalFamily::laguerre(2.0).unwrap(), 0.0, 1.0).unwrap();
    // the captured zero tends to a, the others to the zeros of p**_2
    let star2 = common::perturbed(&ClassicalFamily::laguerre(2.0).unwrap(), 2, 0.0, 0.0, 3);
    let lim = common::zeros(&star2, 2);
    let r0 = convergence_rate_for_zero(&spec, 3, 0).unwrap();
    assert_eq!(r0.limit, 0.0);
    assert!((r0.rate - 0.4).abs() < 1e-12);
    assert!((r0.closed_form.unwrap() - laguerre_capture_rate(3, 2.0)).abs() < 1e-14);
    for k in 1..3 {
        let r = convergence_rate_for_zero(&spec, 3, k).unwrap();
        assert!((r.limit - lim[k - 1]).abs() < 1e-12);
        // N (x^N - limit) at a large mass approaches the rate
        let big = 1e7;
        let x = uvarov_zeros(&spec.with_mass(big).unwrap(), 3).unwrap().zeros[k];
        assert!((big * (x - r.limit) - r.rate).abs() < 1e-4 * r.rate.abs().max(1.0));
    }
    assert!(convergence_rate_for_zero(&spec, 3, 3).is_err());
}

#[test]
fn min_mass_rejects_boundary_points() {
    let spec = MeasureSpec::uvarov(ClassicalFamily::laguerre(1.0).unwrap(), 0.0, 0.0).unwrap();
    assert!(min_mass(&spec, 3, Endpoint::Xi).is_err());
}

#[test]
fn hermite_type_special_cases() {
    // no mass: plain Hermite zeros
    let z = hermite_type_zeros(0.0, 4).unwrap().zeros;
    let h = common::zeros(&common::classical(&ClassicalFamily::Hermite, 5), 4);
    assert!(common::max_dev(&z, &h) < 1e-13);
    // odd degrees vanish at the mass point and ignore the mass
    let j = hermite_type_jet(7.0, 5, 0.0).unwrap();
    assert_eq!(j.v, 0.0);
    assert!(hermite_type_zeros(1.0, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn zeros_match_reference(spec in spec_strategy(), n in 1usize..13) {
        let z = uvarov_zeros(&spec, n).unwrap();
        let r = common::zeros(&common::perturbed(&spec.family, 0, spec.a, spec.mass, n + 1), n);
        prop_assert!(common::max_dev(&z.zeros, &r) < 1e-9, "{:?} vs {r:?}", z.zeros);
        prop_assert!(z.is_strictly_increasing());
    }

    #[test]
    fn chains_hold(spec in spec_strategy(), n in 1usize..13) {
        let rep = interlacing_report(&spec, n).unwrap();
        prop_assert!(rep.holds, "{:?}", rep.chains.iter().filter(|c| !c.holds).collect::<Vec<_>>());
    }

    #[test]
    fn at_most_one_zero_outside_the_hull(spec in spec_strategy(), n in 1usize..13) {
        let z = uvarov_zeros(&spec, n).unwrap().zeros;
        let hull = spec.family.support();
        let outside = z.iter().filter(|&&x| x <= hull.xi || x >= hull.eta).count();
        prop_assert!(outside <= 1);
    }

    #[test]
    fn zeros_move_toward_the_mass(spec in spec_strategy(), n in 1usize..9) {
        prop_assume!(spec.at_boundary() || matches!(spec.family, ClassicalFamily::Laguerre { .. }));
        let grid = [0.0, 0.1, 1.0, 10.0, 100.0];
        let scan = mass_scan(&spec, n, &grid).unwrap();
        let want = match spec.side() { Side::Left => Direction::Decreasing, Side::Right => Direction::Increasing };
        prop_assert_eq!(scan.direction, want);
        prop_assert!(scan.all_pass(), "{:?} {:?}", scan.verdicts, scan.min_margins);
    }

    #[test]
    fn min_mass_straddles((al, a) in (-0.9..3.0f64, -3.0..-0.05f64), n in 1usize..9) {
        let spec = MeasureSpec::uvarov(ClassicalFamily::laguerre(al).unwrap(), a, 0.0).unwrap();
        let ep = facing_endpoint(&spec).unwrap();
        prop_assert_eq!(ep, Endpoint::Xi);
        let mm = min_mass(&spec, n, ep).unwrap();
        prop_assert!(mm.n0 > 0.0);
        let below = uvarov_zeros(&spec.with_mass(mm.n0 * 0.99).unwrap(), n).unwrap().zeros[0];
        let above = uvarov_zeros(&spec.with_mass(mm.n0 * 1.01).unwrap(), n).unwrap().zeros[0];
        prop_assert!(below > 0.0 && above < 0.0);
    }

    #[test]
    fn hermite_type_matches_reference(mass in 0.0..1e3f64, degree in 1usize..14) {
        let z = hermite_type_zeros(mass, degree).unwrap().zeros;
        prop_assert!(common::max_dev(&z, &common::hermite_type(mass, degree)) < 1e-9);
    }

    #[test]
    fn hermite_chains_hold(mass in 0.01..1e3f64, m in 1usize..7) {
        prop_assert!(hermite_interlacing(mass, m).unwrap().holds);
    }
}
