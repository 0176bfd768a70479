//! Verification suites: every invariant of the library checked over a fixed
//! parameter lattice, with pass/fail per suite.
//!
//! Suites: `core` (recurrences, norms, kernels, ratios, classical zeros),
//! `transforms` (Christoffel and Uvarov data, representations, orthogonality),
//! `zeros` (interlacing, monotonicity, rates, minimum mass, Hermite-type),
//! `lemma22` (the ladder identity for the four structure cases) and
//! `electrostatics` (lifted relation, Q, ODE, stationarity).

use crate::classical::{ClassicalFamily, RecurrenceCoeffs};
use crate::electrostatics::{
    equilibrium_residual, ode_residual, q_zeros, sample_points, QZeros, StructureCase,
    StructureRelation,
};
use crate::error::{OpolyError, Result};
use crate::eval::{kernel_diag, kernel_value, ratio_at, squared_norm, PolyEvaluator};
use crate::quadrature::GaussRule;
use crate::transforms::{christoffel_step, iterated_coeffs, MeasureSpec, PerturbedFamily};
use crate::zeros::{
    convergence_rate, facing_endpoint, hermite_interlacing, hermite_type_zeros,
    interlacing_report, mass_scan, min_mass, tridiag_zeros, uvarov_zeros, Endpoint, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const SUITES: [&str; 5] = ["core", "transforms", "zeros", "lemma22", "electrostatics"];

/// Parameter values used for `α` and `β` throughout the lattice.
pub const LATTICE_PARAMS: [f64; 4] = [-0.5, 0.0, 0.5, 2.0];
/// Masses of the lattice.
pub const LATTICE_MASSES: [f64; 4] = [0.1, 1.0, 10.0, 1e3];
/// Perturbation points for the Laguerre and Jacobi families.
pub const LAGUERRE_POINTS: [f64; 4] = [0.0, -0.5, -1.0, -2.0];
pub const JACOBI_POINTS: [f64; 5] = [-1.0, 1.0, -2.0, 1.5, 3.0];
/// Jacobi points for the interlacing checks. Farther out, the gap between a
/// Uvarov zero and its limit drops below one ulp and strictness can no
/// longer be decided in double precision.
pub const JACOBI_INTERLACING_POINTS: [f64; 4] = [-1.0, 1.0, -1.1, 1.1];
/// Mass grid for the monotonicity scans.
pub const MONOTONE_GRID: [f64; 8] = [0.0, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3, 1e4];

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Run only these suites (all when `None`).
    pub suites: Option<Vec<String>>,
    /// Added to every structure coefficient `B(x, n)` before the checks.
    pub b_perturbation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: usize,
    /// The first few failure descriptions.
    pub examples: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

const MAX_EXAMPLES: usize = 5;

/// Outcome of one check: `None` on success, the reason otherwise.
type Outcome = Option<String>;

fn expect(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        None
    } else {
        Some(what())
    }
}

fn flatten(results: Vec<Result<Vec<Outcome>>>, label: &str) -> Vec<Outcome> {
    results
        .into_iter()
        .flat_map(|r| match r {
            Ok(v) => v,
            Err(e) => vec![Some(format!("{label}: {e}"))],
        })
        .collect()
}

fn par_run<T, F>(items: &[T], f: F) -> Vec<Result<Vec<Outcome>>>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<Outcome>> + Sync + Send,
{
    items.par_iter().map(f).collect()
}

fn summarize(name: &str, outcomes: Vec<Outcome>) -> SuiteReport {
    let checks = outcomes.len();
    let failed: Vec<String> = outcomes.into_iter().flatten().collect();
    SuiteReport {
        name: name.to_string(),
        checks,
        passed: checks > 0 && failed.is_empty(),
        failures: failed.len(),
        examples: failed.into_iter().take(MAX_EXAMPLES).collect(),
    }
}

/// Runs the selected suites.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let selected: Vec<&str> = match &opts.suites {
        None => SUITES.to_vec(),
        Some(list) => {
            for s in list {
                if !SUITES.contains(&s.as_str()) {
                    return Err(OpolyError::Domain(format!(
                        "unknown suite '{s}' (expected one of {})",
                        SUITES.join(", ")
                    )));
                }
            }
            SUITES
                .iter()
                .copied()
                .filter(|s| list.iter().any(|l| l == s))
                .collect()
        }
    };
    let suites: Vec<SuiteReport> = selected
        .iter()
        .map(|&name| {
            let outcomes = match name {
                "core" => core_suite(),
                "transforms" => transforms_suite(),
                "zeros" => zeros_suite(),
                "lemma22" => lemma22_suite(opts.b_perturbation),
                _ => electrostatics_suite(opts.b_perturbation),
            };
            summarize(name, outcomes)
        })
        .collect();
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport { suites, passed })
}

/// Jacobi and Laguerre families of the lattice.
pub fn lattice_families() -> Vec<ClassicalFamily> {
    let mut out = Vec::new();
    for &alpha in &LATTICE_PARAMS {
        for &beta in &LATTICE_PARAMS {
            out.push(ClassicalFamily::Jacobi { alpha, beta });
        }
    }
    for &alpha in &LATTICE_PARAMS {
        out.push(ClassicalFamily::Laguerre { alpha });
    }
    out
}

/// Perturbation points used with `family`.
pub fn lattice_points(family: &ClassicalFamily) -> &'static [f64] {
    match family {
        ClassicalFamily::Jacobi { .. } => &JACOBI_POINTS,
        ClassicalFamily::Laguerre { .. } => &LAGUERRE_POINTS,
        ClassicalFamily::Hermite => &[],
    }
}

/// Every Uvarov spec of the lattice (family × point × mass).
pub fn lattice_specs() -> Vec<MeasureSpec> {
    specs_at(lattice_points)
}

/// The lattice used for interlacing and monotonicity.
pub fn interlacing_specs() -> Vec<MeasureSpec> {
    specs_at(|f| match f {
        ClassicalFamily::Jacobi { .. } => &JACOBI_INTERLACING_POINTS,
        _ => lattice_points(f),
    })
}

/// Monotonicity with a fixed absolute margin is meaningful where the zeros
/// still move by more than that margin over the grid: the Laguerre points
/// and the Jacobi endpoints.
pub fn monotone_specs() -> Vec<MeasureSpec> {
    interlacing_specs()
        .into_iter()
        .filter(|s| matches!(s.family, ClassicalFamily::Laguerre { .. }) || s.at_boundary())
        .collect()
}

fn specs_at(points: impl Fn(&ClassicalFamily) -> &'static [f64]) -> Vec<MeasureSpec> {
    let mut out = Vec::new();
    for fam in lattice_families() {
        for &a in points(&fam) {
            for &m in &LATTICE_MASSES {
                out.push(MeasureSpec { family: fam, christoffel_level: 0, a, mass: m });
            }
        }
    }
    out
}

/// Specs covered by the four structure cases, with the given masses.
pub fn structure_specs(masses: &[f64]) -> Vec<MeasureSpec> {
    let mut out = Vec::new();
    for fam in lattice_families() {
        let points: &[f64] = match fam {
            ClassicalFamily::Laguerre { .. } => &[0.0, -1.0, -2.0],
            _ => &[-1.0, -1.5, -2.0, 2.0],
        };
        for &a in points {
            for &m in masses {
                out.push(MeasureSpec { family: fam, christoffel_level: 0, a, mass: m });
            }
        }
    }
    out
}

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

fn interior_samples(fam: &ClassicalFamily, n: usize, count: usize) -> Vec<f64> {
    sample_points(&MeasureSpec::classical(*fam), n, count)
}

fn core_suite() -> Vec<Outcome> {
    let mut fams = lattice_families();
    fams.push(ClassicalFamily::Hermite);
    let results: Vec<Result<Vec<Outcome>>> = fams
        .par_iter()
        .map(|fam| -> Result<Vec<Outcome>> {
            let mut out = Vec::new();
            let c = fam.recurrence(26)?;
            for n in 1..=20 {
                let g = c.gamma(n);
                out.push(expect(g > 0.0, || format!("{fam:?}: gamma_{n} = {g}")));
                let q = squared_norm(&c, n)? / squared_norm(&c, n - 1)?;
                out.push(expect(rel(q, g) < 1e-12, || {
                    format!("{fam:?}: norm ratio {q} vs gamma_{n} = {g}")
                }));
            }
            // kernel monotone in n
            for &a in &[0.3, -1.5, 2.5] {
                let mut prev = 0.0;
                for n in 0..=20 {
                    let k = kernel_diag(&c, a, n)?;
                    out.push(expect(k > prev, || format!("{fam:?}: K_{n}({a},{a}) not increasing")));
                    prev = k;
                }
            }
            // Christoffel-Darboux identity
            let ev = PolyEvaluator::new(&c);
            let xs = interior_samples(fam, 20, 6);
            for n in [1usize, 4, 9, 20] {
                for w in xs.windows(2) {
                    let (x, y) = (w[0], w[1]);
                    let lhs = (x - y) * kernel_value(&c, y, x, n)? * squared_norm(&c, n)?;
                    let t1 = ev.value(n + 1, x)? * ev.value(n, y)?;
                    let t2 = ev.value(n, x)? * ev.value(n + 1, y)?;
                    let dev = (lhs - (t1 - t2)).abs() / (t1.abs() + t2.abs());
                    out.push(expect(dev < 1e-10, || {
                        format!("{fam:?}: CD identity n={n} x={x} y={y} dev {dev:e}")
                    }));
                }
            }
            // ratios against value quotients
            for &a in lattice_points(fam) {
                for n in 0..=12 {
                    let r = ratio_at(&c, a, n)?;
                    let q = ev.value(n + 1, a)? / ev.value(n, a)?;
                    out.push(expect(rel(r, q) < 1e-10, || {
                        format!("{fam:?}: r_{n}({a}) = {r} vs quotient {q}")
                    }));
                }
            }
            // classical zeros: simple, inside the hull, interlacing
            let hull = fam.support();
            for n in 1..=25 {
                let z = tridiag_zeros(&c, n)?;
                let z1 = tridiag_zeros(&c, n + 1)?;
                let inside = z.zeros.iter().all(|&x| hull.contains_interior(x));
                let inter = (0..n).all(|k| z1.zeros[k] < z.zeros[k] && z.zeros[k] < z1.zeros[k + 1]);
                out.push(expect(inside && inter && z.is_strictly_increasing(), || {
                    format!("{fam:?}: zeros of degree {n} fail interlacing or lie outside")
                }));
            }
            Ok(out)
        })
        .collect();
    flatten(results, "core")
}

fn transforms_suite() -> Vec<Outcome> {
    let specs = lattice_specs();
    let mut results: Vec<Result<Vec<Outcome>>> = specs
        .par_iter()
        .map(|spec| -> Result<Vec<Outcome>> {
            let mut out = Vec::new();
            let mut rng = ChaCha8Rng::seed_from_u64(spec.a.to_bits() ^ spec.mass.to_bits());
            let (lo, hi) = match spec.family {
                ClassicalFamily::Laguerre { .. } => (spec.a - 1.0, 30.0),
                _ => (spec.a.min(-1.0) - 0.5, spec.a.max(1.0) + 0.5),
            };
            let xs: Vec<f64> = (0..40).map(|_| rng.gen_range(lo..hi)).collect();
            let fam = PerturbedFamily::new(spec, 12)?;
            for n in 1..=12 {
                let dev = fam.representation_crosscheck(n, &xs)?;
                out.push(expect(dev < 1e-9, || {
                    format!("{spec:?}: representation deviation {dev:e} at n={n}")
                }));
            }
            Ok(out)
        })
        .collect();
    // Christoffel data at exterior points
    let exterior: Vec<(ClassicalFamily, f64)> = lattice_families()
        .into_iter()
        .flat_map(|f| {
            lattice_points(&f)
                .iter()
                .filter(|&&a| !f.support().contains_interior(a) && a != f.support().xi && a != f.support().eta)
                .map(move |&a| (f, a))
                .collect::<Vec<_>>()
        })
        .collect();
    results.extend(par_run(&exterior, |&(fam, a)| -> Result<Vec<Outcome>> {
        let mut out = Vec::new();
        let c = fam.recurrence(34)?;
        let star = christoffel_step(&c, a)?;
        out.push(expect(star.gammas().iter().all(|&g| g > 0.0), || {
            format!("{fam:?} a={a}: gamma* not positive")
        }));
        for n in 0..=15 {
            let (d, e) = iterated_coeffs(&c, a, n)?;
            out.push(expect(d.is_finite() && e - c.gamma(n + 1) > 0.0, || {
                format!("{fam:?} a={a}: e_{n} - gamma_{} = {}", n + 1, e - c.gamma(n + 1))
            }));
        }
        // (x-a)² p**_n = (x - β_{n+1} - d_n) p_{n+1} + (e_n - γ_{n+1}) p_n
        let pf = PerturbedFamily::new(&MeasureSpec::uvarov(fam, a, 0.0)?, 12)?;
        let ev = PolyEvaluator::new(&c);
        for n in 0..=10 {
            let (d, e) = iterated_coeffs(&c, a, n)?;
            for x in interior_samples(&fam, n + 1, 5) {
                let lhs = (x - a).powi(2) * pf.star2_jet(n, x)?.v;
                let t1 = (x - c.beta(n + 1) - d) * ev.value(n + 1, x)?;
                let t2 = (e - c.gamma(n + 1)) * ev.value(n, x)?;
                let dev = (lhs - t1 - t2).abs() / (lhs.abs() + t1.abs() + t2.abs());
                out.push(expect(dev < 1e-9, || {
                    format!("{fam:?} a={a}: iterated reconstruction n={n} x={x} dev {dev:e}")
                }));
            }
        }
        out.extend(orthogonality_checks(&c, &fam, a)?);
        Ok(out)
    }));
    flatten(results, "transforms")
}

/// `∫ p*_m p*_n (x-a) dμ` and the Uvarov discrete inner products for
/// `m ≠ n ≤ 6`, by a Gauss rule of the unperturbed family.
fn orthogonality_checks(c: &RecurrenceCoeffs, fam: &ClassicalFamily, a: f64) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    let rule = GaussRule::new(c, 24)?;
    let pf = PerturbedFamily::new(&MeasureSpec::uvarov(*fam, a, 0.0)?, 6)?;
    let uv = PerturbedFamily::new(&MeasureSpec::uvarov(*fam, a, 2.5)?, 6)?;
    let star = |n: usize, x: f64| pf.star_jet(n, x).map(|j| j.v).unwrap_or(f64::NAN);
    let uvj = |n: usize, x: f64| uv.jet(n, x).map(|j| j.v).unwrap_or(f64::NAN);
    for n in 0..=6 {
        let norm_star = rule.integrate(|x| star(n, x) * star(n, x) * (x - a)).abs();
        let norm_uv = rule.integrate(|x| uvj(n, x).powi(2)) + 2.5 * uvj(n, a).powi(2);
        for m in 0..n {
            let ip = rule.integrate(|x| star(m, x) * star(n, x) * (x - a));
            out.push(expect(ip.abs() < 1e-8 * norm_star, || {
                format!("{fam:?} a={a}: <p*_{m}, p*_{n}> = {ip:e}")
            }));
            let ip = rule.integrate(|x| uvj(m, x) * uvj(n, x)) + 2.5 * uvj(m, a) * uvj(n, a);
            out.push(expect(ip.abs() < 1e-8 * norm_uv, || {
                format!("{fam:?} a={a}: <p^N_{m}, p^N_{n}> = {ip:e}")
            }));
        }
    }
    Ok(out)
}

/// Solves `p_n^N(e) = 0` for `N` by bisection on a logarithmic scale.
pub fn bisect_min_mass(spec: &MeasureSpec, n: usize, endpoint: f64) -> Result<f64> {
    let f = |m: f64| -> Result<f64> {
        PerturbedFamily::new(&spec.with_mass(m)?, n)?.jet(n, endpoint).map(|j| j.v)
    };
    let s0 = f(0.0)?.signum();
    let mut hi = 1e-6;
    while f(hi)?.signum() == s0 {
        hi *= 4.0;
        if hi > 1e300 {
            return Err(OpolyError::Breakdown("no sign change in N".into()));
        }
    }
    let mut lo = hi / 4.0;
    if f(lo)?.signum() != s0 {
        lo = 0.0;
    }
    while hi - lo > 1e-14 * hi {
        let mid = if lo > 0.0 { (lo * hi).sqrt() } else { 0.5 * hi };
        if f(mid)?.signum() == s0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn zeros_suite() -> Vec<Outcome> {
    let specs = interlacing_specs();
    let mut results: Vec<Result<Vec<Outcome>>> = specs
        .par_iter()
        .map(|spec| -> Result<Vec<Outcome>> {
            let mut out = Vec::new();
            for n in 1..=12 {
                let rep = interlacing_report(spec, n)?;
                out.push(expect(rep.holds, || {
                    let bad = rep.chains.iter().find(|c| !c.holds);
                    format!("{spec:?} n={n}: chain {:?}", bad.map(|c| (&c.name, &c.offending)))
                }));
            }
            Ok(out)
        })
        .collect();
    // monotonicity, one scan per (family, a, n)
    let scan_specs: Vec<(MeasureSpec, usize)> = monotone_specs()
        .iter()
        .filter(|s| s.mass == 1.0)
        .flat_map(|s| (1..=12).map(move |n| (*s, n)))
        .collect();
    results.extend(par_run(&scan_specs, |(spec, n)| -> Result<Vec<Outcome>> {
        let scan = mass_scan(spec, *n, &MONOTONE_GRID)?;
        Ok(scan
            .verdicts
            .iter()
            .zip(&scan.min_margins)
            .enumerate()
            .map(|(k, (v, m))| {
                expect(*v == Verdict::Pass && *m > 1e-12, || {
                    format!("{spec:?} n={n}: zero {k} verdict {v:?}, margin {m:e}")
                })
            })
            .collect())
    }));
    // rates: kernel formula vs closed forms at the endpoints
    let rate_specs: Vec<MeasureSpec> = specs
        .iter()
        .filter(|s| s.mass == 1.0 && s.at_boundary())
        .copied()
        .collect();
    results.extend(par_run(&rate_specs, |spec| -> Result<Vec<Outcome>> {
        let mut out = Vec::new();
        for n in 2..=10 {
            for k in 0..n {
                let r = convergence_rate(spec, n, k)?;
                let cf = r.closed_form.unwrap_or(f64::NAN);
                out.push(expect(rel(r.rate, cf) < 1e-8, || {
                    format!("{spec:?} n={n} k={k}: rate {} vs closed form {cf}", r.rate)
                }));
            }
        }
        Ok(out)
    }));
    // minimum mass
    let mm_specs: Vec<MeasureSpec> = lattice_families()
        .into_iter()
        .flat_map(|f| {
            let pts: &[f64] = match f {
                ClassicalFamily::Laguerre { .. } => &[-0.5, -1.0, -2.0],
                _ => &[-2.0, 1.5, 3.0],
            };
            pts.iter()
                .map(move |&a| MeasureSpec { family: f, christoffel_level: 0, a, mass: 0.0 })
                .collect::<Vec<_>>()
        })
        .collect();
    results.extend(par_run(&mm_specs, |spec| -> Result<Vec<Outcome>> {
        let mut out = Vec::new();
        let ep = facing_endpoint(spec)?;
        for n in 1..=8 {
            let mm = min_mass(spec, n, ep)?;
            let oracle = bisect_min_mass(spec, n, mm.endpoint)?;
            out.push(expect(rel(mm.n0, oracle) < 1e-8, || {
                format!("{spec:?} n={n}: N_0 {} vs bisection {oracle}", mm.n0)
            }));
            let idx = if ep == Endpoint::Xi { 0 } else { n - 1 };
            let below = uvarov_zeros(&spec.with_mass(mm.n0 * (1.0 - 1e-3))?, n)?.zeros[idx];
            let above = uvarov_zeros(&spec.with_mass(mm.n0 * (1.0 + 1e-3))?, n)?.zeros[idx];
            let e = mm.endpoint;
            let ok = match ep {
                Endpoint::Xi => below > e && above < e,
                Endpoint::Eta => below < e && above > e,
            };
            out.push(expect(ok, || {
                format!("{spec:?} n={n}: straddle fails ({below}, {above}) around {e}")
            }));
        }
        Ok(out)
    }));
    // Hermite-type
    let herm: Vec<(f64, usize)> = [0.0, 0.1, 1.0, 10.0, 1e3]
        .iter()
        .flat_map(|&m| (1..=6).map(move |k| (m, k)))
        .collect();
    results.extend(par_run(&herm, |&(mass, m)| -> Result<Vec<Outcome>> {
        let mut out = Vec::new();
        if mass > 0.0 {
            // at N = 0 the even chain degenerates into equalities
            let rep = hermite_interlacing(mass, m)?;
            out.push(expect(rep.holds, || format!("Hermite-type N={mass} m={m}: chain fails")));
        }
        for degree in [2 * m, 2 * m + 1] {
            let z = hermite_type_zeros(mass, degree)?;
            let sym = (0..degree).all(|k| (z.zeros[k] + z.zeros[degree - 1 - k]).abs() <= 1e-12 * (1.0 + z.zeros[k].abs()));
            out.push(expect(sym && z.is_strictly_increasing(), || {
                format!("Hermite-type N={mass} degree {degree}: zeros not symmetric")
            }));
        }
        let odd = hermite_type_zeros(mass, 2 * m + 1)?;
        let odd0 = hermite_type_zeros(0.0, 2 * m + 1)?;
        out.push(expect(odd.zeros == odd0.zeros, || {
            format!("Hermite-type N={mass}: odd degree depends on N")
        }));
        Ok(out)
    }));
    flatten(results, "zeros")
}

fn lemma22_suite(b_perturbation: f64) -> Vec<Outcome> {
    let specs = structure_specs(&[1.0]);
    let results: Vec<Result<Vec<Outcome>>> = specs
        .par_iter()
        .map(|spec| -> Result<Vec<Outcome>> {
            let sr = StructureRelation::new(spec, 10)?.with_b_perturbation(b_perturbation);
            let mut out = Vec::new();
            for n in 2..=10 {
                let xs = sample_points(spec, n, 50);
                let r = sr.lemma_residual(n, &xs)?;
                out.push(expect(r < 1e-9, || {
                    format!("{} {spec:?} n={n}: Lemma residual {r:e}", sr.case().tag())
                }));
                let s = sr.structure_residual(n, &xs)?;
                out.push(expect(s < 1e-8, || {
                    format!("{} {spec:?} n={n}: structure residual {s:e}", sr.case().tag())
                }));
            }
            Ok(out)
        })
        .collect();
    flatten(results, "lemma22")
}

/// Offsets moved a third of the way toward the next charge.
pub fn displaced_offsets(offsets: &[f64]) -> Vec<f64> {
    let n = offsets.len();
    (0..n)
        .map(|j| {
            let gap = if j + 1 < n {
                offsets[j + 1] - offsets[j]
            } else if n > 1 {
                offsets[j - 1] - offsets[j]
            } else {
                offsets[j]
            };
            offsets[j] + gap / 3.0
        })
        .collect()
}

fn electrostatics_suite(b_perturbation: f64) -> Vec<Outcome> {
    let specs = structure_specs(&[0.0, 0.1, 1.0, 10.0, 100.0, 1e3]);
    let results: Vec<Result<Vec<Outcome>>> = specs
        .par_iter()
        .map(|spec| -> Result<Vec<Outcome>> {
            let sr = StructureRelation::new(spec, 10)?.with_b_perturbation(b_perturbation);
            let case = sr.case();
            let tag = case.tag();
            let mut out = Vec::new();
            for n in 2..=10 {
                let xs = sample_points(spec, n, 20);
                let l = sr.lifted_residual(n, &xs)?;
                out.push(expect(l < 1e-8, || format!("{tag} {spec:?} n={n}: lifted residual {l:e}")));
                let q = sr.q_polynomial(n)?;
                let qc = sr.q_closed_form(n)?;
                let scale = q.max_abs_coeff().max(qc.max_abs_coeff());
                let dev = (0..3).map(|k| (q.coeff(k) - qc.coeff(k)).abs()).fold(0.0, f64::max) / scale;
                out.push(expect(dev < 1e-10, || format!("{tag} {spec:?} n={n}: Q closed form dev {dev:e}")));
                let o = ode_residual(&sr, n, &xs)?;
                out.push(expect(o < 1e-7, || format!("{tag} {spec:?} n={n}: ODE residual {o:e}")));
                if spec.mass > 0.0 {
                    out.extend(q_location(&sr, n, spec)?);
                    if b_perturbation == 0.0 {
                        let rep = equilibrium_residual(spec, n)?;
                        out.push(expect(rep.max_residual < 1e-6, || {
                            format!("{tag} {spec:?} n={n}: stationarity residual {:e}", rep.max_residual)
                        }));
                        let moved = displaced_offsets(&rep.offsets);
                        let ctrl = sr
                            .stationarity_residuals(&rep.q, &moved)
                            .map(|r| r.into_iter().fold(0.0, f64::max))
                            .unwrap_or(f64::INFINITY);
                        out.push(expect(ctrl > 1e-2, || {
                            format!("{tag} {spec:?} n={n}: displaced configuration residual {ctrl:e}")
                        }));
                    }
                }
            }
            Ok(out)
        })
        .collect();
    flatten(results, "electrostatics")
}

/// Sign and location claims for `c_n` and the zero of `Q` in the two
/// boundary cases.
pub fn q_location(sr: &StructureRelation, n: usize, spec: &MeasureSpec) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    let tag = sr.case().tag();
    match (sr.case(), spec.family) {
        (StructureCase::LaguerreAtZero, ClassicalFamily::Laguerre { alpha }) => {
            let c = sr.c_n(n)?;
            out.push(expect(c > 0.0 && c < n as f64 + alpha + 1.0, || {
                format!("{tag} {spec:?} n={n}: c_n = {c} outside (0, n+α+1)")
            }));
            let lq = sr.local_q(n)?;
            let u = -lq.at_a / lq.slope;
            out.push(expect(u > 0.0 && lq.curvature == 0.0, || {
                format!("{tag} {spec:?} n={n}: u_n = {u}")
            }));
        }
        (StructureCase::JacobiAtMinusOne, _) => {
            let q = sr.q_polynomial(n)?;
            let lq = sr.local_q(n)?;
            let (qp, qm) = (q.eval(1.0), lq.at_a);
            let u = match q_zeros(&q) {
                QZeros::Real(z) if z.len() == 1 => z[0],
                _ => f64::NAN,
            };
            out.push(expect(qp > 0.0 && qm < 0.0 && u > -1.0 && u < 1.0, || {
                format!("{tag} {spec:?} n={n}: Q(1) = {qp}, Q(-1) = {qm}, u_n = {u}")
            }));
        }
        _ => {}
    }
    Ok(out)
}
