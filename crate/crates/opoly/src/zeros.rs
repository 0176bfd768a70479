//! Zeros of classical and perturbed families, interlacing chains, behaviour
//! of the Uvarov zeros as functions of the mass, and Hermite-type zeros.

use crate::classical::{ClassicalFamily, RecurrenceCoeffs};
use crate::error::{OpolyError, Result};
use crate::eval::{Jet, PolyEvaluator};
use crate::roots::bisect_newton;
use crate::special::lgamma;
use crate::transforms::{boundary_christoffel, MeasureSpec, PerturbedFamily, Side};
use crate::tridiag::jacobi_matrix_zeros;
use crate::trend::{TrendPoint, TrendReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// How a [`ZeroSet`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroMethod {
    Eigensolve,
    BracketedBisection,
    /// Brackets came from a uniform sign-change scan because at least one
    /// interlacing bracket showed no sign change.
    DenseScan,
    /// Assembled from zeros of related families (symmetrization).
    Symmetrization,
}

/// Increasing simple zeros of one polynomial, each with a sign-change
/// bracket.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub degree: usize,
    pub zeros: Vec<f64>,
    pub method: ZeroMethod,
    /// `max_k |p(x_k)| / (|p'(x_k)| (1 + |x_k|))`: the relative size of the
    /// Newton correction left at each zero.
    pub residual: f64,
    pub brackets: Vec<(f64, f64)>,
}

impl ZeroSet {
    pub fn is_strictly_increasing(&self) -> bool {
        self.zeros.windows(2).all(|w| w[0] < w[1])
    }
}

fn scaled_residual<F>(f: F, zeros: &[f64]) -> Result<f64>
where
    F: Fn(f64) -> Result<Jet>,
{
    let mut worst = 0.0_f64;
    for &x in zeros {
        let j = f(x)?;
        let r = if j.v == 0.0 {
            0.0
        } else {
            j.v.abs() / (j.d.abs() * (1.0 + x.abs()))
        };
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Separating intervals around sorted simple zeros.
fn separating_brackets(z: &[f64]) -> Vec<(f64, f64)> {
    let n = z.len();
    (0..n)
        .map(|k| {
            let left_gap = if k > 0 { z[k] - z[k - 1] } else { f64::INFINITY };
            let right_gap = if k + 1 < n {
                z[k + 1] - z[k]
            } else {
                f64::INFINITY
            };
            let g = left_gap.min(right_gap);
            let g = if g.is_finite() { g } else { 1.0 + z[k].abs() };
            (z[k] - 0.5 * g, z[k] + 0.5 * g)
        })
        .collect()
}

/// Zeros of `p_n` for the family `coeffs` from its Jacobi matrix.
pub fn tridiag_zeros(coeffs: &RecurrenceCoeffs, n: usize) -> Result<ZeroSet> {
    let zeros = jacobi_matrix_zeros(coeffs, n)?;
    let ev = PolyEvaluator::new(coeffs);
    let residual = scaled_residual(|x| ev.eval2(n, x), &zeros)?;
    Ok(ZeroSet {
        degree: n,
        brackets: separating_brackets(&zeros),
        zeros,
        method: ZeroMethod::Eigensolve,
        residual,
    })
}

const BRACKET_NUDGE: f64 = 1e-12;
const SCAN_POINTS_PER_ZERO: usize = 400;

/// Interlacing brackets for the Uvarov zeros: from the zeros `x` of `p_n`
/// and `xs2` of `p**_{n-1}`.
pub fn uvarov_brackets(side: Side, a: f64, x: &[f64], xs2: &[f64]) -> Vec<(f64, f64)> {
    let n = x.len();
    let raw: Vec<(f64, f64)> = match side {
        Side::Left => (0..n)
            .map(|k| if k == 0 { (a, x[0]) } else { (xs2[k - 1], x[k]) })
            .collect(),
        Side::Right => (0..n)
            .map(|k| if k + 1 == n { (x[k], a) } else { (x[k], xs2[k]) })
            .collect(),
    };
    raw.into_iter()
        .map(|(lo, hi)| {
            (
                lo - BRACKET_NUDGE * (1.0 + lo.abs()),
                hi + BRACKET_NUDGE * (1.0 + hi.abs()),
            )
        })
        .collect()
}

impl PerturbedFamily {
    /// Zeros of the degree-`n` member of the spec's family.
    pub fn zeros(&self, n: usize) -> Result<ZeroSet> {
        if n == 0 {
            return Ok(ZeroSet {
                degree: 0,
                zeros: vec![],
                method: ZeroMethod::Eigensolve,
                residual: 0.0,
                brackets: vec![],
            });
        }
        if self.spec().mass == 0.0 {
            return tridiag_zeros(self.base(), n);
        }
        let spec = *self.spec();
        let x = jacobi_matrix_zeros(self.base(), n)?;
        let xs2 = if n >= 2 {
            jacobi_matrix_zeros(self.star2(), n - 1)?
        } else {
            vec![]
        };
        let brackets = uvarov_brackets(spec.side(), spec.a, &x, &xs2);
        let f = |t: f64| self.uvarov_jet(n, t).map(|j| (j.v, j.d));
        let mut zeros = Vec::with_capacity(n);
        let mut ok = true;
        for (k, &(lo, hi)) in brackets.iter().enumerate() {
            match bisect_newton(f, lo, hi, k) {
                Ok(z) => zeros.push(z),
                Err(OpolyError::BracketFailure { .. }) => {
                    ok = false;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let (mut zeros, brackets, method) = if ok {
            (zeros, brackets, ZeroMethod::BracketedBisection)
        } else {
            let (lo, hi) = match spec.side() {
                Side::Left => (spec.a, x[n - 1]),
                Side::Right => (x[0], spec.a),
            };
            let (z, b) = dense_scan(f, lo, hi, n)?;
            (z, b, ZeroMethod::DenseScan)
        };
        // The zero next to `a` can sit within rounding distance of it; polish
        // it in the offset variable.
        let near = match spec.side() {
            Side::Left => 0,
            Side::Right => n - 1,
        };
        let (lo, hi) = brackets[near];
        let polished = spec.a + self.offset_from_a(n, zeros[near])?;
        if polished >= lo && polished <= hi {
            zeros[near] = polished;
        }
        let residual = scaled_residual(|t| self.uvarov_jet(n, t), &zeros)?;
        Ok(ZeroSet {
            degree: n,
            zeros,
            method,
            residual,
            brackets,
        })
    }
}

fn dense_scan<F>(f: F, lo: f64, hi: f64, n: usize) -> Result<(Vec<f64>, Vec<(f64, f64)>)>
where
    F: Fn(f64) -> Result<(f64, f64)> + Copy,
{
    let lo = lo - BRACKET_NUDGE * (1.0 + lo.abs());
    let hi = hi + BRACKET_NUDGE * (1.0 + hi.abs());
    let m = SCAN_POINTS_PER_ZERO * n;
    let h = (hi - lo) / m as f64;
    let mut brackets = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0)?.0;
    for i in 1..=m {
        let x1 = if i == m { hi } else { lo + h * i as f64 };
        let f1 = f(x1)?.0;
        if f0 == 0.0 || f0.signum() != f1.signum() {
            brackets.push((x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    if brackets.len() != n {
        return Err(OpolyError::BracketFailure {
            index: brackets.len(),
            lo,
            hi,
        });
    }
    let zeros = brackets
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| bisect_newton(f, a, b, k))
        .collect::<Result<Vec<_>>>()?;
    Ok((zeros, brackets))
}

/// Zeros of `p_n^N` (or of the base family when `N = 0`).
pub fn uvarov_zeros(spec: &MeasureSpec, n: usize) -> Result<ZeroSet> {
    if let ClassicalFamily::Hermite = spec.family {
        let c = spec.family.recurrence(n.max(1))?;
        return tridiag_zeros(&c, n);
    }
    PerturbedFamily::new(spec, n.max(1))?.zeros(n)
}

/// One link `left < right` of an interlacing chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub left: String,
    pub right: String,
    pub left_value: f64,
    pub right_value: f64,
}

impl Link {
    pub fn margin(&self) -> f64 {
        self.right_value - self.left_value
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainVerdict {
    pub name: String,
    pub holds: bool,
    pub min_margin: f64,
    pub links: usize,
    /// First link that fails, if any.
    pub offending: Option<Link>,
}

/// Checks that `values` is strictly increasing.
pub fn check_chain(name: &str, values: &[(String, f64)]) -> ChainVerdict {
    let mut min_margin = f64::INFINITY;
    let mut offending = None;
    for w in values.windows(2) {
        let link = Link {
            left: w[0].0.clone(),
            right: w[1].0.clone(),
            left_value: w[0].1,
            right_value: w[1].1,
        };
        let m = link.margin();
        // NaN margins count as failures.
        if !(m > 0.0) && offending.is_none() {
            offending = Some(link);
        }
        min_margin = min_margin.min(m);
    }
    ChainVerdict {
        name: name.to_string(),
        holds: offending.is_none(),
        min_margin,
        links: values.len().saturating_sub(1),
        offending,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterlacingReport {
    pub n: usize,
    pub chains: Vec<ChainVerdict>,
    pub holds: bool,
}

fn labeled(prefix: &str, n: usize, z: &[f64]) -> Vec<(String, f64)> {
    z.iter()
        .enumerate()
        .map(|(k, &v)| (format!("{prefix}[{n},{}]", k + 1), v))
        .collect()
}

/// Strictly alternating merge `a_1 < b_1 < a_2 < ...` (`a` may be one longer).
fn alternate(a: Vec<(String, f64)>, b: Vec<(String, f64)>) -> Vec<(String, f64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut bi = b.into_iter();
    for x in a {
        out.push(x);
        if let Some(y) = bi.next() {
            out.push(y);
        }
    }
    out.extend(bi);
    out
}

/// Chain name used for the Uvarov interlacing of a given spec.
pub fn uvarov_chain_name(spec: &MeasureSpec) -> &'static str {
    match (spec.family, spec.a) {
        (ClassicalFamily::Laguerre { .. }, a) if a == 0.0 => "uvarov-laguerre-endpoint",
        (ClassicalFamily::Jacobi { .. }, a) if a == -1.0 => "uvarov-jacobi-left-endpoint",
        (ClassicalFamily::Jacobi { .. }, a) if a == 1.0 => "uvarov-jacobi-right-endpoint",
        _ => match spec.side() {
            Side::Left => "uvarov-left",
            Side::Right => "uvarov-right",
        },
    }
}

/// Verifies every interlacing chain applicable to `spec` at degree `n`:
/// classical `p_n` vs `p_{n+1}`, the kernel polynomials `p*_n` and `p**_n`
/// against the base family, and (for `N > 0`) the Uvarov chain.
pub fn interlacing_report(spec: &MeasureSpec, n: usize) -> Result<InterlacingReport> {
    if n == 0 {
        return Err(OpolyError::Domain("interlacing needs n >= 1".into()));
    }
    let mut chains = Vec::new();
    if let ClassicalFamily::Hermite = spec.family {
        let c = spec.family.recurrence(n + 1)?;
        let zn = jacobi_matrix_zeros(&c, n)?;
        let zn1 = jacobi_matrix_zeros(&c, n + 1)?;
        chains.push(check_chain(
            "classical",
            &alternate(labeled("x", n + 1, &zn1), labeled("x", n, &zn)),
        ));
        let holds = chains.iter().all(|c| c.holds);
        return Ok(InterlacingReport { n, chains, holds });
    }
    let fam = PerturbedFamily::new(spec, n + 1)?;
    let xn = jacobi_matrix_zeros(fam.base(), n)?;
    let xn1 = jacobi_matrix_zeros(fam.base(), n + 1)?;
    chains.push(check_chain(
        "classical",
        &alternate(labeled("x", n + 1, &xn1), labeled("x", n, &xn)),
    ));

    let xs = jacobi_matrix_zeros(fam.star(), n)?;
    let christoffel: Vec<(String, f64)> = {
        let mut v = Vec::new();
        for k in 0..=n {
            v.push((format!("x[{},{}]", n + 1, k + 1), xn1[k]));
            if k < n {
                let pn = (format!("x[{},{}]", n, k + 1), xn[k]);
                let ps = (format!("x*[{},{}]", n, k + 1), xs[k]);
                match spec.side() {
                    Side::Left => {
                        v.push(pn);
                        v.push(ps);
                    }
                    Side::Right => {
                        v.push(ps);
                        v.push(pn);
                    }
                }
            }
        }
        v
    };
    chains.push(check_chain("christoffel", &christoffel));

    let xs2 = jacobi_matrix_zeros(fam.star2(), n)?;
    chains.push(check_chain(
        "iterated-christoffel",
        &alternate(labeled("x", n + 1, &xn1), labeled("x**", n, &xs2)),
    ));

    if spec.mass > 0.0 {
        let u = fam.zeros(n)?.zeros;
        let s2 = if n >= 2 {
            jacobi_matrix_zeros(fam.star2(), n - 1)?
        } else {
            vec![]
        };
        let mut v = Vec::new();
        match spec.side() {
            Side::Left => {
                v.push(("a".to_string(), spec.a));
                for k in 0..n {
                    if k > 0 {
                        v.push((format!("x**[{},{}]", n - 1, k), s2[k - 1]));
                    }
                    v.push((format!("xN[{},{}]", n, k + 1), u[k]));
                    v.push((format!("x[{},{}]", n, k + 1), xn[k]));
                }
            }
            Side::Right => {
                for k in 0..n {
                    v.push((format!("x[{},{}]", n, k + 1), xn[k]));
                    v.push((format!("xN[{},{}]", n, k + 1), u[k]));
                    if k + 1 < n {
                        v.push((format!("x**[{},{}]", n - 1, k + 1), s2[k]));
                    }
                }
                v.push(("a".to_string(), spec.a));
            }
        }
        chains.push(check_chain(uvarov_chain_name(spec), &v));
    }
    let holds = chains.iter().all(|c| c.holds);
    Ok(InterlacingReport { n, chains, holds })
}

/// Direction in which the Uvarov zeros move as `N` grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Decreasing,
    Increasing,
}

impl Direction {
    pub fn for_side(side: Side) -> Self {
        match side {
            Side::Left => Direction::Decreasing,
            Side::Right => Direction::Increasing,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Some step moved by less than the round-off slack.
    Indeterminate,
}

/// Absolute slack below which a step is neither a pass nor a failure.
pub const MONOTONE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassScanResult {
    pub n: usize,
    pub spec: MeasureSpec,
    pub grid: Vec<f64>,
    pub zero_sets: Vec<ZeroSet>,
    pub direction: Direction,
    /// One verdict per zero index.
    pub verdicts: Vec<Verdict>,
    /// Smallest step in the prescribed direction, per zero index.
    pub min_margins: Vec<f64>,
    /// `N → ∞` limit of each zero.
    pub limits: Vec<f64>,
    /// Limiting value of `N (x_k^N - limit_k)` per zero index.
    pub rate_limits: Vec<f64>,
    /// `N (x_k^N - limit_k)` at every grid point (rows follow the grid).
    pub rate_estimates: Vec<Vec<f64>>,
}

impl MassScanResult {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| *v == Verdict::Pass)
    }
}

/// Zeros over a grid of masses with per-zero monotonicity verdicts.
pub fn mass_scan(spec: &MeasureSpec, n: usize, grid: &[f64]) -> Result<MassScanResult> {
    if grid.is_empty() {
        return Err(OpolyError::Domain("mass grid is empty".into()));
    }
    if grid.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
        return Err(OpolyError::Domain("masses must be finite and >= 0".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(OpolyError::Domain(
            "mass grid must be strictly increasing".into(),
        ));
    }
    if n == 0 {
        return Err(OpolyError::Domain("degree must be >= 1".into()));
    }
    let zero_sets = grid
        .par_iter()
        .map(|&m| uvarov_zeros(&spec.with_mass(m)?, n))
        .collect::<Result<Vec<_>>>()?;
    let direction = Direction::for_side(spec.side());
    let mut verdicts = Vec::with_capacity(n);
    let mut min_margins = Vec::with_capacity(n);
    for k in 0..n {
        let mut verdict = Verdict::Pass;
        let mut min_margin = f64::INFINITY;
        for w in zero_sets.windows(2) {
            let step = w[1].zeros[k] - w[0].zeros[k];
            let signed = match direction {
                Direction::Decreasing => -step,
                Direction::Increasing => step,
            };
            min_margin = min_margin.min(signed);
            if signed < -MONOTONE_SLACK || signed.is_nan() {
                verdict = Verdict::Fail;
            } else if signed <= MONOTONE_SLACK && verdict == Verdict::Pass {
                verdict = Verdict::Indeterminate;
            }
        }
        verdicts.push(verdict);
        min_margins.push(min_margin);
    }
    let rates = (0..n)
        .map(|k| convergence_rate_for_zero(spec, n, k))
        .collect::<Result<Vec<_>>>()?;
    let limits: Vec<f64> = rates.iter().map(|r| r.limit).collect();
    let rate_limits = rates.iter().map(|r| r.rate).collect();
    let rate_estimates = grid
        .iter()
        .zip(&zero_sets)
        .map(|(&m, zs)| {
            zs.zeros
                .iter()
                .zip(&limits)
                .map(|(&x, &l)| m * (x - l))
                .collect()
        })
        .collect();
    Ok(MassScanResult {
        n,
        spec: *spec,
        grid: grid.to_vec(),
        zero_sets,
        direction,
        verdicts,
        min_margins,
        limits,
        rate_limits,
        rate_estimates,
    })
}

/// Limit point and speed of one Uvarov zero as `N → ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateInfo {
    /// Zero index (0-based, increasing order) this describes.
    pub zero_index: usize,
    pub limit: f64,
    /// `lim N (x^N - limit)`, from the kernel formula.
    pub rate: f64,
    /// The same limit from the Gamma closed forms, available when `a` is a
    /// finite endpoint of a classical support.
    pub closed_form: Option<f64>,
}

/// `g_n(α) = Γ(n)Γ(α+2)Γ(α+3)/Γ(n+α+2)`.
pub fn laguerre_capture_rate(n: usize, alpha: f64) -> f64 {
    let n = n as f64;
    (lgamma(n) + lgamma(alpha + 2.0) + lgamma(alpha + 3.0) - lgamma(n + alpha + 2.0)).exp()
}

/// `h_n(α,β) = 2^{α+β+2}Γ(n)Γ(β+2)Γ(β+3)Γ(n+α) / (Γ(n+β+2)Γ(n+α+β+2))`.
pub fn jacobi_left_capture_rate(n: usize, alpha: f64, beta: f64) -> f64 {
    let n = n as f64;
    ((alpha + beta + 2.0) * std::f64::consts::LN_2 + lgamma(n) + lgamma(beta + 2.0)
        + lgamma(beta + 3.0)
        + lgamma(n + alpha)
        - lgamma(n + beta + 2.0)
        - lgamma(n + alpha + beta + 2.0))
        .exp()
}

/// `g_n(α,β) = 2^{α+β+2}Γ(n)Γ(α+2)Γ(α+3)Γ(n+β) / (Γ(n+α+2)Γ(n+α+β+2))`.
pub fn jacobi_right_capture_rate(n: usize, alpha: f64, beta: f64) -> f64 {
    jacobi_left_capture_rate(n, beta, alpha)
}

/// Classical family of the base measure when `a` is a finite endpoint, i.e.
/// the classical family after `christoffel_level` parameter shifts.
fn endpoint_base_family(spec: &MeasureSpec) -> Option<ClassicalFamily> {
    if !spec.at_boundary() {
        return None;
    }
    let mut fam = spec.family;
    for _ in 0..spec.christoffel_level {
        fam = boundary_christoffel(&fam, spec.a)?;
    }
    Some(fam)
}

/// Closed-form signed rate `lim N (x^N - limit)` for endpoint masses.
/// `interior_limit` is `None` for the captured zero.
fn closed_form_rate(fam: &ClassicalFamily, a: f64, n: usize, interior_limit: Option<f64>) -> f64 {
    match (*fam, interior_limit) {
        (ClassicalFamily::Laguerre { alpha }, None) => laguerre_capture_rate(n, alpha),
        (ClassicalFamily::Laguerre { alpha }, Some(_)) => {
            laguerre_capture_rate(n, alpha) / (alpha + 2.0)
        }
        (ClassicalFamily::Jacobi { alpha, beta }, lim) if a == -1.0 => {
            let h = jacobi_left_capture_rate(n, alpha, beta);
            match lim {
                None => h,
                Some(x) => (1.0 - x) * h / (2.0 * (beta + 2.0)),
            }
        }
        (ClassicalFamily::Jacobi { alpha, beta }, lim) => {
            let g = jacobi_right_capture_rate(n, alpha, beta);
            match lim {
                None => -g,
                Some(x) => -(1.0 + x) * g / (2.0 * (alpha + 2.0)),
            }
        }
        (ClassicalFamily::Hermite, _) => f64::NAN,
    }
}

/// Limit and rate for zero index `k` (0-based, increasing order).
pub fn convergence_rate_for_zero(spec: &MeasureSpec, n: usize, k: usize) -> Result<RateInfo> {
    if k >= n {
        return Err(OpolyError::Domain(format!("zero index {k} out of range for degree {n}")));
    }
    let captured = match spec.side() {
        Side::Left => k == 0,
        Side::Right => k + 1 == n,
    };
    let interior = if captured {
        None
    } else {
        Some(match spec.side() {
            Side::Left => k,
            Side::Right => k + 1,
        })
    };
    let info = convergence_rate(spec, n, interior.unwrap_or(0))?;
    Ok(RateInfo {
        zero_index: k,
        ..info
    })
}

/// Limit point and signed rate of convergence.
///
/// `k = 0` selects the zero captured by the mass point (limit `a`); `k >= 1`
/// selects the zero converging to `x**_{n-1,k}`, the `k`-th zero of the
/// second kernel polynomial of degree `n - 1`.
pub fn convergence_rate(spec: &MeasureSpec, n: usize, k: usize) -> Result<RateInfo> {
    if n == 0 || k > n.saturating_sub(1) {
        return Err(OpolyError::Domain(format!(
            "rate index k = {k} invalid for degree {n}"
        )));
    }
    let fam = PerturbedFamily::new(&spec.with_mass(0.0)?, n)?;
    let a = spec.a;
    let b_n = fam.kernel(n - 1);
    let (limit, rate, zero_index) = if k == 0 {
        let p = fam.base_jet(n, a)?.v;
        let q = fam.star2_jet(n - 1, a)?.v;
        let idx = match spec.side() {
            Side::Left => 0,
            Side::Right => n - 1,
        };
        (a, -p / (b_n * q), idx)
    } else {
        let xs2 = jacobi_matrix_zeros(fam.star2(), n - 1)?;
        let x = xs2[k - 1];
        let p = fam.base_jet(n, x)?.v;
        let dq = fam.star2_jet(n - 1, x)?.d;
        let idx = match spec.side() {
            Side::Left => k,
            Side::Right => k - 1,
        };
        (x, -p / (b_n * (x - a) * dq), idx)
    };
    let closed_form = endpoint_base_family(spec)
        .map(|f| closed_form_rate(&f, a, n, if k == 0 { None } else { Some(limit) }));
    Ok(RateInfo {
        zero_index,
        limit,
        rate,
        closed_form,
    })
}

/// Which hull endpoint a minimum-mass computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    Xi,
    Eta,
}

/// Mass at which the extreme zero reaches the hull endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinMass {
    pub n: usize,
    pub endpoint: f64,
    pub n0: f64,
}

/// `N_0 = -p_n(e) / (K_{n-1}(a,a) (e - a) p**_{n-1}(e))`, where `e` is the
/// hull endpoint facing `a`.
pub fn min_mass(spec: &MeasureSpec, n: usize, endpoint: Endpoint) -> Result<MinMass> {
    if n == 0 {
        return Err(OpolyError::Domain("degree must be >= 1".into()));
    }
    let hull = spec.hull();
    let e = match endpoint {
        Endpoint::Xi => {
            if !(spec.a < hull.xi) {
                return Err(OpolyError::Domain(format!(
                    "minimum mass at xi = {} needs a < xi, got a = {}",
                    hull.xi, spec.a
                )));
            }
            hull.xi
        }
        Endpoint::Eta => {
            if !(spec.a > hull.eta) {
                return Err(OpolyError::Domain(format!(
                    "minimum mass at eta = {} needs a > eta, got a = {}",
                    hull.eta, spec.a
                )));
            }
            hull.eta
        }
    };
    let fam = PerturbedFamily::new(&spec.with_mass(0.0)?, n)?;
    let p = fam.base_jet(n, e)?.v;
    let q = fam.star2_jet(n - 1, e)?.v;
    let n0 = -p / (fam.kernel(n - 1) * (e - spec.a) * q);
    Ok(MinMass {
        n,
        endpoint: e,
        n0,
    })
}

/// Endpoint facing `a`, or a domain error when `a` is on the hull.
pub fn facing_endpoint(spec: &MeasureSpec) -> Result<Endpoint> {
    let h = spec.hull();
    if spec.a < h.xi {
        Ok(Endpoint::Xi)
    } else if spec.a > h.eta {
        Ok(Endpoint::Eta)
    } else {
        Err(OpolyError::Domain(format!(
            "a = {} is not strictly outside the support hull [{}, {}]",
            spec.a, h.xi, h.eta
        )))
    }
}

/// Zeros of the monic polynomial of degree `degree` orthogonal with respect
/// to `e^{-x²} dx + N δ_0`, through the quadratic change of variables onto
/// Laguerre-type families (`α = -1/2` with the mass, `α = 1/2` without).
pub fn hermite_type_zeros(mass: f64, degree: usize) -> Result<ZeroSet> {
    if degree == 0 {
        return Err(OpolyError::Domain("degree must be >= 1".into()));
    }
    if !(mass.is_finite() && mass >= 0.0) {
        return Err(OpolyError::InvalidMeasure(format!(
            "mass must be finite and >= 0, got {mass}"
        )));
    }
    let m = degree / 2;
    let (positive, with_origin) = if degree % 2 == 0 {
        let spec = MeasureSpec::uvarov(ClassicalFamily::laguerre(-0.5)?, 0.0, mass)?;
        (uvarov_zeros(&spec, m)?.zeros, false)
    } else if m == 0 {
        (vec![], true)
    } else {
        let c = ClassicalFamily::laguerre(0.5)?.recurrence(m)?;
        (jacobi_matrix_zeros(&c, m)?, true)
    };
    let roots: Vec<f64> = positive.iter().map(|y| y.sqrt()).collect();
    let mut zeros: Vec<f64> = roots.iter().rev().map(|r| -r).collect();
    if with_origin {
        zeros.push(0.0);
    }
    zeros.extend(roots.iter().copied());
    let residual = scaled_residual(|x| hermite_type_jet(mass, degree, x), &zeros)?;
    Ok(ZeroSet {
        degree,
        brackets: separating_brackets(&zeros),
        zeros,
        method: ZeroMethod::Symmetrization,
        residual,
    })
}

/// Value and derivatives of the monic Hermite-type polynomial
/// (`H_{2m}(x) = L_m^{(-1/2,N)}(x²)`, `H_{2m+1}(x) = x L_m^{(1/2)}(x²)`).
pub fn hermite_type_jet(mass: f64, degree: usize, x: f64) -> Result<Jet> {
    let m = degree / 2;
    let t = x * x;
    let inner = if degree % 2 == 0 {
        let spec = MeasureSpec::uvarov(ClassicalFamily::laguerre(-0.5)?, 0.0, mass)?;
        PerturbedFamily::new(&spec, m.max(1))?.uvarov_jet(m, t)?
    } else {
        let c = ClassicalFamily::laguerre(0.5)?.recurrence(m.max(1))?;
        PolyEvaluator::new(&c).eval2(m, t)?
    };
    // q(x) = L(x²): q' = 2x L', q'' = 2L' + 4x² L''
    let q = Jet {
        v: inner.v,
        d: 2.0 * x * inner.d,
        d2: 2.0 * inner.d + 4.0 * t * inner.d2,
    };
    Ok(if degree % 2 == 0 {
        q
    } else {
        Jet {
            v: x * q.v,
            d: q.v + x * q.d,
            d2: 2.0 * q.d + x * q.d2,
        }
    })
}

/// `N [h^N_{2m,m}]²` along a sequence of masses. The square of the zero
/// closest to the origin approaches `g_m(-1/2) / N`.
pub fn hermite_capture_trend(m: usize, masses: &[f64]) -> Result<TrendReport> {
    if m == 0 {
        return Err(OpolyError::Domain("m must be >= 1".into()));
    }
    let points = masses
        .iter()
        .map(|&mass| {
            let z = hermite_type_zeros(mass, 2 * m)?;
            let h = z.zeros[m];
            Ok(TrendPoint {
                at: mass,
                value: mass * h * h,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TrendReport::new(
        format!("N h²[{},{}]", 2 * m, m),
        laguerre_capture_rate(m, -0.5),
        points,
    ))
}

/// Interlacing chains for the Hermite-type zeros of degree `2m` (squared
/// positive zeros against classical Laguerre `α = -1/2` and `α = 3/2`) and
/// degree `2m + 1` (squared zeros equal the Laguerre `α = 1/2` zeros, which
/// interlace with those of `α = 5/2`).
pub fn hermite_interlacing(mass: f64, m: usize) -> Result<InterlacingReport> {
    if m == 0 {
        return Err(OpolyError::Domain("m must be >= 1".into()));
    }
    let mut chains = Vec::new();
    let sq = |z: &ZeroSet| -> Vec<f64> {
        z.zeros.iter().filter(|&&v| v > 0.0).map(|v| v * v).collect()
    };
    let even = sq(&hermite_type_zeros(mass, 2 * m)?);
    let lag_m = jacobi_matrix_zeros(&ClassicalFamily::laguerre(-0.5)?.recurrence(m)?, m)?;
    let lag_p = if m >= 2 {
        jacobi_matrix_zeros(&ClassicalFamily::laguerre(1.5)?.recurrence(m)?, m - 1)?
    } else {
        vec![]
    };
    let mut v = vec![("0".to_string(), 0.0)];
    for k in 0..m {
        if k > 0 {
            v.push((format!("x[{},{}](3/2)", m - 1, k), lag_p[k - 1]));
        }
        v.push((format!("h2[{},{}]", 2 * m, m - k), even[k]));
        v.push((format!("x[{},{}](-1/2)", m, k + 1), lag_m[k]));
    }
    chains.push(check_chain("hermite-even", &v));

    let odd = sq(&hermite_type_zeros(mass, 2 * m + 1)?);
    let half = jacobi_matrix_zeros(&ClassicalFamily::laguerre(0.5)?.recurrence(m)?, m)?;
    let five_half = if m >= 2 {
        jacobi_matrix_zeros(&ClassicalFamily::laguerre(2.5)?.recurrence(m)?, m - 1)?
    } else {
        vec![]
    };
    let mut v = vec![("0".to_string(), 0.0)];
    for k in 0..m {
        if k > 0 {
            v.push((format!("x[{},{}](5/2)", m - 1, k), five_half[k - 1]));
        }
        v.push((format!("x[{},{}](1/2)", m, k + 1), half[k]));
    }
    chains.push(check_chain("hermite-odd", &v));
    // Squared odd zeros coincide with the α = 1/2 zeros.
    let worst = odd
        .iter()
        .zip(&half)
        .map(|(a, b)| (a - b).abs() / b)
        .fold(0.0_f64, f64::max);
    chains.push(ChainVerdict {
        name: "hermite-odd-squares".into(),
        holds: worst < 1e-12 && odd.len() == half.len(),
        min_margin: -worst,
        links: half.len(),
        offending: None,
    });
    let holds = chains.iter().all(|c| c.holds);
    Ok(InterlacingReport {
        n: m,
        chains,
        holds,
    })
}
