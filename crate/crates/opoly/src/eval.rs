//! Recurrence-driven evaluation: monic and orthonormal values with
//! derivatives, ratio sequences `p_{n+1}(a)/p_n(a)`, Christoffel–Darboux
//! kernels and norms.
//!
//! Values are propagated with a shared binary exponent so that intermediate
//! quantities never overflow; only the final result is converted back to a
//! plain `f64` (which may legitimately be `±inf` for very large degrees).

use crate::classical::RecurrenceCoeffs;
use crate::error::{OpolyError, Result};

const RESCALE_BITS: i32 = 600;
const BIG: f64 = 4.149515568880993e180; // 2^600
const SMALL: f64 = 2.409919865102884e-181; // 2^-600

/// `m · 2^e` without intermediate overflow in the power of two.
pub fn ldexp(m: f64, mut e: i64) -> f64 {
    let mut v = m;
    while e > 0 && v != 0.0 && v.is_finite() {
        let s = e.min(1000) as i32;
        v *= 2f64.powi(s);
        e -= s as i64;
    }
    while e < 0 && v != 0.0 && v.is_finite() {
        let s = (-e).min(1000) as i32;
        v *= 2f64.powi(-s);
        e += s as i64;
    }
    v
}

/// Value and first two derivatives of one polynomial.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d: f64,
    pub d2: f64,
}

impl Jet {
    fn scale(self, s: f64) -> Jet {
        Jet {
            v: self.v * s,
            d: self.d * s,
            d2: self.d2 * s,
        }
    }
    fn max_abs(self) -> f64 {
        self.v.abs().max(self.d.abs()).max(self.d2.abs())
    }
}

/// Two consecutive members `(q_{n-1}, q_n)` sharing the exponent `exp2`:
/// the true jets are `prev·2^exp2` and `cur·2^exp2`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledPair {
    pub prev: Jet,
    pub cur: Jet,
    pub exp2: i64,
}

impl ScaledPair {
    pub fn value(&self) -> Jet {
        Jet {
            v: ldexp(self.cur.v, self.exp2),
            d: ldexp(self.cur.d, self.exp2),
            d2: ldexp(self.cur.d2, self.exp2),
        }
    }
    pub fn prev_value(&self) -> Jet {
        Jet {
            v: ldexp(self.prev.v, self.exp2),
            d: ldexp(self.prev.d, self.exp2),
            d2: ldexp(self.prev.d2, self.exp2),
        }
    }
}

/// Evaluator for the family defined by a [`RecurrenceCoeffs`].
#[derive(Debug, Clone, Copy)]
pub struct PolyEvaluator<'a> {
    coeffs: &'a RecurrenceCoeffs,
}

impl<'a> PolyEvaluator<'a> {
    pub fn new(coeffs: &'a RecurrenceCoeffs) -> Self {
        PolyEvaluator { coeffs }
    }

    pub fn coeffs(&self) -> &'a RecurrenceCoeffs {
        self.coeffs
    }

    /// Monic `(p_{n-1}, p_n)` jets at `x` in scaled form. For `n = 0` the
    /// `prev` slot holds `p_{-1} = 0`.
    pub fn monic_scaled(&self, n: usize, x: f64) -> Result<ScaledPair> {
        self.coeffs.require_degree(n)?;
        let c = self.coeffs;
        let mut prev = Jet::default();
        let mut cur = Jet {
            v: 1.0,
            d: 0.0,
            d2: 0.0,
        };
        let mut exp2 = 0i64;
        for k in 0..n {
            let t = x - c.beta(k);
            let g = if k == 0 { 0.0 } else { c.gamma(k) };
            let next = Jet {
                v: t * cur.v - g * prev.v,
                d: cur.v + t * cur.d - g * prev.d,
                d2: 2.0 * cur.d + t * cur.d2 - g * prev.d2,
            };
            prev = cur;
            cur = next;
            rescale(&mut prev, &mut cur, &mut exp2);
        }
        Ok(ScaledPair { prev, cur, exp2 })
    }

    /// Orthonormal `(p̂_{n-1}, p̂_n)` jets, `p̂_n = p_n / ‖p_n‖`.
    pub fn orthonormal_scaled(&self, n: usize, x: f64) -> Result<ScaledPair> {
        self.coeffs.require_orthonormal(n)?;
        let c = self.coeffs;
        let mut prev = Jet::default();
        let mut cur = Jet {
            v: 1.0 / c.total_mass().sqrt(),
            d: 0.0,
            d2: 0.0,
        };
        let mut exp2 = 0i64;
        let mut sg_prev = 0.0;
        for k in 0..n {
            let t = x - c.beta(k);
            let sg_next = c.gamma(k + 1).sqrt();
            let next = Jet {
                v: (t * cur.v - sg_prev * prev.v) / sg_next,
                d: (cur.v + t * cur.d - sg_prev * prev.d) / sg_next,
                d2: (2.0 * cur.d + t * cur.d2 - sg_prev * prev.d2) / sg_next,
            };
            prev = cur;
            cur = next;
            sg_prev = sg_next;
            rescale(&mut prev, &mut cur, &mut exp2);
        }
        Ok(ScaledPair { prev, cur, exp2 })
    }

    /// `(p_n(x), p_n'(x))`.
    pub fn eval(&self, n: usize, x: f64) -> Result<(f64, f64)> {
        let j = self.monic_scaled(n, x)?.value();
        Ok((j.v, j.d))
    }

    /// `(p_n, p_n', p_n'')` at `x`.
    pub fn eval2(&self, n: usize, x: f64) -> Result<Jet> {
        Ok(self.monic_scaled(n, x)?.value())
    }

    /// `p_n(x)` alone.
    pub fn value(&self, n: usize, x: f64) -> Result<f64> {
        Ok(self.eval(n, x)?.0)
    }

    /// `p̂_n(x)`.
    pub fn orthonormal(&self, n: usize, x: f64) -> Result<f64> {
        Ok(self.orthonormal_scaled(n, x)?.value().v)
    }

    /// `p_0(x), ..., p_n(x)` (unscaled; intended for moderate degrees).
    pub fn sequence(&self, n: usize, x: f64) -> Result<Vec<f64>> {
        self.coeffs.require_degree(n)?;
        let c = self.coeffs;
        let mut out = Vec::with_capacity(n + 1);
        out.push(1.0);
        if n >= 1 {
            out.push(x - c.beta(0));
        }
        for k in 1..n {
            let v = (x - c.beta(k)) * out[k] - c.gamma(k) * out[k - 1];
            out.push(v);
        }
        Ok(out)
    }
}

fn rescale(prev: &mut Jet, cur: &mut Jet, exp2: &mut i64) {
    let m = prev.max_abs().max(cur.max_abs());
    if m > BIG {
        *prev = prev.scale(SMALL);
        *cur = cur.scale(SMALL);
        *exp2 += RESCALE_BITS as i64;
    } else if m < SMALL && m > 0.0 {
        *prev = prev.scale(BIG);
        *cur = cur.scale(BIG);
        *exp2 -= RESCALE_BITS as i64;
    }
}

/// `(p_n(x), p_n'(x))` for the family of `ev`.
pub fn eval_with_derivative(ev: &PolyEvaluator<'_>, n: usize, x: f64) -> Result<(f64, f64)> {
    ev.eval(n, x)
}

/// Threshold below which a ratio denominator is considered a breakdown.
const RATIO_FLOOR: f64 = 1e-250;

/// `r_0, ..., r_{count-1}` with `r_k = p_{k+1}(a)/p_k(a)`.
///
/// Needs `β_0..β_{count-1}` and `γ_1..γ_{count-1}`.
pub fn ratios(coeffs: &RecurrenceCoeffs, a: f64, count: usize) -> Result<Vec<f64>> {
    if count > coeffs.len() {
        return Err(OpolyError::Length {
            requested: count,
            available: coeffs.len(),
        });
    }
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let r = if k == 0 {
            a - coeffs.beta(0)
        } else {
            let prev: f64 = out[k - 1];
            if !(prev.abs() >= RATIO_FLOOR) {
                return Err(OpolyError::RatioBreakdown {
                    n: k - 1,
                    value: prev.abs(),
                });
            }
            (a - coeffs.beta(k)) - coeffs.gamma(k) / prev
        };
        if !r.is_finite() {
            return Err(OpolyError::RatioBreakdown {
                n: k,
                value: r.abs(),
            });
        }
        out.push(r);
    }
    if let Some(&last) = out.last() {
        if last.abs() < RATIO_FLOOR {
            return Err(OpolyError::RatioBreakdown {
                n: count - 1,
                value: last.abs(),
            });
        }
    }
    Ok(out)
}

/// `r_n = p_{n+1}(a)/p_n(a)`.
pub fn ratio_at(coeffs: &RecurrenceCoeffs, a: f64, n: usize) -> Result<f64> {
    Ok(*ratios(coeffs, a, n + 1)?.last().expect("nonempty"))
}

/// `‖p_n‖² = μ_0 Π_{j≤n} γ_j`.
pub fn squared_norm(coeffs: &RecurrenceCoeffs, n: usize) -> Result<f64> {
    Ok(log_squared_norm(coeffs, n)?.exp())
}

/// `ln ‖p_n‖²`.
pub fn log_squared_norm(coeffs: &RecurrenceCoeffs, n: usize) -> Result<f64> {
    coeffs.require_orthonormal(n)?;
    Ok(coeffs.total_mass().ln() + (1..=n).map(|j| coeffs.gamma(j).ln()).sum::<f64>())
}

/// Running partial sums `K_n(a,a) = Σ_{j≤n} p̂_j(a)²`.
///
/// Iterating yields `K_0, K_1, ...` until the coefficients run out.
#[derive(Debug, Clone)]
pub struct KernelAccumulator<'a> {
    coeffs: &'a RecurrenceCoeffs,
    a: f64,
    next_n: usize,
    prev: f64,
    cur: f64,
    /// The true `p̂` values are `prev·2^exp2`, `cur·2^exp2`.
    exp2: i64,
    /// Sum stored as `sum·2^sum_exp2`.
    sum: f64,
    sum_exp2: i64,
}

impl<'a> KernelAccumulator<'a> {
    pub fn new(coeffs: &'a RecurrenceCoeffs, a: f64) -> Self {
        KernelAccumulator {
            coeffs,
            a,
            next_n: 0,
            prev: 0.0,
            cur: 1.0 / coeffs.total_mass().sqrt(),
            exp2: 0,
            sum: 0.0,
            sum_exp2: 0,
        }
    }

    pub fn point(&self) -> f64 {
        self.a
    }

    /// Index of the partial sum returned by the next call to `next`.
    pub fn next_index(&self) -> usize {
        self.next_n
    }

    fn add_square(&mut self) {
        // term = cur² · 2^(2 exp2)
        let term = self.cur * self.cur;
        let term_exp = 2 * self.exp2;
        if self.sum == 0.0 {
            self.sum = term;
            self.sum_exp2 = term_exp;
            return;
        }
        // Bring both to the larger exponent.
        if term_exp >= self.sum_exp2 {
            self.sum = ldexp(self.sum, self.sum_exp2 - term_exp) + term;
            self.sum_exp2 = term_exp;
        } else {
            self.sum += ldexp(term, term_exp - self.sum_exp2);
        }
        if self.sum > BIG {
            self.sum *= SMALL;
            self.sum_exp2 += RESCALE_BITS as i64;
        }
    }
}

impl Iterator for KernelAccumulator<'_> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let n = self.next_n;
        if n >= self.coeffs.len() {
            return None;
        }
        if n > 0 {
            let c = self.coeffs;
            let k = n - 1;
            let sg_prev = if k == 0 { 0.0 } else { c.gamma(k).sqrt() };
            let next = ((self.a - c.beta(k)) * self.cur - sg_prev * self.prev) / c.gamma(n).sqrt();
            self.prev = self.cur;
            self.cur = next;
            let m = self.prev.abs().max(self.cur.abs());
            if m > BIG {
                self.prev *= SMALL;
                self.cur *= SMALL;
                self.exp2 += RESCALE_BITS as i64;
            } else if m < SMALL && m > 0.0 {
                self.prev *= BIG;
                self.cur *= BIG;
                self.exp2 -= RESCALE_BITS as i64;
            }
        }
        self.add_square();
        self.next_n += 1;
        Some(ldexp(self.sum, self.sum_exp2))
    }
}

/// `K_n(a,a)`.
pub fn kernel_diag(coeffs: &RecurrenceCoeffs, a: f64, n: usize) -> Result<f64> {
    coeffs.require_orthonormal(n)?;
    Ok(KernelAccumulator::new(coeffs, a)
        .nth(n)
        .expect("length checked"))
}

/// `K_0(a,a), ..., K_n(a,a)`.
pub fn kernel_diag_sequence(coeffs: &RecurrenceCoeffs, a: f64, n: usize) -> Result<Vec<f64>> {
    coeffs.require_orthonormal(n)?;
    Ok(KernelAccumulator::new(coeffs, a).take(n + 1).collect())
}

/// Relative distance below which [`kernel_value`] switches to the confluent
/// (Taylor) form of the Christoffel–Darboux quotient.
pub const CONFLUENT_SWITCH: f64 = 1e-6;

/// `K_n(x, a) = Σ_{j≤n} p_j(x) p_j(a) / ‖p_j‖²`.
///
/// Uses the Christoffel–Darboux quotient when `x` is away from `a` and a
/// second-order expansion of it around `a` otherwise. When the coefficients
/// do not reach degree `n + 1` the plain sum is used instead.
pub fn kernel_value(coeffs: &RecurrenceCoeffs, a: f64, x: f64, n: usize) -> Result<f64> {
    coeffs.require_orthonormal(n)?;
    if n + 2 > coeffs.len() {
        return kernel_value_direct(coeffs, a, x, n);
    }
    let ev = PolyEvaluator::new(coeffs);
    let px = ev.orthonormal_scaled(n + 1, x)?;
    let pa = ev.orthonormal_scaled(n + 1, a)?;
    let sg = coeffs.gamma(n + 1).sqrt();
    let exp = px.exp2 + pa.exp2;
    // f(t) = sg [p̂_{n+1}(t) p̂_n(a) - p̂_n(t) p̂_{n+1}(a)], f(a) = 0, K = f(x)/(x-a)
    let h = x - a;
    if h.abs() > CONFLUENT_SWITCH * (1.0 + a.abs()) {
        let f = sg * (px.cur.v * pa.prev.v - px.prev.v * pa.cur.v);
        Ok(ldexp(f / h, exp))
    } else {
        let f1 = sg * (pa.cur.d * pa.prev.v - pa.prev.d * pa.cur.v);
        let f2 = sg * (pa.cur.d2 * pa.prev.v - pa.prev.d2 * pa.cur.v);
        Ok(ldexp(f1 + 0.5 * f2 * h, exp))
    }
}

/// `K_n(x, a)` by direct summation of orthonormal products.
pub fn kernel_value_direct(coeffs: &RecurrenceCoeffs, a: f64, x: f64, n: usize) -> Result<f64> {
    coeffs.require_orthonormal(n)?;
    let c = coeffs;
    let mut px = (0.0, 1.0 / c.total_mass().sqrt());
    let mut pa = px;
    let mut sum = px.1 * pa.1;
    for k in 0..n {
        let sg_prev = if k == 0 { 0.0 } else { c.gamma(k).sqrt() };
        let sg = c.gamma(k + 1).sqrt();
        px = (px.1, ((x - c.beta(k)) * px.1 - sg_prev * px.0) / sg);
        pa = (pa.1, ((a - c.beta(k)) * pa.1 - sg_prev * pa.0) / sg);
        sum += px.1 * pa.1;
    }
    Ok(sum)
}
