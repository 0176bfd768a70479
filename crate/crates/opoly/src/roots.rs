//! Bracketed root refinement: bisection followed by a short Newton polish
//! that is never allowed to leave the current bracket.

use crate::error::{OpolyError, Result};

/// Bisection stops once the bracket is narrower than
/// `BISECTION_REL_WIDTH * (1 + max(|lo|, |hi|))`.
pub const BISECTION_REL_WIDTH: f64 = 1e-13;
/// Upper bound on Newton steps after bisection.
pub const MAX_NEWTON_STEPS: usize = 4;

/// Refines a simple root of `f` in `[lo, hi]` where `f(lo)` and `f(hi)` have
/// opposite signs (or one of them vanishes). `f` returns `(value, derivative)`.
///
/// `index` is only used to label a [`OpolyError::BracketFailure`].
pub fn bisect_newton<F>(f: F, lo: f64, hi: f64, index: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let mut flo = f(lo)?.0;
    let fhi = f(hi)?.0;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return Err(OpolyError::BracketFailure { index, lo, hi });
    }
    let width_tol = BISECTION_REL_WIDTH * (1.0 + lo.abs().max(hi.abs()));
    while hi - lo > width_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?.0;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_NEWTON_STEPS {
        let (v, d) = f(x)?;
        if v == 0.0 {
            return Ok(x);
        }
        if v.signum() == flo.signum() {
            lo = x;
        } else {
            hi = x;
        }
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let cand = x - v / d;
        if !(cand >= lo && cand <= hi) || cand == x {
            break;
        }
        x = cand;
    }
    Ok(x)
}
