//! Eigenvalues of symmetric tridiagonal matrices by the implicit QL method,
//! and the Jacobi-matrix route to zeros of a recurrence family.

use crate::classical::RecurrenceCoeffs;
use crate::error::{OpolyError, Result};
use crate::eval::PolyEvaluator;

const MAX_SWEEPS: usize = 60;

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with diagonal
/// `diag` and sub/super-diagonal `off` (`off.len() == diag.len() - 1`).
pub fn symmetric_tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if off.len() + 1 != n {
        return Err(OpolyError::Domain(format!(
            "tridiagonal matrix of size {n} needs {} off-diagonal entries, got {}",
            n - 1,
            off.len()
        )));
    }
    let mut d = diag.to_vec();
    let mut e: Vec<f64> = off.iter().copied().chain(std::iter::once(0.0)).collect();

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(OpolyError::NoConvergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// Zeros of `p_n` as eigenvalues of the `n x n` Jacobi matrix, each followed
/// by a guarded Newton polish on the recurrence (a step is kept only if it
/// reduces `|p_n|`).
pub fn jacobi_matrix_zeros(coeffs: &RecurrenceCoeffs, n: usize) -> Result<Vec<f64>> {
    coeffs.require_degree(n)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let diag: Vec<f64> = (0..n).map(|k| coeffs.beta(k)).collect();
    let off: Vec<f64> = (1..n).map(|k| coeffs.gamma(k).sqrt()).collect();
    let mut z = symmetric_tridiagonal_eigenvalues(&diag, &off)?;
    let ev = PolyEvaluator::new(coeffs);
    for x in z.iter_mut() {
        for _ in 0..3 {
            let (v, d) = ev.eval(n, *x)?;
            if v == 0.0 || d == 0.0 || !d.is_finite() {
                break;
            }
            let cand = *x - v / d;
            let (vc, _) = ev.eval(n, cand)?;
            if vc.abs() < v.abs() {
                *x = cand;
            } else {
                break;
            }
        }
    }
    z.sort_by(|a, b| a.total_cmp(b));
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        // [[2,1],[1,2]] has eigenvalues 1, 3
        let ev = symmetric_tridiagonal_eigenvalues(&[2.0, 2.0], &[1.0]).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-15 && (ev[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn discrete_laplacian() {
        // diag 2, off -1: eigenvalues 2 - 2 cos(kπ/(n+1))
        let n = 12;
        let ev = symmetric_tridiagonal_eigenvalues(&vec![2.0; n], &vec![-1.0; n - 1]).unwrap();
        for (k, v) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13, "{v} vs {exact}");
        }
    }

    #[test]
    fn split_matrix() {
        let ev = symmetric_tridiagonal_eigenvalues(&[5.0, -1.0, 3.0], &[0.0, 0.0]).unwrap();
        assert_eq!(ev, vec![-1.0, 3.0, 5.0]);
    }
}
