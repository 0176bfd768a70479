//! Gauss rules of a recurrence family: nodes are the zeros of `p_m`, weights
//! are the Christoffel numbers `1 / K_{m-1}(x_k, x_k)`.

use crate::classical::RecurrenceCoeffs;
use crate::error::Result;
use crate::eval::kernel_diag;
use crate::tridiag::jacobi_matrix_zeros;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// `m`-point rule, exact for polynomials of degree `2m - 1`.
    pub fn new(coeffs: &RecurrenceCoeffs, m: usize) -> Result<Self> {
        let nodes = jacobi_matrix_zeros(coeffs, m)?;
        let weights = nodes
            .iter()
            .map(|&x| kernel_diag(coeffs, x, m - 1).map(|k| 1.0 / k))
            .collect::<Result<Vec<_>>>()?;
        Ok(GaussRule { nodes, weights })
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::ClassicalFamily;

    #[test]
    fn legendre_moments() {
        let c = ClassicalFamily::jacobi(0.0, 0.0)
            .unwrap()
            .recurrence(10)
            .unwrap();
        let g = GaussRule::new(&c, 5).unwrap();
        assert!((g.integrate(|_| 1.0) - 2.0).abs() < 1e-14);
        assert!((g.integrate(|x| x.powi(8)) - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn laguerre_moments() {
        // ∫ x^k x e^{-x} dx = (k+1)!
        let c = ClassicalFamily::laguerre(1.0)
            .unwrap()
            .recurrence(10)
            .unwrap();
        let g = GaussRule::new(&c, 6).unwrap();
        assert!((g.integrate(|x| x.powi(5)) - 720.0).abs() < 1e-9);
    }
}
