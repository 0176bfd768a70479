//! Dense real polynomials in ascending coefficient order.
//!
//! Used for the small fixed-degree objects of the structure relations
//! (σ, τ, φ, ψ, A, B, Q); degrees never exceed a handful.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Poly {
    /// `coeffs[k]` multiplies `x^k`.
    pub coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    /// `c0 + c1 x`
    pub fn linear(c0: f64, c1: f64) -> Self {
        Poly::new(vec![c0, c1])
    }

    /// `x - r`
    pub fn monomial_root(r: f64) -> Self {
        Poly::new(vec![-r, 1.0])
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(&c) if c == 0.0) {
            self.coeffs.pop();
        }
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Sum of `|c_k x^k|`, the natural magnitude against which cancellation in
    /// `eval` is measured.
    pub fn eval_abs(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Synthetic division by `x - r`: returns `(quotient, remainder)`.
    pub fn div_linear(&self, r: f64) -> (Poly, f64) {
        let mut q = vec![0.0; self.coeffs.len().saturating_sub(1)];
        let mut carry = 0.0;
        for k in (0..self.coeffs.len()).rev() {
            carry = carry * r + self.coeffs[k];
            if k > 0 {
                q[k - 1] = carry;
            }
        }
        (Poly::new(q), carry)
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, &c| m.max(c.abs()))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0.0 { '-' } else { '+' })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            let m = c.abs();
            match k {
                0 => write!(f, "{m}")?,
                1 => write!(f, "{m}x")?,
                _ => write!(f, "{m}x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = Poly::new(vec![1.0, 2.0]); // 1 + 2x
        let q = Poly::new(vec![-1.0, 0.0, 3.0]); // -1 + 3x^2
        assert_eq!((&p + &q).coeffs, vec![0.0, 2.0, 3.0]);
        assert_eq!((&p * &q).coeffs, vec![-1.0, -2.0, 3.0, 6.0]);
        assert_eq!(q.derivative().coeffs, vec![0.0, 6.0]);
        assert_eq!((&p - &p).degree(), None);
        assert!((q.eval(2.0) - 11.0).abs() < 1e-15);
    }

    #[test]
    fn synthetic_division() {
        // 1 - x^2 = (x + 1)(1 - x)
        let (q, rem) = Poly::new(vec![1.0, 0.0, -1.0]).div_linear(-1.0);
        assert_eq!(q.coeffs, vec![1.0, -1.0]);
        assert_eq!(rem, 0.0);
        let (_, rem) = Poly::new(vec![2.0, 3.0]).div_linear(1.0);
        assert_eq!(rem, 5.0);
    }

    #[test]
    fn display() {
        let p = Poly::new(vec![-1.0, 0.0, 3.0]);
        assert_eq!(p.to_string(), "3x^2 - 1");
    }
}
