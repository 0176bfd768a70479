//! Classical families (Jacobi, Laguerre, Hermite) and their recurrence data.

use crate::error::{OpolyError, Result};
use crate::poly::Poly;
use crate::special::lgamma;
use serde::{Deserialize, Serialize};

/// A classical weight. Parameters are validated by the constructors; build
/// the enum directly only with values you have already checked, or call
/// [`ClassicalFamily::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ClassicalFamily {
    /// `(1-x)^alpha (1+x)^beta` on `[-1, 1]`.
    Jacobi { alpha: f64, beta: f64 },
    /// `x^alpha e^{-x}` on `[0, inf)`.
    Laguerre { alpha: f64 },
    /// `e^{-x^2}` on the real line.
    Hermite,
}

/// Convex hull `[xi, eta]` of the support. Infinite ends are `±inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Support {
    pub xi: f64,
    pub eta: f64,
}

impl Support {
    /// `true` when `x` lies strictly between the hull endpoints.
    pub fn contains_interior(&self, x: f64) -> bool {
        x > self.xi && x < self.eta
    }
}

fn check_param(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v <= -1.0 {
        return Err(OpolyError::InvalidMeasure(format!(
            "{name} must be a finite real > -1, got {v}"
        )));
    }
    Ok(())
}

impl ClassicalFamily {
    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        check_param("alpha", alpha)?;
        check_param("beta", beta)?;
        Ok(ClassicalFamily::Jacobi { alpha, beta })
    }

    pub fn laguerre(alpha: f64) -> Result<Self> {
        check_param("alpha", alpha)?;
        Ok(ClassicalFamily::Laguerre { alpha })
    }

    pub fn hermite() -> Self {
        ClassicalFamily::Hermite
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ClassicalFamily::Jacobi { alpha, beta } => {
                check_param("alpha", alpha)?;
                check_param("beta", beta)
            }
            ClassicalFamily::Laguerre { alpha } => check_param("alpha", alpha),
            ClassicalFamily::Hermite => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClassicalFamily::Jacobi { .. } => "jacobi",
            ClassicalFamily::Laguerre { .. } => "laguerre",
            ClassicalFamily::Hermite => "hermite",
        }
    }

    pub fn support(&self) -> Support {
        match self {
            ClassicalFamily::Jacobi { .. } => Support { xi: -1.0, eta: 1.0 },
            ClassicalFamily::Laguerre { .. } => Support {
                xi: 0.0,
                eta: f64::INFINITY,
            },
            ClassicalFamily::Hermite => Support {
                xi: f64::NEG_INFINITY,
                eta: f64::INFINITY,
            },
        }
    }

    /// `∫ dμ`.
    pub fn total_mass(&self) -> f64 {
        match *self {
            ClassicalFamily::Jacobi { alpha, beta } => {
                let log = (alpha + beta + 1.0) * std::f64::consts::LN_2 + lgamma(alpha + 1.0)
                    + lgamma(beta + 1.0)
                    - lgamma(alpha + beta + 2.0);
                log.exp()
            }
            ClassicalFamily::Laguerre { alpha } => lgamma(alpha + 1.0).exp(),
            ClassicalFamily::Hermite => std::f64::consts::PI.sqrt(),
        }
    }

    /// `β_n`.
    pub fn beta_n(&self, n: usize) -> f64 {
        let nf = n as f64;
        match *self {
            ClassicalFamily::Jacobi { alpha, beta } => {
                let s = alpha + beta;
                if n == 0 {
                    (beta - alpha) / (s + 2.0)
                } else {
                    let t = 2.0 * nf + s;
                    (beta * beta - alpha * alpha) / (t * (t + 2.0))
                }
            }
            ClassicalFamily::Laguerre { alpha } => 2.0 * nf + alpha + 1.0,
            ClassicalFamily::Hermite => 0.0,
        }
    }

    /// `γ_n` for `n >= 1`.
    pub fn gamma_n(&self, n: usize) -> f64 {
        assert!(n >= 1, "gamma_n is defined for n >= 1");
        let nf = n as f64;
        match *self {
            ClassicalFamily::Jacobi { alpha, beta } => {
                let s = alpha + beta;
                if n == 1 {
                    // The generic quotient is 0/0 when alpha + beta = -1.
                    4.0 * (1.0 + alpha) * (1.0 + beta) / ((s + 2.0).powi(2) * (s + 3.0))
                } else {
                    let t = 2.0 * nf + s;
                    4.0 * nf * (nf + alpha) * (nf + beta) * (nf + s)
                        / ((t - 1.0) * t * t * (t + 1.0))
                }
            }
            ClassicalFamily::Laguerre { alpha } => nf * (nf + alpha),
            ClassicalFamily::Hermite => nf / 2.0,
        }
    }

    /// Recurrence data `β_0..β_{n_max}`, `γ_1..γ_{n_max}`, enough to evaluate
    /// monic polynomials up to degree `n_max + 1`.
    pub fn recurrence(&self, n_max: usize) -> Result<RecurrenceCoeffs> {
        self.validate()?;
        if n_max < 1 {
            return Err(OpolyError::Domain("n_max must be at least 1".into()));
        }
        let beta = (0..=n_max).map(|n| self.beta_n(n)).collect();
        let mut gamma = vec![0.0];
        gamma.extend((1..=n_max).map(|n| self.gamma_n(n)));
        RecurrenceCoeffs::new(beta, gamma, self.total_mass())
    }

    /// Pearson pair `(σ, τ)` with `(σ w)' = τ w`.
    pub fn pearson(&self) -> (Poly, Poly) {
        match *self {
            ClassicalFamily::Jacobi { alpha, beta } => (
                Poly::new(vec![1.0, 0.0, -1.0]),
                Poly::linear(beta - alpha, -(alpha + beta + 2.0)),
            ),
            ClassicalFamily::Laguerre { alpha } => {
                (Poly::linear(0.0, 1.0), Poly::linear(alpha + 1.0, -1.0))
            }
            ClassicalFamily::Hermite => (Poly::constant(1.0), Poly::linear(0.0, -2.0)),
        }
    }

    /// Weight function value (unnormalized), used by quadrature oracles.
    pub fn weight(&self, x: f64) -> f64 {
        match *self {
            ClassicalFamily::Jacobi { alpha, beta } => {
                if x.abs() >= 1.0 {
                    0.0
                } else {
                    (1.0 - x).powf(alpha) * (1.0 + x).powf(beta)
                }
            }
            ClassicalFamily::Laguerre { alpha } => {
                if x <= 0.0 {
                    0.0
                } else {
                    x.powf(alpha) * (-x).exp()
                }
            }
            ClassicalFamily::Hermite => (-x * x).exp(),
        }
    }
}

/// `classical_recurrence(family, n_max)`.
pub fn classical_recurrence(family: &ClassicalFamily, n_max: usize) -> Result<RecurrenceCoeffs> {
    family.recurrence(n_max)
}

/// Three-term recurrence data `p_{n+1} = (x - β_n) p_n - γ_n p_{n-1}`.
///
/// `gamma[0]` is a placeholder (always 0) so that `gamma[n]` is `γ_n`.
/// Both vectors have the same length `L`, which allows evaluation of monic
/// polynomials through degree `L` and orthonormal ones through `L - 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceCoeffs {
    beta: Vec<f64>,
    gamma: Vec<f64>,
    total_mass: f64,
}

impl RecurrenceCoeffs {
    pub fn new(beta: Vec<f64>, gamma: Vec<f64>, total_mass: f64) -> Result<Self> {
        if beta.len() != gamma.len() || beta.is_empty() {
            return Err(OpolyError::InvalidMeasure(format!(
                "inconsistent recurrence lengths: {} betas, {} gammas",
                beta.len(),
                gamma.len()
            )));
        }
        if !(total_mass.is_finite() && total_mass > 0.0) {
            return Err(OpolyError::InvalidMeasure(format!(
                "total mass must be positive, got {total_mass}"
            )));
        }
        if let Some((n, &g)) = gamma
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &g)| !(g.is_finite() && g > 0.0))
        {
            return Err(OpolyError::Breakdown(format!(
                "gamma_{n} = {g} is not positive"
            )));
        }
        if let Some(n) = beta.iter().position(|b| !b.is_finite()) {
            return Err(OpolyError::Breakdown(format!("beta_{n} is not finite")));
        }
        let mut gamma = gamma;
        gamma[0] = 0.0;
        Ok(RecurrenceCoeffs {
            beta,
            gamma,
            total_mass,
        })
    }

    /// Number of stored `β` values (`n_max + 1`).
    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    /// Largest degree whose monic polynomial can be evaluated.
    pub fn max_degree(&self) -> usize {
        self.beta.len()
    }

    pub fn beta(&self, n: usize) -> f64 {
        self.beta[n]
    }

    /// `γ_n`, `n >= 1`.
    pub fn gamma(&self, n: usize) -> f64 {
        debug_assert!(n >= 1);
        self.gamma[n]
    }

    pub fn betas(&self) -> &[f64] {
        &self.beta
    }

    /// `γ_1, γ_2, ...`
    pub fn gammas(&self) -> &[f64] {
        &self.gamma[1..]
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Copy truncated to `len` entries.
    pub fn truncated(&self, len: usize) -> Result<Self> {
        if len == 0 || len > self.len() {
            return Err(OpolyError::Length {
                requested: len,
                available: self.len(),
            });
        }
        Ok(RecurrenceCoeffs {
            beta: self.beta[..len].to_vec(),
            gamma: self.gamma[..len].to_vec(),
            total_mass: self.total_mass,
        })
    }

    pub(crate) fn require_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree() {
            Err(OpolyError::Length {
                requested: n,
                available: self.max_degree(),
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_orthonormal(&self, n: usize) -> Result<()> {
        if n + 1 > self.len() {
            Err(OpolyError::Length {
                requested: n,
                available: self.len() - 1,
            })
        } else {
            Ok(())
        }
    }
}
