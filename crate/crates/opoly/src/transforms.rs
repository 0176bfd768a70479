//! Christoffel (`(x-a) dμ`), iterated Christoffel (`(x-a)² dμ`) and Uvarov
//! (`dμ + N δ_a`) transformations of a classical measure.
//!
//! The kernel polynomials `p*_n` and `p**_n` are produced by applying
//! [`christoffel_step`] to the recurrence data (or, when `a` is an endpoint
//! of the support, by the equivalent shift of the classical parameters). The
//! monic Uvarov polynomial is evaluated as `p_n^N = p*_n + c_n p*_{n-1}`.

use crate::classical::{ClassicalFamily, RecurrenceCoeffs, Support};
use crate::error::{OpolyError, Result};
use crate::eval::{kernel_diag_sequence, ratios, squared_norm, Jet, PolyEvaluator};
use serde::{Deserialize, Serialize};

/// Position of the perturbation point relative to the support hull `[ξ, η]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `a <= ξ`
    Left,
    /// `a >= η`
    Right,
}

/// A classical family together with an optional perturbation at `a`:
/// Christoffel level `k ∈ {0,1,2}` (multiplication by `(x-a)^k`) followed by
/// an optional Uvarov mass `N >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureSpec {
    pub family: ClassicalFamily,
    pub christoffel_level: u8,
    pub a: f64,
    pub mass: f64,
}

impl MeasureSpec {
    pub fn new(family: ClassicalFamily, christoffel_level: u8, a: f64, mass: f64) -> Result<Self> {
        let spec = MeasureSpec {
            family,
            christoffel_level,
            a,
            mass,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The unperturbed family. `a` is parked at the left hull endpoint
    /// (at 0 for Hermite) and plays no role.
    pub fn classical(family: ClassicalFamily) -> Self {
        let xi = family.support().xi;
        MeasureSpec {
            family,
            christoffel_level: 0,
            a: if xi.is_finite() { xi } else { 0.0 },
            mass: 0.0,
        }
    }

    pub fn uvarov(family: ClassicalFamily, a: f64, mass: f64) -> Result<Self> {
        MeasureSpec::new(family, 0, a, mass)
    }

    pub fn christoffel(family: ClassicalFamily, level: u8, a: f64) -> Result<Self> {
        MeasureSpec::new(family, level, a, 0.0)
    }

    pub fn with_mass(&self, mass: f64) -> Result<Self> {
        MeasureSpec::new(self.family, self.christoffel_level, self.a, mass)
    }

    pub fn validate(&self) -> Result<()> {
        self.family.validate()?;
        if self.christoffel_level > 2 {
            return Err(OpolyError::InvalidMeasure(format!(
                "christoffel level must be 0, 1 or 2, got {}",
                self.christoffel_level
            )));
        }
        if !(self.mass.is_finite() && self.mass >= 0.0) {
            return Err(OpolyError::InvalidMeasure(format!(
                "mass must be a finite value >= 0, got {}",
                self.mass
            )));
        }
        if !self.a.is_finite() {
            return Err(OpolyError::InvalidMeasure(format!(
                "perturbation point must be finite, got {}",
                self.a
            )));
        }
        if let ClassicalFamily::Hermite = self.family {
            if self.christoffel_level > 0 || self.mass > 0.0 {
                return Err(OpolyError::InvalidMeasure(
                    "the Hermite support is the whole line; use the Hermite-type symmetrization for a mass at 0"
                        .into(),
                ));
            }
            return Ok(());
        }
        if self.hull().contains_interior(self.a) {
            return Err(OpolyError::InvalidMeasure(format!(
                "perturbation point a = {} lies inside the support ({}, {})",
                self.a,
                self.hull().xi,
                self.hull().eta
            )));
        }
        Ok(())
    }

    pub fn hull(&self) -> Support {
        self.family.support()
    }

    pub fn side(&self) -> Side {
        if self.a <= self.hull().xi {
            Side::Left
        } else {
            Side::Right
        }
    }

    /// `a` coincides with a finite hull endpoint.
    pub fn at_boundary(&self) -> bool {
        let s = self.hull();
        self.a == s.xi || self.a == s.eta
    }

    /// Hull endpoint nearest to `a`.
    pub fn near_endpoint(&self) -> f64 {
        match self.side() {
            Side::Left => self.hull().xi,
            Side::Right => self.hull().eta,
        }
    }
}

/// Classical family of `(x - a) dμ` when `a` is a finite endpoint of the
/// support of `dμ`.
pub fn boundary_christoffel(family: &ClassicalFamily, a: f64) -> Option<ClassicalFamily> {
    match *family {
        ClassicalFamily::Laguerre { alpha } if a == 0.0 => {
            Some(ClassicalFamily::Laguerre { alpha: alpha + 1.0 })
        }
        ClassicalFamily::Jacobi { alpha, beta } if a == -1.0 => {
            Some(ClassicalFamily::Jacobi {
                alpha,
                beta: beta + 1.0,
            })
        }
        ClassicalFamily::Jacobi { alpha, beta } if a == 1.0 => Some(ClassicalFamily::Jacobi {
            alpha: alpha + 1.0,
            beta,
        }),
        _ => None,
    }
}

/// Recurrence data of `|x - a| dμ` from that of `dμ`.
///
/// `β*_n = β_{n+1} + r_{n+1} - r_n`, `γ*_n = (r_n / r_{n-1}) γ_n` with
/// `r_n = p_{n+1}(a)/p_n(a)`; the output is one entry shorter than the input.
pub fn christoffel_step(coeffs: &RecurrenceCoeffs, a: f64) -> Result<RecurrenceCoeffs> {
    let len = coeffs.len();
    if len < 2 {
        return Err(OpolyError::Length {
            requested: 2,
            available: len,
        });
    }
    let r = ratios(coeffs, a, len)?;
    let out = len - 1;
    let beta: Vec<f64> = (0..out)
        .map(|n| coeffs.beta(n + 1) + r[n + 1] - r[n])
        .collect();
    let mut gamma = vec![0.0];
    for n in 1..out {
        let g = r[n] / r[n - 1] * coeffs.gamma(n);
        if !(g > 0.0) {
            return Err(OpolyError::Breakdown(format!(
                "christoffel step at a = {a}: gamma*_{n} = {g} is not positive"
            )));
        }
        gamma.push(g);
    }
    let mass = coeffs.total_mass() * r[0].abs();
    RecurrenceCoeffs::new(beta, gamma, mass)
}

/// Connection data between the base family and its Uvarov perturbation at
/// degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectionData {
    pub n: usize,
    /// `B_n = K_{n-1}(a, a)`
    pub b_n: f64,
    /// `p_n^N = p*_n + c_n p*_{n-1}`
    pub c_n: f64,
    pub d_n: f64,
    pub e_n: f64,
    /// `1 + N B_n`
    pub k_n: f64,
}

/// Precomputed recurrences for one [`MeasureSpec`]: the base family (the
/// classical family after the Christoffel level), its kernel family and its
/// second kernel family, plus ratio and kernel sequences at `a`.
#[derive(Debug, Clone)]
pub struct PerturbedFamily {
    spec: MeasureSpec,
    classical: RecurrenceCoeffs,
    base: RecurrenceCoeffs,
    star: RecurrenceCoeffs,
    star2: RecurrenceCoeffs,
    base_ratios: Vec<f64>,
    star_ratios: Vec<f64>,
    base_kernels: Vec<f64>,
    max_degree: usize,
}

impl PerturbedFamily {
    /// Prepares everything needed for degrees up to `max_degree`.
    pub fn new(spec: &MeasureSpec, max_degree: usize) -> Result<Self> {
        spec.validate()?;
        if let ClassicalFamily::Hermite = spec.family {
            return Err(OpolyError::InvalidMeasure(
                "Hermite has no exterior perturbation point".into(),
            ));
        }
        let level = spec.christoffel_level as usize;
        let n_max = max_degree + 2 * (level + 2) + 4;
        let classical = spec.family.recurrence(n_max)?;
        let mut chain = vec![classical.clone()];
        let mut fam = spec.family;
        for _ in 0..level + 2 {
            let next = match boundary_christoffel(&fam, spec.a) {
                Some(shifted) => {
                    fam = shifted;
                    shifted.recurrence(n_max)?
                }
                None => christoffel_step(chain.last().expect("nonempty"), spec.a)?,
            };
            chain.push(next);
        }
        let star2 = chain.pop().expect("chain");
        let star = chain.pop().expect("chain");
        let base = chain.pop().expect("chain");
        let base_ratios = ratios(&base, spec.a, max_degree + 2)?;
        let star_ratios = ratios(&star, spec.a, max_degree + 1)?;
        let base_kernels = kernel_diag_sequence(&base, spec.a, max_degree + 1)?;
        Ok(PerturbedFamily {
            spec: *spec,
            classical,
            base,
            star,
            star2,
            base_ratios,
            star_ratios,
            base_kernels,
            max_degree,
        })
    }

    pub fn spec(&self) -> &MeasureSpec {
        &self.spec
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn classical(&self) -> &RecurrenceCoeffs {
        &self.classical
    }

    /// Family before the Uvarov mass (classical after `christoffel_level`
    /// kernel steps).
    pub fn base(&self) -> &RecurrenceCoeffs {
        &self.base
    }

    /// Kernel polynomials `p*_n` of the base family.
    pub fn star(&self) -> &RecurrenceCoeffs {
        &self.star
    }

    /// Second kernel polynomials `p**_n` of the base family.
    pub fn star2(&self) -> &RecurrenceCoeffs {
        &self.star2
    }

    /// `r_n = p_{n+1}(a)/p_n(a)` of the base family.
    pub fn ratio(&self, n: usize) -> f64 {
        self.base_ratios[n]
    }

    /// `K_n(a, a)` of the base family.
    pub fn kernel(&self, n: usize) -> f64 {
        self.base_kernels[n]
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_degree {
            Err(OpolyError::Length {
                requested: n,
                available: self.max_degree,
            })
        } else {
            Ok(())
        }
    }

    pub fn base_jet(&self, n: usize, x: f64) -> Result<Jet> {
        PolyEvaluator::new(&self.base).eval2(n, x)
    }

    pub fn star_jet(&self, n: usize, x: f64) -> Result<Jet> {
        PolyEvaluator::new(&self.star).eval2(n, x)
    }

    pub fn star2_jet(&self, n: usize, x: f64) -> Result<Jet> {
        PolyEvaluator::new(&self.star2).eval2(n, x)
    }

    /// `c_n = -(1 + N K_n)/(1 + N K_{n-1}) · γ_n / r_{n-1}`, `n >= 1`.
    pub fn c_n(&self, n: usize) -> Result<f64> {
        self.check(n)?;
        if n == 0 {
            return Err(OpolyError::Domain("c_n needs n >= 1".into()));
        }
        let nm = self.spec.mass;
        let kn = self.kernel(n);
        let km = self.kernel(n - 1);
        // (1 + N K_n)/(1 + N K_{n-1}) written to stay finite for huge N.
        let q = if nm == 0.0 {
            1.0
        } else {
            (1.0 / nm + kn) / (1.0 / nm + km)
        };
        Ok(-q * self.base.gamma(n) / self.ratio(n - 1))
    }

    /// `(d_n, e_n)` of the second kernel representation.
    pub fn iterated(&self, n: usize) -> Result<(f64, f64)> {
        self.check(n)?;
        let d = self.base_ratios[n + 1] + self.star_ratios[n];
        let e = self.star_ratios[n] * self.base_ratios[n];
        Ok((d, e))
    }

    pub fn connection(&self, n: usize) -> Result<ConnectionData> {
        self.check(n)?;
        if n == 0 {
            return Err(OpolyError::Domain("connection data needs n >= 1".into()));
        }
        let b_n = self.kernel(n - 1);
        let (d_n, e_n) = self.iterated(n)?;
        Ok(ConnectionData {
            n,
            b_n,
            c_n: self.c_n(n)?,
            d_n,
            e_n,
            k_n: 1.0 + self.spec.mass * b_n,
        })
    }

    /// Monic Uvarov polynomial `p_n^N` with two derivatives.
    pub fn uvarov_jet(&self, n: usize, x: f64) -> Result<Jet> {
        self.check(n)?;
        if n == 0 {
            return Ok(Jet {
                v: 1.0,
                d: 0.0,
                d2: 0.0,
            });
        }
        let c = self.c_n(n)?;
        let pair = PolyEvaluator::new(&self.star).monic_scaled(n, x)?;
        let cur = pair.value();
        let prev = pair.prev_value();
        Ok(Jet {
            v: cur.v + c * prev.v,
            d: cur.d + c * prev.d,
            d2: cur.d2 + c * prev.d2,
        })
    }

    /// The member of degree `n` of the family described by the spec: the
    /// Uvarov polynomial when `N > 0`, otherwise the base polynomial.
    pub fn jet(&self, n: usize, x: f64) -> Result<Jet> {
        if self.spec.mass > 0.0 {
            self.uvarov_jet(n, x)
        } else {
            self.check(n)?;
            self.base_jet(n, x)
        }
    }

    /// `p_n(x)` and `N B_n (x - a) p**_{n-1}(x)`: the two terms of the
    /// kernel representation of `k_n p_n^N`.
    pub fn kernel_representation_terms(&self, n: usize, x: f64) -> Result<(f64, f64)> {
        self.check(n)?;
        if n == 0 {
            return Ok((1.0, 0.0));
        }
        let p = self.base_jet(n, x)?.v;
        let p2 = self.star2_jet(n - 1, x)?.v;
        Ok((p, self.spec.mass * self.kernel(n - 1) * (x - self.spec.a) * p2))
    }

    /// Offset `x - a` of the zero of `p_n^N` next to `a`, starting from the
    /// estimate `x`. Newton runs on `p_n(a+δ) + N B_n δ p**_{n-1}(a+δ)` in the
    /// variable `δ`, which keeps full relative precision in `δ` even when the
    /// zero lies within rounding distance of `a`. Falls back to `x - a` if
    /// the iteration wanders.
    pub fn offset_from_a(&self, n: usize, x: f64) -> Result<f64> {
        self.check(n)?;
        let a = self.spec.a;
        let d0 = x - a;
        if n == 0 || d0 == 0.0 {
            return Ok(d0);
        }
        let nb = self.spec.mass * self.kernel(n - 1);
        let mut d = d0;
        for _ in 0..12 {
            let t = a + d;
            let p = self.base_jet(n, t)?;
            let q = self.star2_jet(n - 1, t)?;
            let f = p.v + nb * d * q.v;
            let df = p.d + nb * (q.v + d * q.d);
            if f == 0.0 || df == 0.0 || !df.is_finite() {
                break;
            }
            let next = d - f / df;
            if !next.is_finite() || next.signum() != d0.signum() {
                return Ok(d0);
            }
            let converged = (next - d).abs() <= 4.0 * f64::EPSILON * next.abs();
            d = next;
            if converged {
                break;
            }
        }
        if (d - d0).abs() > 1e-6 * d0.abs() + 1e-12 * (1.0 + a.abs()) {
            return Ok(d0);
        }
        Ok(d)
    }

    /// Largest relative deviation between `k_n · (p*_n + c_n p*_{n-1})` and
    /// `p_n + N B_n (x-a) p**_{n-1}` over `xs`.
    pub fn representation_crosscheck(&self, n: usize, xs: &[f64]) -> Result<f64> {
        let k_n = if n == 0 {
            1.0
        } else {
            1.0 + self.spec.mass * self.kernel(n - 1)
        };
        let mut worst = 0.0_f64;
        for &x in xs {
            let (p, q) = self.kernel_representation_terms(n, x)?;
            let u = self.uvarov_jet(n, x)?.v;
            let scale = p.abs() + q.abs();
            let dev = (k_n * u - (p + q)).abs();
            let rel = if scale > 0.0 { dev / scale } else { dev };
            worst = worst.max(rel);
        }
        Ok(worst)
    }
}

/// `(p*_n, p*_n')` (level 1) or `(p**_n, p**_n')` (level 2) for the classical
/// family of `spec`.
pub fn christoffel_eval(spec: &MeasureSpec, n: usize, x: f64) -> Result<(f64, f64)> {
    let classical = MeasureSpec {
        christoffel_level: 0,
        mass: 0.0,
        ..*spec
    };
    let fam = PerturbedFamily::new(&classical, n.max(1))?;
    let j = match spec.christoffel_level {
        1 => fam.star_jet(n, x)?,
        2 => fam.star2_jet(n, x)?,
        l => {
            return Err(OpolyError::Domain(format!(
                "christoffel_eval needs level 1 or 2, got {l}"
            )))
        }
    };
    Ok((j.v, j.d))
}

/// `(d_n, e_n)` for the family `coeffs` at `a`:
/// `d_n = r_{n+1} + r*_n`, `e_n = r*_n r_n`.
pub fn iterated_coeffs(coeffs: &RecurrenceCoeffs, a: f64, n: usize) -> Result<(f64, f64)> {
    let r = ratios(coeffs, a, n + 2)?;
    let star = christoffel_step(coeffs, a)?;
    let rs = ratios(&star, a, n + 1)?;
    Ok((r[n + 1] + rs[n], rs[n] * r[n]))
}

pub fn uvarov_connection(spec: &MeasureSpec, n: usize) -> Result<ConnectionData> {
    PerturbedFamily::new(spec, n)?.connection(n)
}

/// `(p_n^N(x), p_n^N'(x))`.
pub fn uvarov_eval(spec: &MeasureSpec, n: usize, x: f64) -> Result<(f64, f64)> {
    let j = PerturbedFamily::new(spec, n.max(1))?.uvarov_jet(n, x)?;
    Ok((j.v, j.d))
}

pub fn representation_crosscheck(spec: &MeasureSpec, n: usize, xs: &[f64]) -> Result<f64> {
    PerturbedFamily::new(spec, n.max(1))?.representation_crosscheck(n, xs)
}

/// `p*_n(a; a) = ‖p_n‖² K_n(a,a) / p_n(a)` from the base family.
pub fn kernel_polynomial_at_a(fam: &PerturbedFamily, n: usize) -> Result<f64> {
    let pn = fam.base_jet(n, fam.spec().a)?.v;
    Ok(squared_norm(fam.base(), n)? * fam.kernel(n) / pn)
}
