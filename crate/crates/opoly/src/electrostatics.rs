//! Electrostatic model for the zeros of Uvarov polynomials `p_n^N` of the
//! Laguerre and Jacobi weights with a mass at `a` on or outside the support.
//!
//! The chain of objects is
//!
//! * the Pearson pair `(φ, ψ)` of the Christoffel measure `(x-a) dμ`,
//! * the structure relation `φ (p*_n)' = A(x,n) p*_n + B(x,n) p*_{n-1}`,
//! * the lifted pair `(A*, B*)` with `φ (p_n^N)' = A* p*_n + B* p*_{n-1}`,
//! * `Q = B* - c_n A*`, the holonomic equation `𝒜 y'' + ℬ y' + 𝒞 y = 0`,
//! * the external potential `V = -∫ψ/φ + ln|Q|` and the energy
//!   `E = Σ V(x_j) - 2 Σ_{j<k} ln|x_j - x_k|`, stationary at the zeros.
//!
//! Four cases are covered: Laguerre with `a = 0` or `a < 0`, Jacobi with
//! `a = -1` or `a` outside `[-1, 1]`.

use crate::classical::ClassicalFamily;
use crate::error::{OpolyError, Result};
use crate::eval::{ldexp, Jet, PolyEvaluator};
use crate::poly::Poly;
use crate::special::lgamma;
use crate::transforms::{boundary_christoffel, christoffel_step, MeasureSpec, PerturbedFamily};
use crate::trend::{TrendPoint, TrendReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Tolerance used when a structure relation is validated on construction.
pub const LEMMA_TOLERANCE: f64 = 1e-9;

/// `(φ, ψ)` with `D(φ u*) = ψ u*` for the functional `u*` of `(x-a) dμ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PearsonPair {
    pub phi: Poly,
    pub psi: Poly,
}

/// Pearson pair of `(x - a) w(x) dx` for a classical weight with pair
/// `(σ, τ)`: `φ = (x-a)σ, ψ = 2σ + (x-a)τ` in general, and
/// `φ = σ, ψ = σ/(x-a) + τ` when `σ(a) = 0`.
pub fn pearson_star(family: &ClassicalFamily, a: f64) -> Result<PearsonPair> {
    family.validate()?;
    let support = family.support();
    if support.contains_interior(a) || !a.is_finite() {
        return Err(OpolyError::Domain(format!(
            "a = {a} lies inside the support ({}, {})",
            support.xi, support.eta
        )));
    }
    let (sigma, tau) = family.pearson();
    let (sigma_tilde, rem) = sigma.div_linear(a);
    if rem == 0.0 {
        Ok(PearsonPair {
            psi: &sigma_tilde + &tau,
            phi: sigma,
        })
    } else {
        let xa = Poly::monomial_root(a);
        Ok(PearsonPair {
            phi: &xa * &sigma,
            psi: &sigma.scale(2.0) + &(&xa * &tau),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureCase {
    /// Laguerre, mass at the hard edge `a = 0`.
    #[serde(rename = "laguerre_a0")]
    LaguerreAtZero,
    /// Laguerre, `a < 0`.
    #[serde(rename = "laguerre_neg")]
    LaguerreExterior,
    /// Jacobi, mass at `a = -1`.
    #[serde(rename = "jacobi_m1")]
    JacobiAtMinusOne,
    /// Jacobi, `a < -1` (and by the same algebra `a > 1`).
    #[serde(rename = "jacobi_neg")]
    JacobiExterior,
}

impl StructureCase {
    pub fn detect(spec: &MeasureSpec) -> Result<Self> {
        spec.validate()?;
        if spec.christoffel_level != 0 {
            return Err(OpolyError::Domain(
                "the electrostatic model applies to a Uvarov perturbation of a classical weight (christoffel level 0)"
                    .into(),
            ));
        }
        match spec.family {
            ClassicalFamily::Laguerre { .. } if spec.a == 0.0 => Ok(StructureCase::LaguerreAtZero),
            ClassicalFamily::Laguerre { .. } => Ok(StructureCase::LaguerreExterior),
            ClassicalFamily::Jacobi { .. } if spec.a == -1.0 => Ok(StructureCase::JacobiAtMinusOne),
            ClassicalFamily::Jacobi { .. } if spec.a == 1.0 => Err(OpolyError::Domain(
                "no structure relation is set up for a Jacobi mass at a = 1; reflect x -> -x and swap alpha, beta"
                    .into(),
            )),
            ClassicalFamily::Jacobi { .. } => Ok(StructureCase::JacobiExterior),
            ClassicalFamily::Hermite => Err(OpolyError::Domain(
                "the Hermite weight has no exterior point for the electrostatic model".into(),
            )),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            StructureCase::LaguerreAtZero => "laguerre_a0",
            StructureCase::LaguerreExterior => "laguerre_neg",
            StructureCase::JacobiAtMinusOne => "jacobi_m1",
            StructureCase::JacobiExterior => "jacobi_neg",
        }
    }

    pub fn at_boundary(&self) -> bool {
        matches!(
            self,
            StructureCase::LaguerreAtZero | StructureCase::JacobiAtMinusOne
        )
    }
}

/// Ladder coefficients of a classical family: `σ P_n' = a_n(x) P_n + b_n P_{n-1}`.
pub fn classical_ladder(family: &ClassicalFamily, n: usize) -> (Poly, f64) {
    if n == 0 {
        return (Poly::zero(), 0.0);
    }
    let nf = n as f64;
    match *family {
        ClassicalFamily::Laguerre { alpha } => (Poly::constant(nf), nf * (nf + alpha)),
        ClassicalFamily::Jacobi { alpha, beta } => {
            let t = 2.0 * nf + alpha + beta;
            // b_n = γ_n (t + 1); going through γ_n keeps n = 1, α + β = -1 finite.
            (
                Poly::linear(-nf * (beta - alpha) / t, -nf),
                family.gamma_n(n) * (t + 1.0),
            )
        }
        ClassicalFamily::Hermite => (Poly::zero(), nf),
    }
}

/// `φ (p*_n)' = A(x,n) p*_n + B(x,n) p*_{n-1}` for the kernel polynomials of
/// one of the four covered cases, together with everything needed to lift it
/// to the Uvarov polynomials.
#[derive(Debug, Clone)]
pub struct StructureRelation {
    case: StructureCase,
    pearson: PearsonPair,
    fam: PerturbedFamily,
    /// Family whose ladder gives `A`, `B` directly in the boundary cases.
    shifted: Option<ClassicalFamily>,
    b_perturbation: f64,
}

impl StructureRelation {
    /// Builds the relation for degrees up to `max_degree` without validating
    /// it; see [`structure_relation`] for the checked constructor.
    pub fn new(spec: &MeasureSpec, max_degree: usize) -> Result<Self> {
        let case = StructureCase::detect(spec)?;
        let pearson = pearson_star(&spec.family, spec.a)?;
        let fam = PerturbedFamily::new(spec, max_degree.max(2))?;
        let shifted = if case.at_boundary() {
            boundary_christoffel(&spec.family, spec.a)
        } else {
            None
        };
        Ok(StructureRelation {
            case,
            pearson,
            fam,
            shifted,
            b_perturbation: 0.0,
        })
    }

    /// Adds `delta` to every `B(x, n)`. Used to check that the validations
    /// notice a wrong coefficient.
    pub fn with_b_perturbation(mut self, delta: f64) -> Self {
        self.b_perturbation = delta;
        self
    }

    pub fn case(&self) -> StructureCase {
        self.case
    }

    pub fn spec(&self) -> &MeasureSpec {
        self.fam.spec()
    }

    pub fn family(&self) -> &PerturbedFamily {
        &self.fam
    }

    pub fn pearson(&self) -> &PearsonPair {
        &self.pearson
    }

    pub fn phi(&self) -> &Poly {
        &self.pearson.phi
    }

    pub fn psi(&self) -> &Poly {
        &self.pearson.psi
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.fam.max_degree() {
            return Err(OpolyError::Length {
                requested: n,
                available: self.fam.max_degree(),
            });
        }
        Ok(())
    }

    fn ab(&self, n: usize) -> Result<(Poly, Poly)> {
        self.check_degree(n)?;
        if n == 0 {
            return Ok((Poly::zero(), Poly::constant(self.b_perturbation)));
        }
        let (a_poly, b_poly) = match self.shifted {
            Some(shifted) => {
                let (an, bn) = classical_ladder(&shifted, n);
                (an, Poly::constant(bn))
            }
            None => self.exterior_ab(n),
        };
        Ok((a_poly, &b_poly + &Poly::constant(self.b_perturbation)))
    }

    /// Exterior point: from `(x-a) p*_n = P_{n+1} - λ_n P_n`, differentiate,
    /// multiply by `σ`, apply the classical ladder and recurrence, then
    /// rewrite `P_n, P_{n-1}` in the kernel basis.
    fn exterior_ab(&self, n: usize) -> (Poly, Poly) {
        let family = self.spec().family;
        let classical = self.fam.classical();
        let star = self.fam.star();
        let sigma = family.pearson().0;
        let (a_next, b_next) = classical_ladder(&family, n + 1);
        let (a_n, b_n) = classical_ladder(&family, n);
        let lam = self.fam.ratio(n);
        let lam_prev = self.fam.ratio(n - 1);
        let g = classical.gamma(n);
        let m = &(&(&a_next * &Poly::monomial_root(classical.beta(n))) + &Poly::constant(b_next))
            - &a_n.scale(lam);
        let k = &a_next.scale(g) + &Poly::constant(lam * b_n);
        let a_poly = &(&m - &k.scale(1.0 / lam_prev)) - &sigma;
        let b_poly = &(&(&k * &Poly::monomial_root(star.beta(n - 1))).scale(1.0 / lam_prev) - &k)
            - &m.scale(g / lam_prev);
        (a_poly, b_poly)
    }

    /// `A(x, n)`.
    pub fn a_poly(&self, n: usize) -> Result<Poly> {
        Ok(self.ab(n)?.0)
    }

    /// `B(x, n)`.
    pub fn b_poly(&self, n: usize) -> Result<Poly> {
        Ok(self.ab(n)?.1)
    }

    fn require_two(n: usize) -> Result<()> {
        if n < 2 {
            return Err(OpolyError::Domain(format!("degree n >= 2 required, got {n}")));
        }
        Ok(())
    }

    /// Largest relative residual over `xs` of
    /// `A(x,n) + A(x,n-1) + (x - β*_{n-1})/γ*_{n-1} B(x,n-1) = φ' - ψ`.
    pub fn lemma_residual(&self, n: usize, xs: &[f64]) -> Result<f64> {
        Self::require_two(n)?;
        let (an, _) = self.ab(n)?;
        let (am, bm) = self.ab(n - 1)?;
        let star = self.fam.star();
        let (bs, gs) = (star.beta(n - 1), star.gamma(n - 1));
        let rhs = &self.pearson.phi.derivative() - &self.pearson.psi;
        let mut worst = 0.0_f64;
        for &x in xs {
            let t1 = an.eval(x);
            let t2 = am.eval(x);
            let t3 = (x - bs) / gs * bm.eval(x);
            let r = rhs.eval(x);
            let scale = t1.abs() + t2.abs() + t3.abs() + rhs.eval_abs(x);
            let dev = (t1 + t2 + t3 - r).abs();
            worst = worst.max(if scale > 0.0 { dev / scale } else { dev });
        }
        Ok(worst)
    }

    /// Largest relative residual over `xs` of the structure relation itself,
    /// `φ (p*_n)' - A p*_n - B p*_{n-1}`, with `p*` from the recurrence.
    pub fn structure_residual(&self, n: usize, xs: &[f64]) -> Result<f64> {
        let (an, bn) = self.ab(n)?;
        let ev = PolyEvaluator::new(self.fam.star());
        let mut worst = 0.0_f64;
        for &x in xs {
            let pair = ev.monic_scaled(n, x)?;
            let cur = pair.value();
            let prev = pair.prev_value();
            let lhs = self.pearson.phi.eval(x) * cur.d;
            let t1 = an.eval(x) * cur.v;
            let t2 = bn.eval(x) * prev.v;
            let scale = lhs.abs() + t1.abs() + t2.abs();
            let dev = (lhs - t1 - t2).abs();
            worst = worst.max(if scale > 0.0 { dev / scale } else { dev });
        }
        Ok(worst)
    }

    /// `c_n` of `p_n^N = p*_n + c_n p*_{n-1}`.
    pub fn c_n(&self, n: usize) -> Result<f64> {
        self.fam.c_n(n)
    }

    /// `(A*, B*)` with `φ (p_n^N)' = A* p*_n + B* p*_{n-1}`:
    /// `A* = A(n) - c_n/γ*_{n-1} B(n-1)`,
    /// `B* = B(n) + c_n A(n-1) + c_n/γ*_{n-1} (x - β*_{n-1}) B(n-1)`.
    pub fn star_ab(&self, n: usize) -> Result<(Poly, Poly)> {
        Self::require_two(n)?;
        let c = self.c_n(n)?;
        let (an, bn) = self.ab(n)?;
        let (am, bm) = self.ab(n - 1)?;
        let star = self.fam.star();
        let w = c / star.gamma(n - 1);
        let a_star = &an - &bm.scale(w);
        let b_star = &(&bn + &am.scale(c)) + &(&Poly::monomial_root(star.beta(n - 1)) * &bm).scale(w);
        Ok((a_star, b_star))
    }

    /// Largest relative residual over `xs` of
    /// `φ (p_n^N)' = A* p*_n + B* p*_{n-1}`.
    pub fn lifted_residual(&self, n: usize, xs: &[f64]) -> Result<f64> {
        let (a_star, b_star) = self.star_ab(n)?;
        let ev = PolyEvaluator::new(self.fam.star());
        let mut worst = 0.0_f64;
        for &x in xs {
            let pair = ev.monic_scaled(n, x)?;
            let cur = pair.value();
            let prev = pair.prev_value();
            let u = self.fam.uvarov_jet(n, x)?;
            let lhs = self.pearson.phi.eval(x) * u.d;
            let t1 = a_star.eval(x) * cur.v;
            let t2 = b_star.eval(x) * prev.v;
            let scale = lhs.abs() + t1.abs() + t2.abs();
            let dev = (lhs - t1 - t2).abs();
            worst = worst.max(if scale > 0.0 { dev / scale } else { dev });
        }
        Ok(worst)
    }

    /// `Q = B* - c_n A*`, assembled from the structure relation.
    pub fn q_polynomial(&self, n: usize) -> Result<Poly> {
        let (a_star, b_star) = self.star_ab(n)?;
        Ok(&b_star - &a_star.scale(self.c_n(n)?))
    }

    /// `Q` from the case-specific closed forms (simplified expansions in
    /// terms of `c_n`, the classical ratios `λ_n = P_{n+1}(a)/P_n(a)` and,
    /// for the exterior Jacobi point, the coefficients of `A` and `B`).
    pub fn q_closed_form(&self, n: usize) -> Result<Poly> {
        Self::require_two(n)?;
        let c = self.c_n(n)?;
        let nf = n as f64;
        let a = self.spec().a;
        match (self.case, self.spec().family) {
            (StructureCase::LaguerreAtZero, ClassicalFamily::Laguerre { alpha }) => Ok(Poly::linear(
                nf * (nf + alpha + 1.0) - c * (2.0 * nf + 1.0 + alpha - c),
                c,
            )),
            (StructureCase::LaguerreExterior, ClassicalFamily::Laguerre { alpha }) => {
                let (r, _) = self.laguerre_exterior_r(n)?;
                let lam = self.fam.ratio(n);
                let lam_prev = self.fam.ratio(n - 1);
                let h = nf + 1.0 + lam;
                let s = h * ((h + alpha) * (2.0 * nf + 1.0 + lam + alpha - a - 2.0 * c) + 2.0 * a * c)
                    + a * alpha * c
                    + c * c * (lam - lam_prev + 1.0 - a);
                Ok(Poly::new(vec![s, r, c]))
            }
            (StructureCase::JacobiAtMinusOne, ClassicalFamily::Jacobi { alpha, beta }) => {
                let t = 2.0 * nf + alpha + beta;
                let bn = self.b_poly(n)?.coeff(0);
                Ok(Poly::linear(
                    bn + c * (t * c - (alpha + beta + 1.0) * (beta - alpha + 1.0) / (t + 1.0)),
                    (t + 1.0) * c,
                ))
            }
            (StructureCase::JacobiExterior, ClassicalFamily::Jacobi { alpha, beta }) => {
                let (an, bn) = self.ab(n)?;
                let (_, bm) = self.ab(n - 1)?;
                let gs = self.fam.star().gamma(n - 1);
                let q2 = bn.coeff(2)
                    + (alpha + beta + 1.0 - 2.0 * an.coeff(2) + c * bm.coeff(2) / gs) * c;
                let q1 = c * c * bm.coeff(1) / gs + bn.coeff(1)
                    - (alpha * (a - 1.0) + beta * (a + 1.0) + 2.0 * an.coeff(1)) * c;
                let q0 = bn.coeff(0) - (2.0 * an.coeff(0) + 1.0 + a * (alpha - beta)) * c
                    + c * c * bm.coeff(0) / gs;
                Ok(Poly::new(vec![q0, q1, q2]))
            }
            _ => unreachable!("case detection matches the family"),
        }
    }

    /// The two printed forms of the linear coefficient `r_n` of `Q` in the
    /// exterior Laguerre case; they agree through the ratio recurrence.
    pub fn laguerre_exterior_r(&self, n: usize) -> Result<(f64, f64)> {
        let ClassicalFamily::Laguerre { alpha } = self.spec().family else {
            return Err(OpolyError::Domain("Laguerre family required".into()));
        };
        if self.case != StructureCase::LaguerreExterior {
            return Err(OpolyError::Domain("exterior Laguerre case required".into()));
        }
        Self::require_two(n)?;
        let c = self.c_n(n)?;
        let nf = n as f64;
        let a = self.spec().a;
        let lam = self.fam.ratio(n);
        let lam_prev = self.fam.ratio(n - 1);
        let r1 = nf * (nf + alpha) * lam / lam_prev + c * c - c * (a + alpha + 1.0 + 2.0 * nf);
        let r2 = (c + lam) * (c - lam) - (c - lam) * a - (c + lam) * (2.0 * nf + alpha + 1.0);
        Ok((r1, r2))
    }

    /// Coefficients of the holonomic equation satisfied by `p_n^N`.
    pub fn ode_coefficients(&self, n: usize) -> Result<OdeCoefficients> {
        let c = self.c_n(n)?;
        let (a, b) = self.ab(n)?;
        let (a_star, b_star) = self.star_ab(n)?;
        let q = &b_star - &a_star.scale(c);
        let phi = self.pearson.phi.clone();
        let dphi = phi.derivative();
        let dq = q.derivative();
        let phi2 = &phi * &phi;
        // 𝒜 = cφ²/Q
        let num_a = (&phi2 * &q).scale(c);
        // ℬ = φ[B - B* + c(φ' - A)]/Q - cφ²Q'/Q²
        let inner = &(&b - &b_star) + &(&dphi - &a).scale(c);
        let num_b = &(&(&phi * &inner) * &q) - &(&phi2 * &dq).scale(c);
        // 𝒞 = (AB* - BA*)/Q - φ(B*'Q - B*Q')/Q²
        let wr = &(&a * &b_star) - &(&b * &a_star);
        let db_star = b_star.derivative();
        let num_c = &(&wr * &q) - &(&phi * &(&(&db_star * &q) - &(&b_star * &dq)));
        Ok(OdeCoefficients {
            n,
            c_n: c,
            phi,
            a,
            b,
            a_star,
            b_star,
            q,
            num_a,
            num_b,
            num_c,
        })
    }

    /// `Q` expanded about `a`. The constant term is not read off the
    /// coefficients (where it is lost to cancellation when a zero of `Q`
    /// approaches `a`) but taken from `φ(a) = 0`, which turns the lifted
    /// relation into `Q(a) = -A*(a) p_n^N(a) / p*_{n-1}(a)` with
    /// `p_n^N(a) = p_n(a) / (1 + N K_{n-1}(a,a))`.
    pub fn local_q(&self, n: usize) -> Result<LocalQ> {
        let (a_star, b_star) = self.star_ab(n)?;
        let c = self.c_n(n)?;
        let q = &b_star - &a_star.scale(c);
        let a = self.spec().a;
        let k_n = 1.0 + self.spec().mass * self.fam.kernel(n - 1);
        // p_n(a) / p*_{n-1}(a) from scaled values, which stay finite for
        // large n where the plain values overflow
        let pn = PolyEvaluator::new(self.fam.base()).monic_scaled(n, a)?;
        let ps = PolyEvaluator::new(self.fam.star()).monic_scaled(n - 1, a)?;
        let quotient = ldexp(pn.cur.v / ps.cur.v, pn.exp2 - ps.exp2);
        let at_a = -a_star.eval(a) * quotient / k_n;
        let dq = q.derivative();
        Ok(LocalQ {
            a,
            at_a,
            slope: dq.eval(a),
            curvature: 0.5 * dq.derivative().eval(a),
            q,
        })
    }

    /// Offsets `x_j - a` of the zeros of `p_n^N`, the one next to `a`
    /// refined in the offset variable.
    pub fn zero_offsets(&self, n: usize) -> Result<Vec<f64>> {
        let zeros = self.fam.zeros(n)?.zeros;
        let a = self.spec().a;
        let mut offsets: Vec<f64> = zeros.iter().map(|&x| x - a).collect();
        if let Some((k, _)) = offsets
            .iter()
            .enumerate()
            .min_by(|p, q| p.1.abs().total_cmp(&q.1.abs()))
        {
            offsets[k] = self.fam.offset_from_a(n, zeros[k])?;
        }
        Ok(offsets)
    }

    /// `-∫ψ/φ` in closed form for the case at hand, at `x = a + δ`.
    pub fn weight_potential(&self, delta: f64) -> f64 {
        let a = self.spec().a;
        let x = a + delta;
        let ld = delta.abs().ln();
        match (self.case, self.spec().family) {
            (StructureCase::LaguerreAtZero, ClassicalFamily::Laguerre { alpha }) => {
                -(alpha + 2.0) * ld + delta
            }
            (StructureCase::LaguerreExterior, ClassicalFamily::Laguerre { alpha }) => {
                -2.0 * ld - (alpha + 1.0) * x.abs().ln() + x
            }
            (StructureCase::JacobiAtMinusOne, ClassicalFamily::Jacobi { alpha, beta }) => {
                -(alpha + 1.0) * (1.0 - x).abs().ln() - (beta + 2.0) * ld
            }
            (StructureCase::JacobiExterior, ClassicalFamily::Jacobi { alpha, beta }) => {
                -2.0 * ld - (alpha + 1.0) * (1.0 - x).abs().ln() - (beta + 1.0) * (1.0 + x).abs().ln()
            }
            _ => f64::NAN,
        }
    }

    /// External potential `V = -∫ψ/φ + ln|Q|` at `x = a + δ`.
    pub fn potential(&self, q: &LocalQ, delta: f64) -> f64 {
        self.weight_potential(delta) + q.value(delta).abs().ln()
    }

    /// `E = Σ V(x_j) - 2 Σ_{j<k} ln|x_j - x_k|` for charges at `a + δ_j`.
    pub fn energy(&self, q: &LocalQ, offsets: &[f64]) -> f64 {
        let mut e: f64 = offsets.iter().map(|&d| self.potential(q, d)).sum();
        for j in 0..offsets.len() {
            for k in j + 1..offsets.len() {
                e -= 2.0 * (offsets[j] - offsets[k]).abs().ln();
            }
        }
        e
    }

    /// Relative residual of `ψ/φ - Q'/Q + 2 Σ_{k≠j} 1/(x_j - x_k) = 0` for
    /// charges at `a + δ_j`.
    pub fn stationarity_residuals(&self, q: &LocalQ, offsets: &[f64]) -> Result<Vec<f64>> {
        let a = self.spec().a;
        // φ = (x - a) φ₁ in all four cases
        let (phi1, _) = self.pearson.phi.div_linear(a);
        offsets
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                let x = a + d;
                let phi = d * phi1.eval(x);
                let qx = q.value(d);
                if phi == 0.0 || phi.abs() <= f64::EPSILON * d.abs() * phi1.eval_abs(x) {
                    return Err(OpolyError::Singular(format!("φ vanishes at x = {x}")));
                }
                if qx == 0.0 {
                    return Err(OpolyError::Singular(format!("Q vanishes at x = {x}")));
                }
                let t1 = self.pearson.psi.eval(x) / phi;
                let t2 = q.derivative(d) / qx;
                let mut sum = 0.0;
                let mut abs_sum = 0.0;
                for (k, &e) in offsets.iter().enumerate() {
                    if k != j {
                        if e == d {
                            return Err(OpolyError::Singular(format!("coincident charges at {x}")));
                        }
                        sum += 2.0 / (d - e);
                        abs_sum += 2.0 / (d - e).abs();
                    }
                }
                let scale = t1.abs() + t2.abs() + abs_sum;
                let dev = (t1 - t2 + sum).abs();
                Ok(if scale > 0.0 { dev / scale } else { dev })
            })
            .collect()
    }
}

/// `Q(a + δ) = at_a + slope δ + curvature δ²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalQ {
    pub a: f64,
    pub at_a: f64,
    pub slope: f64,
    pub curvature: f64,
    /// The same polynomial in the monomial basis of `x`.
    pub q: Poly,
}

impl LocalQ {
    pub fn value(&self, delta: f64) -> f64 {
        self.at_a + delta * (self.slope + delta * self.curvature)
    }

    pub fn derivative(&self, delta: f64) -> f64 {
        self.slope + 2.0 * delta * self.curvature
    }

    /// Zeros of `Q` as offsets from `a`.
    pub fn zero_offsets(&self) -> QZeros {
        q_zeros(&Poly::new(vec![self.at_a, self.slope, self.curvature]))
    }

    /// Zeros of `Q` in `x`.
    pub fn zeros(&self) -> QZeros {
        match self.zero_offsets() {
            QZeros::Real(z) => QZeros::Real(z.iter().map(|d| self.a + d).collect()),
            QZeros::ComplexPair { re, im } => QZeros::ComplexPair { re: self.a + re, im },
            QZeros::NoZeros => QZeros::NoZeros,
        }
    }
}

/// Checked constructor: the relation is built for degrees up to `n` and the
/// identity `A(n) + A(n-1) + (x-β*_{n-1})/γ*_{n-1} B(n-1) = φ' - ψ` is
/// verified at sample points before returning.
pub fn structure_relation(spec: &MeasureSpec, n: usize) -> Result<StructureRelation> {
    let sr = StructureRelation::new(spec, n)?;
    let xs = sample_points(spec, n, 9);
    let res = sr.lemma_residual(n, &xs)?;
    if res > LEMMA_TOLERANCE {
        return Err(OpolyError::Breakdown(format!(
            "structure relation for case {} fails the ladder identity at n = {n} (residual {res:e})",
            sr.case.tag()
        )));
    }
    Ok(sr)
}

/// `count` deterministic sample abscissae spread over the region where the
/// zeros of degree `n` live, avoiding the support endpoints.
pub fn sample_points(spec: &MeasureSpec, n: usize, count: usize) -> Vec<f64> {
    let (lo, hi) = match spec.family {
        ClassicalFamily::Jacobi { .. } => (-0.97, 0.97),
        ClassicalFamily::Laguerre { alpha } => (0.05, 4.0 * n as f64 + 2.0 * alpha.max(0.0) + 6.0),
        ClassicalFamily::Hermite => (-(2.0 * n as f64).sqrt() - 1.0, (2.0 * n as f64).sqrt() + 1.0),
    };
    (0..count)
        .map(|k| {
            // irrational stride keeps the samples off any lattice of zeros
            let u = ((k as f64 + 0.5) * 0.618_033_988_749_895).fract();
            lo + (hi - lo) * u
        })
        .collect()
}

/// Polynomial data of the holonomic equation. Each coefficient is stored as
/// a numerator over the common denominator `Q²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OdeCoefficients {
    pub n: usize,
    pub c_n: f64,
    pub phi: Poly,
    pub a: Poly,
    pub b: Poly,
    pub a_star: Poly,
    pub b_star: Poly,
    pub q: Poly,
    pub num_a: Poly,
    pub num_b: Poly,
    pub num_c: Poly,
}

impl OdeCoefficients {
    /// The three numerators at `x`, assembled from the values of their
    /// factors. Evaluating the expanded `num_*` polynomials instead loses
    /// accuracy near a multiple zero of `Q`, where the numerators vanish to
    /// high order.
    pub fn numerators(&self, x: f64) -> [f64; 3] {
        let c = self.c_n;
        let (q, dq) = (self.q.eval(x), self.q.derivative().eval(x));
        let (ph, dph) = (self.phi.eval(x), self.phi.derivative().eval(x));
        let (a, b) = (self.a.eval(x), self.b.eval(x));
        let (a_s, b_s) = (self.a_star.eval(x), self.b_star.eval(x));
        let db_s = self.b_star.derivative().eval(x);
        [
            c * ph * ph * q,
            ph * (b - b_s + c * (dph - a)) * q - c * ph * ph * dq,
            (a * b_s - b * a_s) * q - ph * (db_s * q - b_s * dq),
        ]
    }

    /// `(𝒜(x), ℬ(x), 𝒞(x))`; a pole error when `Q(x) = 0`.
    pub fn eval(&self, x: f64) -> Result<[f64; 3]> {
        let q = self.q.eval(x);
        if q.abs() <= 1e-14 * self.q.eval_abs(x) || q == 0.0 {
            return Err(OpolyError::Pole(format!("Q({x}) = 0")));
        }
        let d = q * q;
        Ok(self.numerators(x).map(|v| v / d))
    }

    /// `|𝒜y'' + ℬy' + 𝒞y| / max(|𝒜y''|, |ℬy'|, |𝒞y|)` for a jet of `y` at
    /// `x`. The common factor `1/Q²` cancels from the ratio and is not
    /// applied.
    pub fn residual(&self, x: f64, y: Jet) -> Result<f64> {
        let q = self.q.eval(x);
        if q.abs() <= 1e-14 * self.q.eval_abs(x) || q == 0.0 {
            return Err(OpolyError::Pole(format!("Q({x}) = 0")));
        }
        let [na, nb, nc] = self.numerators(x);
        let terms = [na * y.d2, nb * y.d, nc * y.v];
        let scale = terms.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
        let sum: f64 = terms.iter().sum();
        Ok(if scale > 0.0 { sum.abs() / scale } else { sum.abs() })
    }
}

/// Largest ODE residual of `p_n^N` over `xs`, skipping points within a
/// relative distance `1e-6` of a real zero of `Q`.
pub fn ode_residual(sr: &StructureRelation, n: usize, xs: &[f64]) -> Result<f64> {
    let ode = sr.ode_coefficients(n)?;
    let poles = match q_zeros(&ode.q) {
        QZeros::Real(z) => z,
        _ => vec![],
    };
    let mut worst = 0.0_f64;
    for &x in xs {
        if poles.iter().any(|&p| (x - p).abs() <= 1e-6 * (1.0 + p.abs())) {
            continue;
        }
        let y = sr.family().uvarov_jet(n, x)?;
        worst = worst.max(ode.residual(x, y)?);
    }
    Ok(worst)
}

/// Real zeros of `Q` (the short-range charges), or a complex pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QZeros {
    /// `Q` is a nonzero constant.
    NoZeros,
    Real(Vec<f64>),
    ComplexPair { re: f64, im: f64 },
}

/// Zeros of a polynomial of degree at most two. Leading coefficients below
/// `1e-13` times the largest coefficient are treated as cancellation noise.
pub fn q_zeros(q: &Poly) -> QZeros {
    let scale = q.max_abs_coeff();
    let mut c: Vec<f64> = q.coeffs.clone();
    while matches!(c.last(), Some(&v) if v.abs() <= 1e-13 * scale) {
        c.pop();
    }
    match c.len() {
        0 | 1 => QZeros::NoZeros,
        2 => QZeros::Real(vec![-c[0] / c[1]]),
        3 => {
            let (a, b, cc) = (c[2], c[1], c[0]);
            let disc = b * b - 4.0 * a * cc;
            if disc < 0.0 {
                QZeros::ComplexPair {
                    re: -b / (2.0 * a),
                    im: (-disc).sqrt() / (2.0 * a.abs()),
                }
            } else {
                let s = disc.sqrt();
                let h = -0.5 * (b + if b >= 0.0 { s } else { -s });
                let mut z = if h == 0.0 {
                    vec![0.0, 0.0]
                } else {
                    vec![h / a, cc / h]
                };
                z.sort_by(|x, y| x.total_cmp(y));
                QZeros::Real(z)
            }
        }
        _ => QZeros::Real(vec![]),
    }
}

/// Per-zero stationarity residuals and an energy comparison against
/// randomly displaced configurations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub case: StructureCase,
    pub n: usize,
    pub zeros: Vec<f64>,
    /// `x_j - a`, with the zero next to `a` carried at full relative precision.
    pub offsets: Vec<f64>,
    pub q: LocalQ,
    pub q_zeros: QZeros,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub energy: f64,
    pub perturbed_energies: Vec<f64>,
    /// Number of displaced configurations whose energy is below `energy`.
    pub lower_neighbors: usize,
}

impl EquilibriumReport {
    /// The zero configuration has the smallest energy among the samples.
    pub fn energy_minimal_among_samples(&self) -> bool {
        self.lower_neighbors == 0
    }
}

/// Number of displaced configurations sampled by [`equilibrium_residual`].
pub const ENERGY_SAMPLES: usize = 10;

/// Stationarity of the energy at the zeros of `p_n^N`, plus an energy
/// comparison with [`ENERGY_SAMPLES`] configurations in which every charge is
/// moved by at most 1% of the distance to its nearest neighbour or obstacle
/// (`a`, a support endpoint or a real zero of `Q`).
pub fn equilibrium_residual(spec: &MeasureSpec, n: usize) -> Result<EquilibriumReport> {
    let sr = StructureRelation::new(spec, n)?;
    let offsets = sr.zero_offsets(n)?;
    let lq = sr.local_q(n)?;
    let residuals = sr.stationarity_residuals(&lq, &offsets)?;
    let max_residual = residuals.iter().fold(0.0_f64, |m, &r| m.max(r));
    let energy = sr.energy(&lq, &offsets);
    let hull = spec.hull();
    let mut obstacles: Vec<f64> = vec![0.0];
    obstacles.extend(
        [hull.xi, hull.eta]
            .iter()
            .filter(|v| v.is_finite())
            .map(|v| v - spec.a),
    );
    let q_offsets = lq.zero_offsets();
    if let QZeros::Real(z) = &q_offsets {
        obstacles.extend(z.iter().copied());
    }
    let reach: Vec<f64> = offsets
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            offsets
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &y)| (x - y).abs())
                .chain(obstacles.iter().map(|&o| (x - o).abs()).filter(|&d| d > 0.0))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e1e_c7a5);
    let perturbed_energies: Vec<f64> = (0..ENERGY_SAMPLES)
        .map(|_| {
            let moved: Vec<f64> = offsets
                .iter()
                .zip(&reach)
                .map(|(&d, &r)| d + 0.01 * r.min(1.0) * rng.gen_range(-1.0..1.0))
                .collect();
            sr.energy(&lq, &moved)
        })
        .collect();
    let lower_neighbors = perturbed_energies.iter().filter(|&&e| e < energy).count();
    Ok(EquilibriumReport {
        case: sr.case(),
        n,
        zeros: offsets.iter().map(|d| spec.a + d).collect(),
        offsets,
        q_zeros: lq.zeros(),
        q: lq,
        residuals,
        max_residual,
        energy,
        perturbed_energies,
        lower_neighbors,
    })
}

/// Location of the zero `u_n` of the linear `Q` in the two boundary cases,
/// relative to its large-`n` prediction:
/// `u_n ≈ (α+1) Γ(α+2)² / N · n^{-α-2}` (Laguerre, `a = 0`) and
/// `u_n + 1 ≈ 2^{α+β+2} (β+1) Γ(β+2)² / N · n^{-2(β+2)}` (Jacobi, `a = -1`).
/// The reported value is the ratio, which should approach 1.
pub fn q_zero_trend(spec: &MeasureSpec, n_list: &[usize]) -> Result<TrendReport> {
    let case = StructureCase::detect(spec)?;
    let mass = spec.mass;
    if mass <= 0.0 {
        return Err(OpolyError::Domain("the Q-zero asymptotics need N > 0".into()));
    }
    let n_max = n_list.iter().copied().max().unwrap_or(2);
    let sr = StructureRelation::new(spec, n_max)?;
    let mut points = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let lq = sr.local_q(n)?;
        let nf = n as f64;
        let ratio = match (case, spec.family) {
            (StructureCase::LaguerreAtZero, ClassicalFamily::Laguerre { alpha }) => {
                let u = -lq.at_a / lq.slope;
                let pred = (alpha + 1.0) * (2.0 * lgamma(alpha + 2.0)).exp() / mass
                    * nf.powf(-alpha - 2.0);
                u / pred
            }
            (StructureCase::JacobiAtMinusOne, ClassicalFamily::Jacobi { alpha, beta }) => {
                let shift = -lq.at_a / lq.slope;
                let pred = ((alpha + beta + 2.0) * std::f64::consts::LN_2
                    + 2.0 * lgamma(beta + 2.0))
                .exp()
                    * (beta + 1.0)
                    / mass
                    * nf.powf(-2.0 * (beta + 2.0));
                shift / pred
            }
            _ => {
                return Err(OpolyError::Domain(format!(
                    "no large-n prediction for the zeros of Q in case {}",
                    case.tag()
                )))
            }
        };
        points.push(TrendPoint { at: nf, value: ratio });
    }
    Ok(TrendReport::new(
        format!("{} Q-zero / asymptotic prediction", case.tag()),
        1.0,
        points,
    ))
}

/// `n (β*_n/β_n - 1)` and `n (γ*_n/γ_n - 1)` for the Christoffel transform of
/// the Laguerre weight at `a < 0`; they approach `1/2` and `1`.
pub fn laguerre_coeff_trends(alpha: f64, a: f64, n_list: &[usize]) -> Result<(TrendReport, TrendReport)> {
    if a >= 0.0 {
        return Err(OpolyError::Domain(format!("a must be negative, got {a}")));
    }
    let fam = ClassicalFamily::laguerre(alpha)?;
    let n_max = n_list.iter().copied().max().unwrap_or(1);
    let base = fam.recurrence(n_max + 2)?;
    let star = christoffel_step(&base, a)?;
    let mut beta_pts = Vec::new();
    let mut gamma_pts = Vec::new();
    for &n in n_list {
        if n == 0 {
            return Err(OpolyError::Domain("n >= 1 required".into()));
        }
        let nf = n as f64;
        beta_pts.push(TrendPoint {
            at: nf,
            value: nf * (star.beta(n) / base.beta(n) - 1.0),
        });
        gamma_pts.push(TrendPoint {
            at: nf,
            value: nf * (star.gamma(n) / base.gamma(n) - 1.0),
        });
    }
    Ok((
        TrendReport::new("n(β*_n/β_n - 1)", 0.5, beta_pts),
        TrendReport::new("n(γ*_n/γ_n - 1)", 1.0, gamma_pts),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lag(alpha: f64, a: f64, mass: f64) -> MeasureSpec {
        MeasureSpec::uvarov(ClassicalFamily::laguerre(alpha).unwrap(), a, mass).unwrap()
    }

    fn jac(alpha: f64, beta: f64, a: f64, mass: f64) -> MeasureSpec {
        MeasureSpec::uvarov(ClassicalFamily::jacobi(alpha, beta).unwrap(), a, mass).unwrap()
    }

    #[test]
    fn pearson_pairs() {
        let p = pearson_star(&ClassicalFamily::laguerre(2.0).unwrap(), 0.0).unwrap();
        assert_eq!(p.phi.coeffs, vec![0.0, 1.0]);
        assert_eq!(p.psi.coeffs, vec![4.0, -1.0]);
        let p = pearson_star(&ClassicalFamily::jacobi(0.5, 2.0).unwrap(), -1.0).unwrap();
        assert_eq!(p.phi.coeffs, vec![1.0, 0.0, -1.0]);
        assert_eq!(p.psi.coeffs, vec![2.5, -5.5]);
        // (x+1)x and 2x + (x+1)(α+1-x) at α = 1
        let p = pearson_star(&ClassicalFamily::laguerre(1.0).unwrap(), -1.0).unwrap();
        assert_eq!(p.phi.coeffs, vec![0.0, 1.0, 1.0]);
        assert_eq!(p.psi.coeffs, vec![2.0, 3.0, -1.0]);
        assert!(pearson_star(&ClassicalFamily::laguerre(1.0).unwrap(), 0.5).is_err());
    }

    #[test]
    fn laguerre_edge_ladder_is_n_and_n_times_n_plus_alpha_plus_one() {
        let sr = structure_relation(&lag(2.0, 0.0, 1.0), 5).unwrap();
        assert_eq!(sr.a_poly(5).unwrap().coeffs, vec![5.0]);
        assert_eq!(sr.b_poly(5).unwrap().coeffs, vec![5.0 * 8.0]);
    }

    #[test]
    fn lemma_identity_holds_in_all_cases() {
        let specs = [
            lag(0.5, 0.0, 1.0),
            lag(-0.5, -1.0, 2.0),
            jac(0.5, -0.3, -1.0, 1.0),
            jac(2.0, 1.0, -1.5, 3.0),
            jac(0.0, 0.5, 2.0, 3.0),
        ];
        for spec in specs {
            let sr = StructureRelation::new(&spec, 10).unwrap();
            let xs = sample_points(&spec, 10, 30);
            for n in 2..=10 {
                let r = sr.lemma_residual(n, &xs).unwrap();
                assert!(r < 1e-12, "{:?} n={n}: {r:e}", sr.case());
                let s = sr.structure_residual(n, &xs).unwrap();
                assert!(s < 1e-11, "{:?} n={n}: structure {s:e}", sr.case());
            }
        }
    }

    #[test]
    fn perturbed_b_is_caught() {
        let spec = lag(2.0, 0.0, 1.0);
        let sr = StructureRelation::new(&spec, 6).unwrap().with_b_perturbation(1.0);
        let r = sr.lemma_residual(6, &sample_points(&spec, 6, 9)).unwrap();
        assert!(r > 1e-4, "{r:e}");
    }

    #[test]
    fn zero_mass_laguerre_edge_q_is_n_x() {
        let sr = StructureRelation::new(&lag(1.0, 0.0, 0.0), 4).unwrap();
        let q = sr.q_polynomial(4).unwrap();
        assert!(q.coeff(0).abs() < 1e-12);
        assert!((q.coeff(1) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_match_assembly() {
        for spec in [
            lag(2.0, 0.0, 1.0),
            lag(0.0, -1.0, 1.0),
            jac(0.0, 0.0, -1.0, 10.0),
            jac(0.5, 2.0, -2.0, 0.1),
        ] {
            let sr = StructureRelation::new(&spec, 8).unwrap();
            for n in 2..=8 {
                let q = sr.q_polynomial(n).unwrap();
                let qc = sr.q_closed_form(n).unwrap();
                let scale = q.max_abs_coeff();
                for k in 0..3 {
                    assert!(
                        (q.coeff(k) - qc.coeff(k)).abs() <= 1e-10 * scale,
                        "{:?} n={n} k={k}: {} vs {}",
                        sr.case(),
                        q.coeff(k),
                        qc.coeff(k)
                    );
                }
            }
        }
    }

    #[test]
    fn ode_holds_off_the_zeros() {
        let spec = lag(2.0, 0.0, 1.0);
        let sr = StructureRelation::new(&spec, 4).unwrap();
        let r = ode_residual(&sr, 4, &sample_points(&spec, 4, 20)).unwrap();
        assert!(r < 1e-9, "{r:e}");
    }

    #[test]
    fn ode_pole_reported() {
        let sr = StructureRelation::new(&lag(1.0, 0.0, 0.0), 3).unwrap();
        let ode = sr.ode_coefficients(3).unwrap();
        assert!(matches!(ode.eval(0.0), Err(OpolyError::Pole(_))));
    }

    #[test]
    fn potential_derivative_matches_field() {
        for spec in [
            lag(2.0, 0.0, 1.0),
            lag(0.5, -2.0, 1.0),
            jac(0.5, 0.5, -1.0, 3.0),
            jac(1.0, 0.0, -3.0, 3.0),
        ] {
            let sr = StructureRelation::new(&spec, 4).unwrap();
            let lq = sr.local_q(4).unwrap();
            let q = &lq.q;
            let x = match spec.family {
                ClassicalFamily::Laguerre { .. } => 2.3,
                _ => 0.31,
            };
            let d = x - spec.a;
            let h = 1e-6;
            let dv = (sr.potential(&lq, d + h) - sr.potential(&lq, d - h)) / (2.0 * h);
            let field = -sr.psi().eval(x) / sr.phi().eval(x) + q.derivative().eval(x) / q.eval(x);
            assert!((dv - field).abs() < 1e-6 * (1.0 + field.abs()), "{dv} vs {field}");
        }
    }

    #[test]
    fn stationarity_at_zeros_and_not_elsewhere() {
        let rep = equilibrium_residual(&lag(2.0, 0.0, 1.0), 5).unwrap();
        assert!(rep.max_residual < 1e-9, "{:e}", rep.max_residual);
        let sr = StructureRelation::new(&lag(2.0, 0.0, 1.0), 5).unwrap();
        let moved: Vec<f64> = rep.offsets.iter().map(|x| x * 1.1 + 0.05).collect();
        let r = sr.stationarity_residuals(&rep.q, &moved).unwrap();
        assert!(r.iter().cloned().fold(0.0, f64::max) > 1e-2);
    }

    #[test]
    fn q_zero_solver() {
        assert_eq!(q_zeros(&Poly::new(vec![-2.0, 1.0])), QZeros::Real(vec![2.0]));
        assert_eq!(
            q_zeros(&Poly::new(vec![2.0, -3.0, 1.0])),
            QZeros::Real(vec![1.0, 2.0])
        );
        assert!(matches!(
            q_zeros(&Poly::new(vec![1.0, 0.0, 1.0])),
            QZeros::ComplexPair { .. }
        ));
        assert_eq!(q_zeros(&Poly::constant(3.0)), QZeros::NoZeros);
    }

    #[test]
    fn q_at_a_agrees_with_coefficients_when_well_conditioned() {
        for spec in [lag(2.0, 0.0, 1.0), lag(0.5, -1.0, 0.3), jac(0.0, 1.0, -1.0, 2.0), jac(1.0, 1.0, 3.0, 0.5)] {
            let sr = StructureRelation::new(&spec, 4).unwrap();
            let lq = sr.local_q(4).unwrap();
            let direct = lq.q.eval(spec.a);
            assert!(
                (lq.at_a - direct).abs() <= 1e-10 * lq.q.eval_abs(spec.a),
                "{:?}: {} vs {direct}",
                sr.case(),
                lq.at_a
            );
        }
    }

    #[test]
    fn pinched_captured_zero_stays_stationary() {
        // the captured zero and a zero of Q both sit ~1e-10 from a = -2
        let rep = equilibrium_residual(&jac(0.5, 1.0, -2.0, 1.0), 10).unwrap();
        assert!(rep.offsets[0] > 0.0 && rep.offsets[0] < 1e-8);
        assert!(rep.max_residual < 1e-9, "{:e}", rep.max_residual);
    }

    #[test]
    fn jacobi_at_one_rejected() {
        assert!(StructureCase::detect(&jac(0.0, 0.0, 1.0, 1.0)).is_err());
    }
}
