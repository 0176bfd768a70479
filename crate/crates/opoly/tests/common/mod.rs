//! Reference computations used by the integration tests.
//!
//! Perturbed measures are discretized exactly: a Gauss rule of the classical
//! weight (nodes and weights from a dense symmetric eigensolver applied to
//! the closed-form Jacobi matrix) is multiplied by `|x - a|^level` and
//! augmented by `N δ_a`. A Lanczos run with full reorthogonalization on that
//! discrete measure reproduces the recurrence of the perturbed family for
//! every degree the rule integrates exactly. None of this goes through the
//! library's kernel formulas, ratio recursions or tridiagonal solver.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use opoly::ClassicalFamily;
use statrs::function::gamma::ln_gamma;

/// Nodes of the default rules. Exact for polynomials up to degree 159.
pub const RULE_SIZE: usize = 80;

/// Monic recurrence `p_{k+1} = (x - b_k) p_k - g_k p_{k-1}`; `g[0]` is the
/// total mass.
#[derive(Debug, Clone)]
pub struct Recurrence {
    pub b: Vec<f64>,
    pub g: Vec<f64>,
}

pub fn family_params(fam: &ClassicalFamily) -> (char, f64, f64) {
    match *fam {
        ClassicalFamily::Jacobi { alpha, beta } => ('J', alpha, beta),
        ClassicalFamily::Laguerre { alpha } => ('L', alpha, 0.0),
        ClassicalFamily::Hermite => ('H', 0.0, 0.0),
    }
}

/// Closed-form recurrence of the classical weights
/// `(1-x)^α (1+x)^β`, `x^α e^{-x}` and `e^{-x²}`.
pub fn classical(fam: &ClassicalFamily, len: usize) -> Recurrence {
    let (kind, al, be) = family_params(fam);
    let mut b = Vec::with_capacity(len);
    let mut g = Vec::with_capacity(len);
    for k in 0..len {
        let n = k as f64;
        match kind {
            'J' => {
                let s = al + be;
                let t = 2.0 * n + s;
                b.push(if k == 0 {
                    (be - al) / (s + 2.0)
                } else {
                    (be * be - al * al) / (t * (t + 2.0))
                });
                g.push(match k {
                    0 => ((s + 1.0) * std::f64::consts::LN_2 + ln_gamma(al + 1.0) + ln_gamma(be + 1.0)
                        - ln_gamma(s + 2.0))
                    .exp(),
                    1 => 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + s).powi(2) * (3.0 + s)),
                    _ => 4.0 * n * (n + al) * (n + be) * (n + s) / (t * t * (t + 1.0) * (t - 1.0)),
                });
            }
            'L' => {
                b.push(2.0 * n + al + 1.0);
                g.push(if k == 0 { ln_gamma(al + 1.0).exp() } else { n * (n + al) });
            }
            _ => {
                b.push(0.0);
                g.push(if k == 0 { std::f64::consts::PI.sqrt() } else { n / 2.0 });
            }
        }
    }
    Recurrence { b, g }
}

/// A discrete positive measure.
#[derive(Debug, Clone)]
pub struct Discrete {
    pub x: Vec<f64>,
    pub w: Vec<f64>,
}

/// Golub-Welsch rule with `m` nodes for the given recurrence.
pub fn gauss(rec: &Recurrence, m: usize) -> Discrete {
    let mut j = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        j[(i, i)] = rec.b[i];
        if i + 1 < m {
            let off = rec.g[i + 1].sqrt();
            j[(i, i + 1)] = off;
            j[(i + 1, i)] = off;
        }
    }
    let mut x: Vec<f64> = SymmetricEigen::new(j).eigenvalues.iter().copied().collect();
    x.sort_by(f64::total_cmp);
    // 1 / Σ p̂_k(x)² keeps full relative accuracy in the tiny weights, which
    // the eigenvector components do not
    let w = x
        .iter()
        .map(|&t| {
            let (mut prev, mut cur) = (0.0, 1.0 / rec.g[0].sqrt());
            let mut sum = cur * cur;
            for k in 0..m - 1 {
                let next_g = rec.g[k + 1].sqrt();
                let g = if k == 0 { 0.0 } else { rec.g[k].sqrt() };
                let next = ((t - rec.b[k]) * cur - g * prev) / next_g;
                prev = cur;
                cur = next;
                sum += cur * cur;
            }
            1.0 / sum
        })
        .collect();
    Discrete { x, w }
}

/// Default Gauss rule of a classical weight.
pub fn rule(fam: &ClassicalFamily) -> Discrete {
    gauss(&classical(fam, RULE_SIZE + 1), RULE_SIZE)
}

/// `|x - a|^level dμ + mass δ_a`, with `μ` given by a rule.
pub fn perturb(rule: &Discrete, level: i32, a: f64, mass: f64) -> Discrete {
    let mut d = rule.clone();
    for (x, w) in d.x.iter().zip(d.w.iter_mut()) {
        *w *= (x - a).abs().powi(level);
    }
    if mass > 0.0 {
        d.x.push(a);
        d.w.push(mass);
    }
    d
}

/// First `len` recurrence coefficients of a discrete measure.
pub fn lanczos(d: &Discrete, len: usize) -> Recurrence {
    let m = d.x.len();
    assert!(len < m, "discrete measure too small");
    let total: f64 = d.w.iter().sum();
    let mut qs: Vec<Vec<f64>> = vec![d.w.iter().map(|w| (w / total).sqrt()).collect()];
    let mut b = Vec::with_capacity(len);
    let mut g = vec![total];
    for k in 0..len {
        let q = &qs[k];
        let mut v: Vec<f64> = d.x.iter().zip(q).map(|(x, qi)| x * qi).collect();
        let bk: f64 = v.iter().zip(q).map(|(a, c)| a * c).sum();
        b.push(bk);
        for _ in 0..2 {
            for prev in &qs {
                let dot: f64 = v.iter().zip(prev).map(|(a, c)| a * c).sum();
                for (vi, pi) in v.iter_mut().zip(prev) {
                    *vi -= dot * pi;
                }
            }
        }
        let norm = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        g.push(norm * norm);
        qs.push(v.into_iter().map(|t| t / norm).collect());
    }
    g.truncate(len);
    Recurrence { b, g }
}

/// Recurrence of `|x - a|^level dμ + mass δ_a` up to index `len - 1`.
pub fn perturbed(fam: &ClassicalFamily, level: i32, a: f64, mass: f64, len: usize) -> Recurrence {
    lanczos(&perturb(&rule(fam), level, a, mass), len)
}

/// Zeros of `p_n` from the `n × n` Jacobi matrix, increasing.
pub fn zeros(rec: &Recurrence, n: usize) -> Vec<f64> {
    if n == 0 {
        return vec![];
    }
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = rec.b[i];
        if i + 1 < n {
            let off = rec.g[i + 1].sqrt();
            j[(i, i + 1)] = off;
            j[(i + 1, i)] = off;
        }
    }
    let mut z: Vec<f64> = SymmetricEigen::new(j).eigenvalues.iter().copied().collect();
    z.sort_by(f64::total_cmp);
    z
}

/// `(p_n(x), p_n'(x), p_n''(x))` of the monic family.
pub fn jet(rec: &Recurrence, n: usize, x: f64) -> (f64, f64, f64) {
    let (mut v0, mut d0, mut s0) = (0.0, 0.0, 0.0);
    let (mut v1, mut d1, mut s1) = (1.0, 0.0, 0.0);
    for k in 0..n {
        let g = if k == 0 { 0.0 } else { rec.g[k] };
        let t = x - rec.b[k];
        let v2 = t * v1 - g * v0;
        let d2 = v1 + t * d1 - g * d0;
        let s2 = 2.0 * d1 + t * s1 - g * s0;
        (v0, d0, s0) = (v1, d1, s1);
        (v1, d1, s1) = (v2, d2, s2);
    }
    (v1, d1, s1)
}

pub fn value(rec: &Recurrence, n: usize, x: f64) -> f64 {
    jet(rec, n, x).0
}

/// Largest `|u - v| / (1 + |v|)` over paired entries.
pub fn max_dev(u: &[f64], v: &[f64]) -> f64 {
    assert_eq!(u.len(), v.len());
    u.iter()
        .zip(v)
        .map(|(p, q)| (p - q).abs() / (1.0 + q.abs()))
        .fold(0.0, f64::max)
}

pub fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

/// Zeros of the degree-`degree` polynomial for `e^{-x²} dx + mass δ_0`,
/// computed on the line without the quadratic change of variables.
pub fn hermite_type(mass: f64, degree: usize) -> Vec<f64> {
    let rec = perturbed(&ClassicalFamily::Hermite, 0, 0.0, mass, degree + 1);
    zeros(&rec, degree)
}

/// Closed-form endpoint capture rates with Gamma functions.
pub fn rate_laguerre(n: usize, alpha: f64) -> f64 {
    let n = n as f64;
    (ln_gamma(n) + ln_gamma(alpha + 2.0) + ln_gamma(alpha + 3.0) - ln_gamma(n + alpha + 2.0)).exp()
}

pub fn rate_jacobi_left(n: usize, alpha: f64, beta: f64) -> f64 {
    let n = n as f64;
    let lg = (alpha + beta + 2.0) * std::f64::consts::LN_2
        + ln_gamma(n)
        + ln_gamma(beta + 2.0)
        + ln_gamma(beta + 3.0)
        + ln_gamma(n + alpha)
        - ln_gamma(n + beta + 2.0)
        - ln_gamma(n + alpha + beta + 2.0);
    lg.exp()
}

pub fn rate_jacobi_right(n: usize, alpha: f64, beta: f64) -> f64 {
    let n = n as f64;
    let lg = (alpha + beta + 2.0) * std::f64::consts::LN_2
        + ln_gamma(n)
        + ln_gamma(alpha + 2.0)
        + ln_gamma(alpha + 3.0)
        + ln_gamma(n + beta)
        - ln_gamma(n + alpha + 2.0)
        - ln_gamma(n + alpha + beta + 2.0);
    lg.exp()
}
