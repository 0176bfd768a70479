//! Orthogonal polynomials for classical measures under Christoffel and Uvarov
//! perturbations: recurrences, kernels, zeros, and the electrostatic model of
//! the zeros.

pub mod classical;
pub mod cli;
pub mod electrostatics;
pub mod error;
pub mod eval;
pub mod poly;
pub mod quadrature;
pub mod roots;
pub mod special;
pub mod transforms;
pub mod trend;
pub mod verify;
pub mod tridiag;
pub mod zeros;

pub use classical::{classical_recurrence, ClassicalFamily, RecurrenceCoeffs, Support};
pub use error::{OpolyError, Result};
pub use eval::{
    eval_with_derivative, kernel_diag, kernel_value, ratio_at, ratios, squared_norm,
    KernelAccumulator, PolyEvaluator,
};
pub use poly::Poly;
