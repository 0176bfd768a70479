use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OpolyError {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("degree {requested} exceeds prepared coefficients (max {available})")]
    Length { requested: usize, available: usize },

    #[error("ratio recursion broke down at n = {n} (|r| = {value:e}); the point is effectively inside the support")]
    RatioBreakdown { n: usize, value: f64 },

    #[error("numerical breakdown: {0}")]
    Breakdown(String),

    #[error("eigensolver did not converge for eigenvalue {index}")]
    NoConvergence { index: usize },

    #[error("no sign change for zero {index} inside [{lo}, {hi}] after fallback scan")]
    BracketFailure { index: usize, lo: f64, hi: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("singular configuration: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, OpolyError>;
