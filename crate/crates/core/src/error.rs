use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("{what} needs {requested} entries, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        requested: String,
        cap: u64,
    },

    #[error("invalid invariance pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid weight schedule: {0}")]
    InvalidWeights(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{nodes} nodes is not below N* = {n_star}; no lower bound applies, use the folded rectangle rule instead")]
    NotBelowCritical { nodes: usize, n_star: String },

    #[error("nullspace residual {residual:e} exceeds tolerance {tol:e}")]
    IllConditioned { residual: f64, tol: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("weight estimate violated: {0}")]
    WeightEstimate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
