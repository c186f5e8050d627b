use thiserror::Error;

/// Errors reported by the factorization library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("data length {got} does not match {dim}x{dim} = {}", dim * dim)]
    DataLength { dim: usize, got: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("matrix is not orthogonal: ||U^T U - I||_F = {defect:.3e} exceeds {tol:.3e}")]
    NotOrthogonal { defect: f64, tol: f64 },

    #[error("matrix is not symmetric: max |A_ij - A_ji| = {defect:.3e} exceeds {tol:.3e}")]
    NotSymmetric { defect: f64, tol: f64 },

    #[error("{0}")]
    InvalidParameter(String),

    #[error("eigendecomposition did not converge within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Shorthand for an [`Error::InvalidParameter`] with a formatted message.
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
