use thiserror::Error;

use crate::linalg::ComplexMatrix;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("QR iteration did not converge within {iterations} steps")]
    NoConvergence {
        iterations: usize,
        /// Hessenberg matrix at the point the budget ran out, widened to `f64`.
        partial: Box<ComplexMatrix<f64>>,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("input vectors must sum to zero (|sum| = {residual:e})")]
    NotZeroSum { residual: f64 },

    #[error("vectors must be ordered by non-increasing length (violated at index {index})")]
    Ordering { index: usize },

    #[error("exhaustive search over {n} items exceeds the budget of {limit}; use sampled mode")]
    Budget { n: usize, limit: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degenerate eigenspace basis: {0}; try a tighter rank tolerance")]
    DegenerateBasis(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
