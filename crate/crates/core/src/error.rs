//! Error type shared by all solver stages.

use thiserror::Error;

/// Failure modes of coefficient construction, assembly, and solves.
#[derive(Debug, Error)]
pub enum SolverError {
    /// A parameter is outside its admissible range (order, shift, grid size, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A linear system turned out singular to working precision.
    #[error("singular system in {context}: pivot {pivot:.3e} at step {step}")]
    SingularMatrix {
        /// Which solve hit the zero pivot.
        context: &'static str,
        /// Magnitude of the offending pivot.
        pivot: f64,
        /// Elimination step at which it occurred.
        step: usize,
    },

    /// Two grids (or a grid and a value vector) do not match.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Writing a report failed.
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}
