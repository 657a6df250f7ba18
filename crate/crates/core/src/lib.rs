//! Quasi-compact Grünwald discretizations for one- and two-dimensional
//! space-fractional and tempered space-fractional diffusion equations.
//!
//! The library covers the full pipeline from coefficient tables to
//! reproducible convergence studies:
//!
//! - [`coeffs`]: Grünwald-Letnikov weights, shifted-expansion coefficients,
//!   the fourth- and fifth-order quasi-compact coefficient families, and the
//!   fused (optionally tempered) convolution weights.
//! - [`operators`]: discrete left/right fractional operators, the tridiagonal
//!   compact operators, assembled Toeplitz/tridiagonal matrices, and Dirichlet
//!   boundary contributions.
//! - [`linalg`]: dense LU with partial pivoting, Thomas solve, circulant-embedded
//!   Toeplitz matvec, and the discrete norms used for error reporting.
//! - [`steady`]: the steady two-point boundary-value solver at order 4 or 5.
//! - [`evolution`]: the 1D Crank-Nicolson stepper and the 2D Douglas/D'yakonov
//!   ADI steppers.
//! - [`spectral`]: the generating function of the fused weights, von Neumann
//!   amplification factors, and grid scans asserting negativity/boundedness.
//! - [`harness`]: the registry of built-in benchmark problems with exact
//!   solutions, the convergence-study driver, and CSV reporting.
//!
//! Orders of accuracy follow the quasi-compact construction: a weighted
//! combination of shifted Grünwald sums approximates the Riemann-Liouville
//! derivative to fourth (or fifth) order once the tridiagonal compact operator
//! `P` is applied to the opposite side of the equation. Tempering multiplies
//! the convolution weights by exponentials of the grid spacing and leaves the
//! rest of the machinery unchanged.

pub mod coeffs;
pub mod error;
pub mod evolution;
pub mod grid;
pub mod harness;
pub mod linalg;
pub mod operators;
pub mod special;
pub mod spectral;
pub mod steady;

pub use coeffs::{FracOrder, Tempering};
pub use error::SolverError;
pub use grid::{Field2D, Grid1D, GridFunction1D};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, SolverError>;

/// Shared single-argument callable, used for sources f(x), initial data
/// u0(x), boundary signals phi(t), and exact solutions u(x).
pub type ScalarFn = std::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Shared two-argument callable; the solvers use it as f(x, t) in 1D and as
/// u0(x, y) in 2D.
pub type BivariateFn = std::sync::Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Shared three-argument callable for 2D space-time data f(x, y, t).
pub type TrivariateFn = std::sync::Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;
