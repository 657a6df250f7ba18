//! Minimal structured linear algebra for the quasi-compact schemes.
//!
//! The schemes only ever need four things: a dense LU factorization with
//! partial pivoting (the Crank-Nicolson and ADI left-hand matrices are dense
//! lower-Hessenberg-plus-tridiagonal), a Thomas solve for standalone
//! tridiagonal systems, a fast Toeplitz matrix-vector product via circulant
//! embedding (optional accelerator for the explicit right-hand side), and the
//! discrete L2/L∞ norms used by every error table. Norm sums run strictly
//! left-to-right so that repeated runs are byte-identical.

mod lu;
mod norms;
mod toeplitz;
mod tridiag;

pub use lu::{DenseLu, DenseMatrix};
pub use norms::{norms_1d, norms_2d, NormPair};
pub use toeplitz::ToeplitzMatvec;
pub use tridiag::Tridiagonal;
