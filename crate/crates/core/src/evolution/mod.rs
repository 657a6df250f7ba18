//! Time-dependent solvers.
//!
//! One-dimensional problems march with the Crank-Nicolson quasi-compact
//! scheme, tempered or not. Two-dimensional problems march with an ADI
//! splitting, in the Douglas or the D'yakonov arrangement; both reduce to the
//! same unsplit scheme up to a splitting term and must agree to solver
//! precision. Left-hand matrices are factorized once per run because they
//! depend only on the immutable (tau, h, parameter) combination.

mod adi2d;
mod cn1d;

pub use adi2d::{adi_solve_2d, AdiVariant, Evolution2D};
pub use cn1d::{cn_solve_1d, cn_solve_1d_with, CnOptions, Evolution1D, MatvecStrategy, TimeStepperState};
