//! Benchmark problems, convergence studies, and report output.
//!
//! The registry in [`problems`] holds every worked example with its exact
//! solution; [`convergence`] refines each one over doubling meshes and
//! reports errors with observed orders; [`tables`] names the standard study
//! bundles the command-line tool exposes.

mod convergence;
mod problems;
mod tables;

pub use convergence::{
    emit_csv, run_convergence, ConvergenceReport, ReportRow, Scheme, TauRule,
};
pub use problems::{
    find_problem, quintic_bump, quintic_bump_frac_derivative, registry, ProblemKind,
    ProblemParams, ProblemSpec,
};
pub use tables::{table_studies, StudySpec};
