//! Grid-refinement studies: solve a registered problem over a sequence of
//! mesh sizes, compare against its closed-form solution, and report errors
//! with observed orders.

use crate::error::SolverError;
use crate::evolution::{adi_solve_2d, cn_solve_1d, AdiVariant};
use crate::grid::{Field2D, GridFunction1D};
use crate::harness::problems::{ProblemParams, ProblemSpec};
use crate::linalg::{norms_1d, norms_2d, NormPair};
use crate::operators::SchemeOrder;
use crate::steady::solve_steady;
use std::io::Write;

/// Which discretization a study drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    SteadyOrder4,
    SteadyOrder5,
    CrankNicolson,
    Douglas,
    Dyakonov,
    /// Diagnostic scheme that samples the reference solution instead of
    /// solving, so every error is exactly zero.
    Exact,
}

impl Scheme {
    pub fn label(self) -> &'static str {
        match self {
            Scheme::SteadyOrder4 => "steady4",
            Scheme::SteadyOrder5 => "steady5",
            Scheme::CrankNicolson => "cn",
            Scheme::Douglas => "douglas",
            Scheme::Dyakonov => "dyakonov",
            Scheme::Exact => "exact",
        }
    }
}

/// How the time step follows the grid step. The registered problems all
/// live on the unit interval or square with final time 1, so `HSquared`
/// takes m^2 steps, which is exactly tau = h^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauRule {
    HSquared,
    FixedSteps(usize),
}

impl TauRule {
    fn steps(self, m: usize) -> usize {
        match self {
            TauRule::HSquared => m * m,
            TauRule::FixedSteps(n) => n.max(1),
        }
    }
}

/// One refinement level of a study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportRow {
    pub m: usize,
    pub h: f64,
    pub l2_error: f64,
    pub l2_rate: Option<f64>,
    pub linf_error: f64,
    pub linf_rate: Option<f64>,
}

/// Outcome of a refinement study. Levels that fail to solve land in
/// `failures` and leave no row; the remaining levels still run.
#[derive(Debug)]
pub struct ConvergenceReport {
    pub problem: String,
    pub scheme: Scheme,
    pub params: ProblemParams,
    pub tau_rule: TauRule,
    pub rows: Vec<ReportRow>,
    pub failures: Vec<(usize, SolverError)>,
}

fn observed_rate(prev: f64, current: f64) -> Option<f64> {
    if prev > 0.0 && current > 0.0 {
        Some((prev / current).log2())
    } else {
        None
    }
}

fn solve_level(
    spec: &ProblemSpec,
    params: ProblemParams,
    scheme: Scheme,
    m: usize,
    tau_rule: TauRule,
) -> Result<NormPair, SolverError> {
    let missing_exact =
        || SolverError::InvalidParameter(format!("{} has no reference solution", spec.name));
    match scheme {
        Scheme::SteadyOrder4 | Scheme::SteadyOrder5 => {
            let problem = spec.steady(params, m)?;
            let order = if scheme == Scheme::SteadyOrder4 {
                SchemeOrder::Four
            } else {
                SchemeOrder::Five
            };
            let numeric = solve_steady(&problem, order)?;
            let reference = problem.exact_on_grid().ok_or_else(missing_exact)?;
            norms_1d(&numeric, &reference)
        }
        Scheme::CrankNicolson => {
            let problem = spec.evolution_1d(params, m, tau_rule.steps(m))?;
            let numeric = cn_solve_1d(&problem)?;
            let exact = problem.exact.clone().ok_or_else(missing_exact)?;
            let t = problem.t_end;
            let reference = GridFunction1D::from_fn(problem.grid, |x| exact(x, t));
            norms_1d(&numeric, &reference)
        }
        Scheme::Douglas | Scheme::Dyakonov => {
            let problem = spec.evolution_2d(params, m, tau_rule.steps(m))?;
            let variant = if scheme == Scheme::Douglas {
                AdiVariant::Douglas
            } else {
                AdiVariant::Dyakonov
            };
            let numeric = adi_solve_2d(&problem, variant)?;
            let exact = problem.exact.clone().ok_or_else(missing_exact)?;
            let t = problem.t_end;
            let reference = Field2D::from_fn(problem.grid_x.m(), problem.grid_y.m(), |ix, iy| {
                exact(problem.grid_x.node(ix), problem.grid_y.node(iy), t)
            });
            norms_2d(&numeric, &reference, problem.grid_x.h(), problem.grid_y.h())
        }
        Scheme::Exact => {
            // Sample the reference and compare it with itself.
            match spec.kind {
                super::ProblemKind::Steady1D => {
                    let problem = spec.steady(params, m)?;
                    let reference = problem.exact_on_grid().ok_or_else(missing_exact)?;
                    norms_1d(&reference, &reference)
                }
                super::ProblemKind::Evolve1D => {
                    let problem = spec.evolution_1d(params, m, 1)?;
                    let exact = problem.exact.clone().ok_or_else(missing_exact)?;
                    let t = problem.t_end;
                    let reference = GridFunction1D::from_fn(problem.grid, |x| exact(x, t));
                    norms_1d(&reference, &reference)
                }
                super::ProblemKind::Evolve2D => {
                    let problem = spec.evolution_2d(params, m, 1)?;
                    let exact = problem.exact.clone().ok_or_else(missing_exact)?;
                    let t = problem.t_end;
                    let reference =
                        Field2D::from_fn(problem.grid_x.m(), problem.grid_y.m(), |ix, iy| {
                            exact(problem.grid_x.node(ix), problem.grid_y.node(iy), t)
                        });
                    norms_2d(&reference, &reference, problem.grid_x.h(), problem.grid_y.h())
                }
            }
        }
    }
}

/// Runs one problem over the mesh sequence and collects errors and rates.
/// A failed level is recorded and skipped; the next level starts a fresh
/// rate baseline.
pub fn run_convergence(
    spec: &ProblemSpec,
    params: ProblemParams,
    scheme: Scheme,
    m_list: &[usize],
    tau_rule: TauRule,
) -> ConvergenceReport {
    let mut report = ConvergenceReport {
        problem: spec.name.to_string(),
        scheme,
        params,
        tau_rule,
        rows: Vec::with_capacity(m_list.len()),
        failures: Vec::new(),
    };
    let mut prev: Option<(f64, f64)> = None;
    for &m in m_list {
        match solve_level(spec, params, scheme, m, tau_rule) {
            Ok(norms) => {
                let (l2_rate, linf_rate) = match prev {
                    Some((pl2, plinf)) => (
                        observed_rate(pl2, norms.l2),
                        observed_rate(plinf, norms.linf),
                    ),
                    None => (None, None),
                };
                report.rows.push(ReportRow {
                    m,
                    h: 1.0 / m as f64,
                    l2_error: norms.l2,
                    l2_rate,
                    linf_error: norms.linf,
                    linf_rate,
                });
                prev = Some((norms.l2, norms.linf));
            }
            Err(err) => {
                report.failures.push((m, err));
                prev = None;
            }
        }
    }
    report
}

fn format_rate(rate: Option<f64>) -> String {
    rate.map(|r| format!("{r:.5e}")).unwrap_or_default()
}

/// Writes the report as CSV: a fixed header, then one line per row, floats
/// in scientific notation with six significant digits and rates left empty
/// where undefined.
pub fn emit_csv<W: Write + ?Sized>(report: &ConvergenceReport, dest: &mut W) -> std::io::Result<()> {
    writeln!(dest, "m,h,l2_error,l2_rate,linf_error,linf_rate")?;
    for row in &report.rows {
        writeln!(
            dest,
            "{},{:.5e},{:.5e},{},{:.5e},{}",
            row.m,
            row.h,
            row.l2_error,
            format_rate(row.l2_rate),
            row.linf_error,
            format_rate(row.linf_rate),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::problems::find_problem;

    #[test]
    fn steady_study_reproduces_published_final_row() {
        let spec = find_problem("example2_1").unwrap();
        let params = ProblemParams {
            alpha: 1.9,
            ..spec.defaults
        };
        let report = run_convergence(
            &spec,
            params,
            Scheme::SteadyOrder4,
            &[8, 16, 32, 64, 128],
            TauRule::HSquared,
        );
        assert!(report.failures.is_empty());
        let last = report.rows.last().unwrap();
        assert!((last.l2_error - 1.8352e-9).abs() / 1.8352e-9 < 0.02);
        assert!((last.l2_rate.unwrap() - 3.9994).abs() < 0.05);
    }

    #[test]
    fn adi_study_reproduces_published_coarse_rows() {
        let spec = find_problem("example6_3").unwrap();
        let params = ProblemParams {
            alpha: 1.5,
            beta: 1.9,
            lambda: 0.0,
        };
        let report = run_convergence(
            &spec,
            params,
            Scheme::Douglas,
            &[8, 16],
            TauRule::HSquared,
        );
        assert!(report.failures.is_empty(), "{:?}", report.failures);
        let rows = &report.rows;
        assert!((rows[0].l2_error - 8.4729e-4).abs() / 8.4729e-4 < 0.02, "{:e}", rows[0].l2_error);
        assert!((rows[1].l2_error - 5.7210e-5).abs() / 5.7210e-5 < 0.02, "{:e}", rows[1].l2_error);
        assert!((rows[1].l2_rate.unwrap() - 3.8885).abs() < 0.1);
    }

    #[test]
    fn exact_sampler_gives_zero_errors_and_blank_rates() {
        let spec = find_problem("example6_2").unwrap();
        let report = run_convergence(
            &spec,
            spec.defaults,
            Scheme::Exact,
            &[8, 16, 32],
            TauRule::HSquared,
        );
        assert!(report.failures.is_empty());
        for row in &report.rows {
            assert_eq!(row.l2_error, 0.0);
            assert_eq!(row.linf_error, 0.0);
            assert!(row.l2_rate.is_none());
            assert!(row.linf_rate.is_none());
        }
        let mut csv = Vec::new();
        emit_csv(&report, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        for line in text.lines().skip(1) {
            assert!(line.ends_with(",0.00000e0,"), "line {line:?}");
        }
    }

    #[test]
    fn kind_mismatch_fails_every_level_without_aborting() {
        let spec = find_problem("example2_1").unwrap();
        let report = run_convergence(
            &spec,
            spec.defaults,
            Scheme::CrankNicolson,
            &[8, 16, 32],
            TauRule::HSquared,
        );
        assert!(report.rows.is_empty());
        assert_eq!(report.failures.len(), 3);
    }

    #[test]
    fn csv_output_is_deterministic_and_well_formed() {
        let spec = find_problem("example2_4").unwrap();
        let run = || {
            let report = run_convergence(
                &spec,
                spec.defaults,
                Scheme::SteadyOrder5,
                &[8, 16],
                TauRule::HSquared,
            );
            let mut csv = Vec::new();
            emit_csv(&report, &mut csv).unwrap();
            csv
        };
        let first = run();
        let second = run();
        assert_eq!(first, second);
        let text = String::from_utf8(first).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "m,h,l2_error,l2_rate,linf_error,linf_rate");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("8,1.25000e-1,"));
        // First row leaves both rate fields empty.
        assert_eq!(lines[1].matches(",,").count() + usize::from(lines[1].ends_with(',')), 2);
    }

    #[test]
    fn empty_study_emits_header_only() {
        let spec = find_problem("example2_1").unwrap();
        let report = run_convergence(
            &spec,
            spec.defaults,
            Scheme::SteadyOrder4,
            &[],
            TauRule::HSquared,
        );
        let mut csv = Vec::new();
        emit_csv(&report, &mut csv).unwrap();
        assert_eq!(
            String::from_utf8(csv).unwrap(),
            "m,h,l2_error,l2_rate,linf_error,linf_rate\n"
        );
    }
}
