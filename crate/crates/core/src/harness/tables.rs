//! Named study presets matching the published error tables: which problem,
//! scheme, parameter values, and mesh sequence each table used.

use crate::error::SolverError;
use crate::harness::convergence::{Scheme, TauRule};
use crate::harness::problems::ProblemParams;
use crate::Result;

/// One study of a preset: a single (problem, scheme, parameters, meshes)
/// combination. A table usually bundles several.
#[derive(Debug, Clone)]
pub struct StudySpec {
    pub label: String,
    pub problem: &'static str,
    pub scheme: Scheme,
    pub params: ProblemParams,
    pub m_list: Vec<usize>,
    pub tau_rule: TauRule,
}

fn doubling(from: usize, to: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = from;
    while m <= to {
        out.push(m);
        m *= 2;
    }
    out
}

fn params(alpha: f64, beta: f64, lambda: f64) -> ProblemParams {
    ProblemParams { alpha, beta, lambda }
}

/// Resolves a preset name. Accepted spellings: `1`/`t1`, `2`/`t2`, `3`/`t3`
/// for the steady tables, `t4`, `t5`, `t6` for the evolution tables, and
/// `tempered5` for the fifth-order tempered steady runs. `extended` widens
/// the 2D preset from m = 64 to m = 128.
pub fn table_studies(table: &str, extended: bool) -> Result<Vec<StudySpec>> {
    let meshes_1d = doubling(8, 128);
    let meshes_2d = doubling(8, if extended { 128 } else { 64 });
    let studies = match table {
        "1" | "t1" => [1.1, 1.5, 1.9]
            .iter()
            .map(|&a| StudySpec {
                label: format!("steady order 4, alpha={a}"),
                problem: "example2_1",
                scheme: Scheme::SteadyOrder4,
                params: params(a, 0.0, 0.0),
                m_list: meshes_1d.clone(),
                tau_rule: TauRule::HSquared,
            })
            .collect(),
        "2" | "t2" => [1.1, 1.5]
            .iter()
            .map(|&a| StudySpec {
                label: format!("steady order 5, alpha={a}"),
                problem: "example2_4",
                scheme: Scheme::SteadyOrder5,
                params: params(a, 0.0, 0.0),
                m_list: meshes_1d.clone(),
                tau_rule: TauRule::HSquared,
            })
            .collect(),
        "3" | "t3" => [1.1, 1.9]
            .iter()
            .map(|&a| StudySpec {
                label: format!("tempered steady order 4, alpha={a}, lambda=1.5"),
                problem: "example5_1",
                scheme: Scheme::SteadyOrder4,
                params: params(a, 0.0, 1.5),
                m_list: meshes_1d.clone(),
                tau_rule: TauRule::HSquared,
            })
            .collect(),
        "tempered5" => [1.1, 1.5]
            .iter()
            .map(|&a| StudySpec {
                label: format!("tempered steady order 5, alpha={a}, lambda=1.5"),
                problem: "example5_4",
                scheme: Scheme::SteadyOrder5,
                params: params(a, 0.0, 1.5),
                m_list: meshes_1d.clone(),
                tau_rule: TauRule::HSquared,
            })
            .collect(),
        "t4" => {
            let mut out = Vec::new();
            for &a in &[1.1, 1.5, 1.9] {
                for &l in &[0.0, 1.5] {
                    out.push(StudySpec {
                        label: format!("evolution order 4, alpha={a}, lambda={l}"),
                        problem: "example6_1",
                        scheme: Scheme::CrankNicolson,
                        params: params(a, 0.0, l),
                        m_list: meshes_1d.clone(),
                        tau_rule: TauRule::HSquared,
                    });
                }
            }
            out
        }
        "t5" => [1.1, 1.5, 1.9]
            .iter()
            .map(|&a| StudySpec {
                label: format!("two-sided evolution, alpha={a}"),
                problem: "example6_2",
                scheme: Scheme::CrankNicolson,
                params: params(a, 0.0, 0.0),
                m_list: meshes_1d.clone(),
                tau_rule: TauRule::HSquared,
            })
            .collect(),
        "t6" => {
            let mut out = Vec::new();
            for &(a, b) in &[(1.1, 1.5), (1.5, 1.9)] {
                for scheme in [Scheme::Douglas, Scheme::Dyakonov] {
                    out.push(StudySpec {
                        label: format!(
                            "2D {} splitting, alpha={a}, beta={b}",
                            scheme.label()
                        ),
                        problem: "example6_3",
                        scheme,
                        params: params(a, b, 0.0),
                        m_list: meshes_2d.clone(),
                        tau_rule: TauRule::HSquared,
                    });
                }
            }
            out
        }
        other => {
            return Err(SolverError::InvalidParameter(format!(
                "unknown table preset {other:?}; expected 1, 2, 3, t4, t5, t6, or tempered5"
            )))
        }
    };
    Ok(studies)
}
