//! Registry of benchmark problems with known closed-form solutions.
//!
//! Every entry can build a concrete solver problem at any grid size, with
//! scalar parameters overridable around per-problem defaults. Two families
//! cover all entries: the monomial family `e^{-lambda x} x^6` whose tempered
//! derivative stays in closed form, and the quintic-bump family
//! `x^5 (1-x)^5` whose two-sided derivative expands binomially.

use crate::coeffs::{FracOrder, Tempering};
use crate::error::SolverError;
use crate::evolution::{Evolution1D, Evolution2D};
use crate::grid::Grid1D;
use crate::special::gamma;
use crate::steady::SteadyProblem;
use crate::Result;
use std::sync::Arc;

/// What kind of solver a problem drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Steady1D,
    Evolve1D,
    Evolve2D,
}

/// Scalar parameter slots. `beta` and `lambda` are ignored by problems that
/// have no second direction or no tempering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
}

#[derive(Clone, Copy)]
enum Builder {
    Steady(fn(ProblemParams, usize) -> Result<SteadyProblem>),
    Evolve1D(fn(ProblemParams, usize, usize) -> Result<Evolution1D>),
    Evolve2D(fn(ProblemParams, usize, usize) -> Result<Evolution2D>),
}

/// A registered benchmark problem.
#[derive(Clone, Copy)]
pub struct ProblemSpec {
    pub name: &'static str,
    pub description: &'static str,
    pub kind: ProblemKind,
    pub defaults: ProblemParams,
    builder: Builder,
}

impl ProblemSpec {
    /// Builds the steady two-point problem at grid size `m`.
    pub fn steady(&self, params: ProblemParams, m: usize) -> Result<SteadyProblem> {
        match self.builder {
            Builder::Steady(build) => build(params, m),
            _ => Err(SolverError::InvalidParameter(format!(
                "{} is not a steady problem",
                self.name
            ))),
        }
    }

    /// Builds the 1D evolution problem at grid size `m` with `n_steps`
    /// uniform time steps to t = 1.
    pub fn evolution_1d(&self, params: ProblemParams, m: usize, n_steps: usize) -> Result<Evolution1D> {
        match self.builder {
            Builder::Evolve1D(build) => build(params, m, n_steps),
            _ => Err(SolverError::InvalidParameter(format!(
                "{} is not a 1D evolution problem",
                self.name
            ))),
        }
    }

    /// Builds the 2D evolution problem on an m-by-m grid with `n_steps`
    /// uniform time steps to t = 1.
    pub fn evolution_2d(&self, params: ProblemParams, m: usize, n_steps: usize) -> Result<Evolution2D> {
        match self.builder {
            Builder::Evolve2D(build) => build(params, m, n_steps),
            _ => Err(SolverError::InvalidParameter(format!(
                "{} is not a 2D evolution problem",
                self.name
            ))),
        }
    }
}

/// x^5 (1-x)^5, the smooth bump vanishing to fourth order at both ends.
pub fn quintic_bump(x: f64) -> f64 {
    x.powi(5) * (1.0 - x).powi(5)
}

const BINOM5: [f64; 6] = [1.0, 5.0, 10.0, 10.0, 5.0, 1.0];

/// Two-sided Riemann-Liouville derivative of [`quintic_bump`] on [0, 1]:
/// the left-sided and right-sided parts summed, each expanded binomially in
/// powers of x and of 1 - x. Shared by the 1D two-sided and the 2D examples
/// so the long expression exists exactly once.
pub fn quintic_bump_frac_derivative(order: f64, x: f64) -> f64 {
    let mut acc = 0.0;
    for (i, binom) in BINOM5.iter().enumerate() {
        let p = 5.0 + i as f64;
        let coef = binom * gamma(p + 1.0) / gamma(p + 1.0 - order);
        let pair = x.powf(p - order) + (1.0 - x).powf(p - order);
        acc += if i % 2 == 0 { coef * pair } else { -coef * pair };
    }
    acc
}

fn unit_grid(m: usize) -> Result<Grid1D> {
    Grid1D::new(0.0, 1.0, m)
}

/// e^{-lambda x} x^6 steady family: the tempered left derivative of the
/// exact solution is 720 e^{-lambda x} x^{6-alpha} / Gamma(7-alpha), so the
/// source is that expression and lambda = 0 recovers the untempered case.
fn monomial_steady(params: ProblemParams, m: usize) -> Result<SteadyProblem> {
    let alpha = params.alpha;
    let lambda = params.lambda;
    let scale = 720.0 / gamma(7.0 - alpha);
    Ok(SteadyProblem {
        grid: unit_grid(m)?,
        alpha: FracOrder::new(alpha)?,
        lambda: Tempering::new(lambda)?,
        k1: 1.0,
        k2: 0.0,
        f: Arc::new(move |x: f64| scale * (-lambda * x).exp() * x.powf(6.0 - alpha)),
        ua: 0.0,
        ub: (-lambda).exp(),
        exact: Some(Arc::new(move |x: f64| (-lambda * x).exp() * x.powi(6))),
    })
}

/// Time-dependent version of the monomial family: u = e^{-t-lambda x} x^6.
fn monomial_evolution(params: ProblemParams, m: usize, n_steps: usize) -> Result<Evolution1D> {
    let alpha = params.alpha;
    let lambda = params.lambda;
    let scale = 720.0 / gamma(7.0 - alpha);
    Ok(Evolution1D {
        grid: unit_grid(m)?,
        t_end: 1.0,
        n_steps,
        alpha: FracOrder::new(alpha)?,
        lambda: Tempering::new(lambda)?,
        k1: 1.0,
        k2: 0.0,
        f: Arc::new(move |x: f64, t: f64| {
            -(-t - lambda * x).exp() * (x.powi(6) + scale * x.powf(6.0 - alpha))
        }),
        u0: Arc::new(move |x: f64| (-lambda * x).exp() * x.powi(6)),
        phi_a: Arc::new(|_t: f64| 0.0),
        phi_b: Arc::new(move |t: f64| (-t - lambda).exp()),
        exact: Some(Arc::new(move |x: f64, t: f64| {
            (-t - lambda * x).exp() * x.powi(6)
        })),
    })
}

/// Two-sided problem u = e^{-t} x^5 (1-x)^5 with K1 = K2 = 1 and no
/// tempering; the source folds in the two-sided derivative of the bump.
fn bump_evolution(params: ProblemParams, m: usize, n_steps: usize) -> Result<Evolution1D> {
    let alpha = params.alpha;
    Ok(Evolution1D {
        grid: unit_grid(m)?,
        t_end: 1.0,
        n_steps,
        alpha: FracOrder::new(alpha)?,
        lambda: Tempering::zero(),
        k1: 1.0,
        k2: 1.0,
        f: Arc::new(move |x: f64, t: f64| {
            -(-t).exp() * (quintic_bump(x) + quintic_bump_frac_derivative(alpha, x))
        }),
        u0: Arc::new(quintic_bump),
        phi_a: Arc::new(|_t: f64| 0.0),
        phi_b: Arc::new(|_t: f64| 0.0),
        exact: Some(Arc::new(move |x: f64, t: f64| (-t).exp() * quintic_bump(x))),
    })
}

/// Maps a coordinate back to its grid index when it lies on a node, which
/// is always the case for solver-issued samples.
fn node_index(x: f64, h: f64, m: usize) -> Option<usize> {
    let r = x / h;
    let i = r.round();
    if (r - i).abs() < 1e-9 * (1.0 + r.abs()) && i >= 0.0 && i <= m as f64 {
        Some(i as usize)
    } else {
        None
    }
}

/// 2D product problem u = 10^6 e^{-t} v(x) v(y) with two-sided derivatives
/// in both directions and homogeneous boundary data. The source samples
/// v and its fractional derivative from per-node tables because the solver
/// evaluates f on the whole grid every step; off-node queries fall back to
/// the direct formulas.
fn bump_evolution_2d(params: ProblemParams, m: usize, n_steps: usize) -> Result<Evolution2D> {
    let alpha = params.alpha;
    let beta = params.beta;
    let grid = unit_grid(m)?;
    let h = grid.h();
    let nodes = grid.nodes();
    let vx: Arc<Vec<f64>> = Arc::new(nodes.iter().map(|&x| quintic_bump(x)).collect());
    let sa: Arc<Vec<f64>> = Arc::new(
        nodes
            .iter()
            .map(|&x| quintic_bump_frac_derivative(alpha, x))
            .collect(),
    );
    let sb: Arc<Vec<f64>> = Arc::new(
        nodes
            .iter()
            .map(|&y| quintic_bump_frac_derivative(beta, y))
            .collect(),
    );
    const SCALE: f64 = 1.0e6;
    let f = {
        let (vx, sa, sb) = (vx.clone(), sa.clone(), sb.clone());
        Arc::new(move |x: f64, y: f64, t: f64| {
            let (vxv, sav) = match node_index(x, h, m) {
                Some(i) => (vx[i], sa[i]),
                None => (quintic_bump(x), quintic_bump_frac_derivative(alpha, x)),
            };
            let (vyv, sbv) = match node_index(y, h, m) {
                Some(j) => (vx[j], sb[j]),
                None => (quintic_bump(y), quintic_bump_frac_derivative(beta, y)),
            };
            -SCALE * (-t).exp() * (vxv * vyv + sav * vyv + sbv * vxv)
        })
    };
    Ok(Evolution2D {
        grid_x: grid,
        grid_y: grid,
        t_end: 1.0,
        n_steps,
        alpha: FracOrder::new(alpha)?,
        beta: FracOrder::new(beta)?,
        k1x: 1.0,
        k2x: 1.0,
        k1y: 1.0,
        k2y: 1.0,
        f,
        u0: Arc::new(|x: f64, y: f64| SCALE * quintic_bump(x) * quintic_bump(y)),
        phi: Arc::new(|_x: f64, _y: f64, _t: f64| 0.0),
        exact: Some(Arc::new(|x: f64, y: f64, t: f64| {
            SCALE * (-t).exp() * quintic_bump(x) * quintic_bump(y)
        })),
    })
}

/// All registered problems.
pub fn registry() -> Vec<ProblemSpec> {
    let p = |alpha: f64, beta: f64, lambda: f64| ProblemParams { alpha, beta, lambda };
    vec![
        ProblemSpec {
            name: "example2_1",
            description: "steady one-sided problem with exact solution x^6, fourth-order runs",
            kind: ProblemKind::Steady1D,
            defaults: p(1.5, 0.0, 0.0),
            builder: Builder::Steady(monomial_steady),
        },
        ProblemSpec {
            name: "example2_4",
            description: "same steady problem targeted by the fifth-order scheme",
            kind: ProblemKind::Steady1D,
            defaults: p(1.5, 0.0, 0.0),
            builder: Builder::Steady(monomial_steady),
        },
        ProblemSpec {
            name: "example5_1",
            description: "tempered steady problem with exact solution e^{-lambda x} x^6",
            kind: ProblemKind::Steady1D,
            defaults: p(1.5, 0.0, 1.5),
            builder: Builder::Steady(monomial_steady),
        },
        ProblemSpec {
            name: "example5_4",
            description: "tempered steady problem targeted by the fifth-order scheme",
            kind: ProblemKind::Steady1D,
            defaults: p(1.5, 0.0, 1.5),
            builder: Builder::Steady(monomial_steady),
        },
        ProblemSpec {
            name: "example6_1",
            description: "tempered 1D evolution with exact solution e^{-t-lambda x} x^6",
            kind: ProblemKind::Evolve1D,
            defaults: p(1.5, 0.0, 1.5),
            builder: Builder::Evolve1D(monomial_evolution),
        },
        ProblemSpec {
            name: "example6_2",
            description: "two-sided 1D evolution with exact solution e^{-t} x^5 (1-x)^5",
            kind: ProblemKind::Evolve1D,
            defaults: p(1.5, 0.0, 0.0),
            builder: Builder::Evolve1D(bump_evolution),
        },
        ProblemSpec {
            name: "example6_3",
            description: "2D two-sided evolution with product quintic-bump solution",
            kind: ProblemKind::Evolve2D,
            defaults: p(1.1, 1.5, 0.0),
            builder: Builder::Evolve2D(bump_evolution_2d),
        },
    ]
}

/// Looks a problem up by name.
pub fn find_problem(name: &str) -> Option<ProblemSpec> {
    registry().into_iter().find(|p| p.name == name)
}
