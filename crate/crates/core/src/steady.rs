//! Steady two-point boundary-value solver.
//!
//! Solves `K1 * D_left^{alpha,lambda} u + K2 * D_right^{alpha,lambda} u = f`
//! on `[a, b]` with Dirichlet data, discretized by the quasi-compact scheme
//! of order 4 or 5: the fused convolution sum on the left-hand side, the
//! compact tridiagonal operator applied to the source on the right.

use crate::coeffs::{FracOrder, Tempering};
use crate::error::SolverError;
use crate::grid::{Grid1D, GridFunction1D};
use crate::linalg::DenseLu;
use crate::operators::{
    apply_compact, assemble_matrices, CompactCoeffs, CompactKind, OperatorParams, SchemeOrder,
    Side,
};
use crate::{Result, ScalarFn};

/// A steady problem instance. The source and the optional reference solution
/// are shared callables so convergence studies can reuse one problem across
/// grids.
#[derive(Clone)]
pub struct SteadyProblem {
    pub grid: Grid1D,
    pub alpha: FracOrder,
    pub lambda: Tempering,
    pub k1: f64,
    pub k2: f64,
    pub f: ScalarFn,
    pub ua: f64,
    pub ub: f64,
    pub exact: Option<ScalarFn>,
}

impl SteadyProblem {
    fn operator_params(&self, order: SchemeOrder) -> OperatorParams {
        OperatorParams {
            alpha: self.alpha,
            lambda: self.lambda,
            k1: self.k1,
            k2: self.k2,
            order,
        }
    }

    /// Samples the reference solution on this problem's grid, if present.
    pub fn exact_on_grid(&self) -> Option<GridFunction1D> {
        self.exact
            .as_ref()
            .map(|u| GridFunction1D::from_fn(self.grid, |x| u(x)))
    }
}

/// Solves the steady problem at the requested quasi-compact order.
///
/// The interior system is `(K1 A + K2 A^T) u = h^alpha * (P f) - boundary`,
/// where the boundary vector carries the convolution tails that multiply the
/// Dirichlet values: `u_a` rides on `w[j+1]` (left) and on `w[0]` in the
/// first row (right); `u_b` mirrors this at the far end. One dense LU solve
/// finishes the job; the boundary nodes carry `ua`, `ub` exactly.
pub fn solve_steady(problem: &SteadyProblem, order: SchemeOrder) -> Result<GridFunction1D> {
    let grid = problem.grid;
    let m = grid.m();
    let n = m - 1;
    let params = problem.operator_params(order);
    params.validate()?;

    let mats = assemble_matrices(&params, grid, Side::Both)?;
    let w = params.weights(grid.h(), m)?;
    let weights = w.w();
    let h_alpha = grid.h().powf(problem.alpha.alpha());

    let tempered = problem.lambda.lambda() > 0.0;
    let kind = match (order, tempered) {
        (SchemeOrder::Four, false) => CompactKind::P4,
        (SchemeOrder::Four, true) => CompactKind::P4Tempered,
        (SchemeOrder::Five, false) => CompactKind::P5,
        (SchemeOrder::Five, true) => CompactKind::P5Tempered,
    };
    let compact = CompactCoeffs::new(problem.alpha, problem.lambda, grid.h())?;

    let f_samples = GridFunction1D::from_fn(grid, |x| (problem.f)(x));
    let mut rhs = vec![0.0; n];
    for (row, value) in rhs.iter_mut().enumerate() {
        let j = row + 1;
        let mut v = h_alpha * apply_compact(kind, &compact, &f_samples, j)?;
        // Convolution tails of the Dirichlet values, moved to the right.
        let mut left_weight = problem.k1 * weights[j + 1];
        if j == 1 {
            left_weight += problem.k2 * weights[0];
        }
        let mut right_weight = problem.k2 * weights[m - j + 1];
        if j == m - 1 {
            right_weight += problem.k1 * weights[0];
        }
        v -= problem.ua * left_weight + problem.ub * right_weight;
        *value = v;
    }

    let lu = DenseLu::factor(&mats.a).map_err(|e| match e {
        SolverError::SingularMatrix { pivot, step, .. } => SolverError::SingularMatrix {
            context: "steady interior system",
            pivot,
            step,
        },
        other => other,
    })?;
    let interior = lu.solve(&rhs)?;

    let mut values = vec![0.0; m + 1];
    values[0] = problem.ua;
    values[m] = problem.ub;
    values[1..m].copy_from_slice(&interior);
    GridFunction1D::new(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norms_1d;
    use crate::special::gamma;
    use std::sync::Arc;

    /// The polynomial benchmark: exact solution e^{-lambda x} x^6 on (0, 1),
    /// one-sided left derivative, source chosen so the equation holds.
    fn benchmark_problem(alpha: f64, lambda: f64, m: usize) -> SteadyProblem {
        let grid = Grid1D::new(0.0, 1.0, m).unwrap();
        let g7 = gamma(7.0 - alpha);
        SteadyProblem {
            grid,
            alpha: FracOrder::new(alpha).unwrap(),
            lambda: Tempering::new(lambda).unwrap(),
            k1: 1.0,
            k2: 0.0,
            f: Arc::new(move |x: f64| {
                (-lambda * x).exp() * 720.0 * x.powf(6.0 - alpha) / g7
            }),
            ua: 0.0,
            ub: (-lambda).exp(),
            exact: Some(Arc::new(move |x: f64| (-lambda * x).exp() * x.powi(6))),
        }
    }

    fn l2_error(problem: &SteadyProblem, order: SchemeOrder) -> f64 {
        let solution = solve_steady(problem, order).unwrap();
        let exact = problem.exact_on_grid().unwrap();
        norms_1d(&solution, &exact).unwrap().l2
    }

    #[test]
    fn fourth_order_reproduces_published_errors() {
        let coarse = l2_error(&benchmark_problem(1.5, 0.0, 8), SchemeOrder::Four);
        let fine = l2_error(&benchmark_problem(1.5, 0.0, 16), SchemeOrder::Four);
        assert!(
            (fine - 1.8470e-05).abs() / 1.8470e-05 < 0.02,
            "L2 at M=16 was {fine:e}"
        );
        let rate = (coarse / fine).log2();
        assert!((rate - 3.9955).abs() < 0.05, "rate was {rate}");
    }

    #[test]
    fn fifth_order_reproduces_published_errors() {
        let fine = l2_error(&benchmark_problem(1.5, 0.0, 16), SchemeOrder::Five);
        assert!(
            (fine - 2.8200e-07).abs() / 2.8200e-07 < 0.02,
            "L2 at M=16 was {fine:e}"
        );
    }

    #[test]
    fn tempered_fourth_order_reproduces_published_errors() {
        let coarse = l2_error(&benchmark_problem(1.1, 1.5, 8), SchemeOrder::Four);
        let fine = l2_error(&benchmark_problem(1.1, 1.5, 16), SchemeOrder::Four);
        assert!(
            (fine - 1.8576e-05).abs() / 1.8576e-05 < 0.02,
            "L2 at M=16 was {fine:e}"
        );
        let rate = (coarse / fine).log2();
        assert!((rate - 4.3821).abs() < 0.05, "rate was {rate}");
    }

    #[test]
    fn zero_tempering_is_bitwise_identical() {
        // One solve built with Tempering::zero, one with an explicit 0.0;
        // the code path must not branch on how the zero was produced.
        let mut a = benchmark_problem(1.5, 0.0, 16);
        a.lambda = Tempering::zero();
        let mut b = benchmark_problem(1.5, 0.0, 16);
        b.lambda = Tempering::new(0.0).unwrap();
        let ua = solve_steady(&a, SchemeOrder::Four).unwrap();
        let ub = solve_steady(&b, SchemeOrder::Four).unwrap();
        assert_eq!(ua.values(), ub.values());
        // And repeated solves are byte-identical.
        let uc = solve_steady(&a, SchemeOrder::Four).unwrap();
        assert_eq!(ua.values(), uc.values());
    }

    #[test]
    fn boundary_nodes_carry_dirichlet_data_exactly() {
        let problem = benchmark_problem(1.3, 1.5, 16);
        let u = solve_steady(&problem, SchemeOrder::Four).unwrap();
        assert_eq!(u.values()[0], 0.0);
        assert_eq!(u.values()[16], (-1.5f64).exp());
    }

    #[test]
    fn two_sided_problem_is_solvable_and_symmetric() {
        // With K1 = K2 and symmetric data the solution must be symmetric
        // about the midpoint.
        let grid = Grid1D::new(0.0, 1.0, 32).unwrap();
        let problem = SteadyProblem {
            grid,
            alpha: FracOrder::new(1.6).unwrap(),
            lambda: Tempering::zero(),
            k1: 1.0,
            k2: 1.0,
            f: Arc::new(|x: f64| {
                let s = x * (1.0 - x);
                -(1.0 + s)
            }),
            ua: 0.0,
            ub: 0.0,
            exact: None,
        };
        let u = solve_steady(&problem, SchemeOrder::Four).unwrap();
        let m = grid.m();
        for j in 0..=m {
            let mirrored = u.values()[m - j];
            assert!(
                (u.values()[j] - mirrored).abs() < 1e-10,
                "asymmetry at node {j}"
            );
        }
    }

    #[test]
    fn degenerate_coefficients_are_rejected() {
        let mut problem = benchmark_problem(1.5, 0.0, 8);
        problem.k1 = 0.0;
        problem.k2 = 0.0;
        assert!(solve_steady(&problem, SchemeOrder::Four).is_err());
    }
}
