//! Discrete fractional operators: fused-weight convolution sums, compact
//! right-hand-side operators, their assembled matrix forms, and the Dirichlet
//! boundary-contribution vector of the Crank-Nicolson scheme.
//!
//! The 1/h^alpha scaling is applied at the point of use, never stored in a
//! matrix, so the assembled `A` matches the dimensionless convolution table
//! and the time steppers can scale it by tau/(2 h^alpha) themselves.

use crate::coeffs::{
    fused_weights, fused_weights_qc5, qc4_coeffs, qc5_coeffs, FracOrder, FusedWeights, QC4Coeffs,
    QC5Coeffs, Tempering,
};
use crate::error::SolverError;
use crate::grid::{Grid1D, GridFunction1D};
use crate::linalg::{DenseMatrix, Tridiagonal};
use crate::Result;

/// Which quasi-compact coefficient family a scheme uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeOrder {
    Four,
    Five,
}

/// Which one-sided operator (or weighted combination) to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    /// `k1 * left + k2 * right`, the full diffusion operator.
    Both,
}

/// Everything the assembly routines need besides the grid.
#[derive(Debug, Clone, Copy)]
pub struct OperatorParams {
    pub alpha: FracOrder,
    pub lambda: Tempering,
    /// Diffusion coefficient on the left-sided derivative.
    pub k1: f64,
    /// Diffusion coefficient on the right-sided derivative.
    pub k2: f64,
    pub order: SchemeOrder,
}

impl OperatorParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.k1.is_finite() && self.k2.is_finite() && self.k1 >= 0.0 && self.k2 >= 0.0) {
            return Err(SolverError::InvalidParameter(format!(
                "diffusion coefficients must be finite and nonnegative, got k1 = {}, k2 = {}",
                self.k1, self.k2
            )));
        }
        if self.k1 + self.k2 <= 0.0 {
            return Err(SolverError::InvalidParameter(
                "at least one diffusion coefficient must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Fused weights `w[0..=n]` matching this parameter set's order.
    pub fn weights(&self, h: f64, n: usize) -> Result<FusedWeights> {
        match self.order {
            SchemeOrder::Four => fused_weights(self.alpha, self.lambda, h, n),
            SchemeOrder::Five => fused_weights_qc5(self.alpha, self.lambda, h, n),
        }
    }
}

/// The four compact operators, tempered variants carrying the `e^{±lambda h}`
/// factors on the off-diagonal entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompactKind {
    P4,
    P4Tempered,
    P5,
    P5Tempered,
}

/// Precomputed material for all four compact stencils at one
/// (alpha, lambda, h) triple.
#[derive(Debug, Clone, Copy)]
pub struct CompactCoeffs {
    qc4: QC4Coeffs,
    qc5: QC5Coeffs,
    exp_neg: f64,
    exp_pos: f64,
}

impl CompactCoeffs {
    pub fn new(alpha: FracOrder, lambda: Tempering, h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(SolverError::InvalidParameter(format!(
                "grid spacing must be positive and finite, got {h}"
            )));
        }
        let lh = lambda.lambda() * h;
        Ok(Self {
            qc4: qc4_coeffs(alpha),
            qc5: qc5_coeffs(alpha)?,
            exp_neg: (-lh).exp(),
            exp_pos: lh.exp(),
        })
    }

    /// Stencil entries (subdiagonal, diagonal, superdiagonal) of one kind.
    pub fn row(&self, kind: CompactKind) -> (f64, f64, f64) {
        match kind {
            CompactKind::P4 => (self.qc4.b2, 1.0 - 2.0 * self.qc4.b2, self.qc4.b2),
            CompactKind::P4Tempered => (
                self.qc4.b2 * self.exp_neg,
                1.0 - 2.0 * self.qc4.b2,
                self.qc4.b2 * self.exp_pos,
            ),
            CompactKind::P5 => (self.qc5.gamma1, 1.0, self.qc5.gamma2),
            CompactKind::P5Tempered => (
                self.qc5.gamma1 * self.exp_neg,
                1.0,
                self.qc5.gamma2 * self.exp_pos,
            ),
        }
    }

    /// The interior compact matrix as a constant-band tridiagonal.
    pub fn tridiagonal(&self, kind: CompactKind, n: usize) -> Result<Tridiagonal> {
        let (sub, diag, sup) = self.row(kind);
        Tridiagonal::constant_bands(n, sub, diag, sup)
    }
}

fn check_interior_index(grid: Grid1D, j: usize) -> Result<()> {
    if j == 0 || j >= grid.m() {
        return Err(SolverError::InvalidParameter(format!(
            "index {} is not interior to a grid with {} cells",
            j,
            grid.m()
        )));
    }
    Ok(())
}

fn check_weights_match(w: &FusedWeights, grid: Grid1D, needed: usize) -> Result<()> {
    if w.h() != grid.h() {
        return Err(SolverError::DimensionMismatch(format!(
            "weights built for spacing {} applied on spacing {}",
            w.h(),
            grid.h()
        )));
    }
    if w.w().len() < needed + 1 {
        return Err(SolverError::DimensionMismatch(format!(
            "weight table has {} entries but index {} is needed",
            w.w().len(),
            needed
        )));
    }
    Ok(())
}

/// Left-sided fused sum `h^{-alpha} sum_{k=0}^{j+1} w_k u_{j-k+1}` at
/// interior node `j`.
pub fn apply_left_frac(w: &FusedWeights, u: &GridFunction1D, j: usize) -> Result<f64> {
    let grid = u.grid();
    check_interior_index(grid, j)?;
    check_weights_match(w, grid, j + 1)?;
    let values = u.values();
    let weights = w.w();
    let mut acc = 0.0;
    for k in 0..=(j + 1) {
        acc += weights[k] * values[j + 1 - k];
    }
    Ok(acc / grid.h().powf(w.alpha().alpha()))
}

/// Right-sided fused sum `h^{-alpha} sum_{k=0}^{M-j+1} w_k u_{j+k-1}` at
/// interior node `j`.
pub fn apply_right_frac(w: &FusedWeights, u: &GridFunction1D, j: usize) -> Result<f64> {
    let grid = u.grid();
    check_interior_index(grid, j)?;
    let m = grid.m();
    check_weights_match(w, grid, m - j + 1)?;
    let values = u.values();
    let weights = w.w();
    let mut acc = 0.0;
    for k in 0..=(m - j + 1) {
        acc += weights[k] * values[j + k - 1];
    }
    Ok(acc / grid.h().powf(w.alpha().alpha()))
}

/// One application of a compact stencil to the source samples around node
/// `j`. Boundary-node source values are used when `j` is 1 or `M - 1`; the
/// source is a known function there.
pub fn apply_compact(
    kind: CompactKind,
    coeffs: &CompactCoeffs,
    f: &GridFunction1D,
    j: usize,
) -> Result<f64> {
    check_interior_index(f.grid(), j)?;
    let (sub, diag, sup) = coeffs.row(kind);
    let v = f.values();
    Ok(sub * v[j - 1] + diag * v[j] + sup * v[j + 1])
}

/// Assembled interior matrices of one operator side.
#[derive(Debug, Clone)]
pub struct OperatorMatrices {
    /// Dimensionless convolution matrix; multiply by `h^{-alpha}` to act as
    /// the derivative.
    pub a: DenseMatrix,
    /// Compact tridiagonal for the same (alpha, lambda, h, order).
    pub p: Tridiagonal,
    pub alpha: FracOrder,
    pub lambda: Tempering,
    pub h: f64,
    pub side: Side,
    pub order: SchemeOrder,
}

/// Builds the `(M-1) x (M-1)` interior matrices. The left matrix is
/// lower-Hessenberg Toeplitz with entry `w[j-s+1]`; the right matrix is its
/// transpose; `Both` combines them with the diffusion coefficients.
pub fn assemble_matrices(
    params: &OperatorParams,
    grid: Grid1D,
    side: Side,
) -> Result<OperatorMatrices> {
    params.validate()?;
    let m = grid.m();
    let n = m - 1;
    let w = params.weights(grid.h(), m)?;
    let weights = w.w();

    let mut a = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for t in 0..n {
            // Left entry at interior row j = i + 1, column s = t + 1 is
            // w[j - s + 1] when s <= j + 1, zero above the superdiagonal.
            let left = if t <= i + 1 { weights[i + 1 - t] } else { 0.0 };
            let right = if i <= t + 1 { weights[t + 1 - i] } else { 0.0 };
            let entry = match side {
                Side::Left => left,
                Side::Right => right,
                Side::Both => params.k1 * left + params.k2 * right,
            };
            a.set(i, t, entry);
        }
    }

    let compact = CompactCoeffs::new(params.alpha, params.lambda, grid.h())?;
    let tempered = params.lambda.lambda() > 0.0;
    let kind = match (params.order, tempered) {
        (SchemeOrder::Four, false) => CompactKind::P4,
        (SchemeOrder::Four, true) => CompactKind::P4Tempered,
        (SchemeOrder::Five, false) => CompactKind::P5,
        (SchemeOrder::Five, true) => CompactKind::P5Tempered,
    };
    let p = compact.tridiagonal(kind, n)?;

    Ok(OperatorMatrices {
        a,
        p,
        alpha: params.alpha,
        lambda: params.lambda,
        h: grid.h(),
        side,
        order: params.order,
    })
}

/// All terms of the Crank-Nicolson right-hand side that involve the Dirichlet
/// boundary values at the two time levels.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryContribution {
    values: Vec<f64>,
}

impl BoundaryContribution {
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Shared tables for the boundary vector; built once per run and reused at
/// every time step.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryParams<'a> {
    pub weights: &'a FusedWeights,
    pub compact: &'a CompactCoeffs,
    pub kind: CompactKind,
    pub k1: f64,
    pub k2: f64,
    pub tau: f64,
}

/// The length `M - 1` vector collecting every right-hand-side term with a
/// boundary factor: the convolution tails hitting `u_0` and `u_M` at both
/// time levels, plus the compact-stencil entries that fall outside the
/// interior block.
pub fn boundary_vector(
    params: &BoundaryParams,
    grid: Grid1D,
    u0_old: f64,
    u0_new: f64,
    um_old: f64,
    um_new: f64,
) -> Result<BoundaryContribution> {
    let m = grid.m();
    let w = params.weights;
    check_weights_match(w, grid, m)?;
    if !(params.tau > 0.0 && params.tau.is_finite()) {
        return Err(SolverError::InvalidParameter(format!(
            "time step must be positive and finite, got {}",
            params.tau
        )));
    }
    let weights = w.w();
    let scale = params.tau / (2.0 * grid.h().powf(w.alpha().alpha()));
    let (sub, _, sup) = params.compact.row(params.kind);

    let left_sum = u0_old + u0_new;
    let right_sum = um_old + um_new;
    let mut values = vec![0.0; m - 1];
    for (row, value) in values.iter_mut().enumerate() {
        let j = row + 1;
        let mut left_weight = params.k1 * weights[j + 1];
        if j == 1 {
            left_weight += params.k2 * weights[0];
        }
        let mut right_weight = params.k2 * weights[m - j + 1];
        if j == m - 1 {
            right_weight += params.k1 * weights[0];
        }
        let mut v = scale * (left_weight * left_sum + right_weight * right_sum);
        if j == 1 {
            v += sub * (u0_old - u0_new);
        }
        if j == m - 1 {
            v += sup * (um_old - um_new);
        }
        *value = v;
    }
    Ok(BoundaryContribution { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params(alpha: f64, lambda: f64, k1: f64, k2: f64, order: SchemeOrder) -> OperatorParams {
        OperatorParams {
            alpha: FracOrder::new(alpha).unwrap(),
            lambda: Tempering::new(lambda).unwrap(),
            k1,
            k2,
            order,
        }
    }

    #[test]
    fn left_sum_on_zero_function_is_zero() {
        let grid = Grid1D::new(0.0, 1.0, 8).unwrap();
        let u = GridFunction1D::zeros(grid);
        let w = fused_weights(FracOrder::new(1.5).unwrap(), Tempering::zero(), grid.h(), 8)
            .unwrap();
        for j in 1..8 {
            assert_eq!(apply_left_frac(&w, &u, j).unwrap(), 0.0);
        }
    }

    #[test]
    fn left_sum_on_indicator_picks_out_w0() {
        let grid = Grid1D::new(0.0, 1.0, 8).unwrap();
        let h = grid.h();
        let j = 3;
        let mut u = GridFunction1D::zeros(grid);
        u.values_mut()[j + 1] = 1.0;
        let w = fused_weights(FracOrder::new(1.5).unwrap(), Tempering::zero(), h, 8).unwrap();
        let got = apply_left_frac(&w, &u, j).unwrap();
        assert!((got - 0.729166667 / h.powf(1.5)).abs() < 1e-6);
        assert!((got - w.w()[0] / h.powf(1.5)).abs() < 1e-13);
    }

    #[test]
    fn interior_index_is_enforced() {
        let grid = Grid1D::new(0.0, 1.0, 8).unwrap();
        let u = GridFunction1D::zeros(grid);
        let w = fused_weights(FracOrder::new(1.5).unwrap(), Tempering::zero(), grid.h(), 8)
            .unwrap();
        assert!(apply_left_frac(&w, &u, 0).is_err());
        assert!(apply_left_frac(&w, &u, 8).is_err());
        assert!(apply_right_frac(&w, &u, 0).is_err());
        // Mismatched spacing is caught as well.
        let other = Grid1D::new(0.0, 1.0, 16).unwrap();
        let v = GridFunction1D::zeros(other);
        assert!(apply_left_frac(&w, &v, 3).is_err());
    }

    #[test]
    fn truncation_error_of_tempered_left_operator_is_fourth_order() {
        // u(x) = e^{-lambda x} x^6 zero-extended left of 0. The fused sum
        // must match the compact operator applied to the exact tempered
        // derivative e^{-lambda x} 720 x^{6-alpha} / Gamma(7-alpha) to
        // fourth order.
        let alpha = 1.5;
        let lambda = 1.5;
        let fo = FracOrder::new(alpha).unwrap();
        let lam = Tempering::new(lambda).unwrap();
        let gamma7 = gamma(7.0 - alpha);

        let mut errors = Vec::new();
        for &m in &[16usize, 32, 64] {
            let grid = Grid1D::new(0.0, 1.0, m).unwrap();
            let u = GridFunction1D::from_fn(grid, |x| (-lambda * x).exp() * x.powi(6));
            let d = GridFunction1D::from_fn(grid, |x| {
                (-lambda * x).exp() * 720.0 * x.powf(6.0 - alpha) / gamma7
            });
            let w = fused_weights(fo, lam, grid.h(), m).unwrap();
            let compact = CompactCoeffs::new(fo, lam, grid.h()).unwrap();
            let mut worst = 0.0f64;
            for j in 1..m {
                let lhs = apply_left_frac(&w, &u, j).unwrap();
                let rhs = apply_compact(CompactKind::P4Tempered, &compact, &d, j).unwrap();
                worst = worst.max((lhs - rhs).abs());
            }
            errors.push(worst);
        }
        for pair in errors.windows(2) {
            let rate = (pair[0] / pair[1]).log2();
            assert!(
                (3.5..=4.5).contains(&rate),
                "observed truncation order {rate}, errors {errors:?}"
            );
        }
    }

    #[test]
    fn right_sum_is_the_reflection_of_the_left_sum() {
        let grid = Grid1D::new(0.0, 1.0, 12).unwrap();
        let m = grid.m();
        let fo = FracOrder::new(1.7).unwrap();
        let w = fused_weights(fo, Tempering::zero(), grid.h(), m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x0F1E);
        let u = GridFunction1D::new(
            grid,
            (0..=m).map(|_| rng.random_range(-1.0..1.0)).collect(),
        )
        .unwrap();
        let reflected = GridFunction1D::new(
            grid,
            (0..=m).map(|j| u.values()[m - j]).collect(),
        )
        .unwrap();
        for j in 1..m {
            let right = apply_right_frac(&w, &reflected, j).unwrap();
            let left = apply_left_frac(&w, &u, m - j).unwrap();
            assert!((right - left).abs() < 1e-12);
        }
    }

    #[test]
    fn compact_row_sums() {
        let fo = FracOrder::new(1.4).unwrap();
        let compact = CompactCoeffs::new(fo, Tempering::zero(), 0.1).unwrap();
        let grid = Grid1D::new(0.0, 1.0, 8).unwrap();
        let c = 2.75;
        let f = GridFunction1D::from_fn(grid, |_| c);
        let got4 = apply_compact(CompactKind::P4, &compact, &f, 4).unwrap();
        assert!((got4 - c).abs() < 1e-14);
        let qc5 = qc5_coeffs(fo).unwrap();
        let got5 = apply_compact(CompactKind::P5, &compact, &f, 4).unwrap();
        assert!((got5 - c * (1.0 + qc5.gamma1 + qc5.gamma2)).abs() < 1e-14);
    }

    #[test]
    fn tempered_compact_with_zero_rate_reduces_to_plain() {
        let fo = FracOrder::new(1.8).unwrap();
        let compact = CompactCoeffs::new(fo, Tempering::zero(), 0.125).unwrap();
        let grid = Grid1D::new(0.0, 1.0, 8).unwrap();
        let f = GridFunction1D::from_fn(grid, |x| x.sin());
        for j in 1..8 {
            let plain = apply_compact(CompactKind::P4, &compact, &f, j).unwrap();
            let tempered = apply_compact(CompactKind::P4Tempered, &compact, &f, j).unwrap();
            assert_eq!(plain, tempered);
        }
    }

    #[test]
    fn assembled_matrices_reproduce_pointwise_application() {
        let grid = Grid1D::new(0.0, 1.0, 16).unwrap();
        let m = grid.m();
        let h_alpha = grid.h().powf(1.6);
        let p = params(1.6, 0.0, 1.0, 0.0, SchemeOrder::Four);
        let left = assemble_matrices(&p, grid, Side::Left).unwrap();
        let right = assemble_matrices(&p, grid, Side::Right).unwrap();
        let w = p.weights(grid.h(), m).unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(0xA55E);
        for _ in 0..100 {
            let mut u = GridFunction1D::zeros(grid);
            for j in 1..m {
                u.values_mut()[j] = rng.random_range(-1.0..1.0);
            }
            let interior: Vec<f64> = u.interior().to_vec();
            let av = left.a.matvec(&interior).unwrap();
            let av_r = right.a.matvec(&interior).unwrap();
            for j in 1..m {
                let looped = apply_left_frac(&w, &u, j).unwrap();
                assert!(
                    (av[j - 1] / h_alpha - looped).abs() < 1e-13,
                    "left row {j}"
                );
                let looped_r = apply_right_frac(&w, &u, j).unwrap();
                assert!(
                    (av_r[j - 1] / h_alpha - looped_r).abs() < 1e-13,
                    "right row {j}"
                );
            }
        }
    }

    #[test]
    fn both_side_combines_with_diffusion_coefficients() {
        let grid = Grid1D::new(0.0, 1.0, 10).unwrap();
        let p = params(1.3, 0.0, 2.0, 0.5, SchemeOrder::Four);
        let both = assemble_matrices(&p, grid, Side::Both).unwrap();
        let left = assemble_matrices(&p, grid, Side::Left).unwrap();
        let right = assemble_matrices(&p, grid, Side::Right).unwrap();
        let n = grid.m() - 1;
        for i in 0..n {
            for t in 0..n {
                let expect = 2.0 * left.a.get(i, t) + 0.5 * right.a.get(i, t);
                assert!((both.a.get(i, t) - expect).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn left_matrix_is_lower_hessenberg_toeplitz() {
        let grid = Grid1D::new(0.0, 1.0, 12).unwrap();
        let p = params(1.5, 0.0, 1.0, 0.0, SchemeOrder::Four);
        let left = assemble_matrices(&p, grid, Side::Left).unwrap();
        let n = grid.m() - 1;
        for i in 0..n {
            for t in 0..n {
                if t > i + 1 {
                    assert_eq!(left.a.get(i, t), 0.0);
                }
                if i + 1 < n && t + 1 < n {
                    assert_eq!(left.a.get(i, t), left.a.get(i + 1, t + 1));
                }
            }
        }
    }

    #[test]
    fn compact_matrix_preserves_constants_for_zero_rate() {
        let grid = Grid1D::new(0.0, 1.0, 12).unwrap();
        let p = params(1.5, 0.0, 1.0, 0.0, SchemeOrder::Four);
        let mats = assemble_matrices(&p, grid, Side::Left).unwrap();
        let ones = vec![1.0; grid.m() - 1];
        let pv = mats.p.matvec(&ones).unwrap();
        for v in &pv[1..grid.m() - 2] {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn boundary_vector_vanishes_for_zero_boundary_data() {
        let grid = Grid1D::new(0.0, 1.0, 8).unwrap();
        let fo = FracOrder::new(1.5).unwrap();
        let w = fused_weights(fo, Tempering::zero(), grid.h(), 8).unwrap();
        let compact = CompactCoeffs::new(fo, Tempering::zero(), grid.h()).unwrap();
        let bp = BoundaryParams {
            weights: &w,
            compact: &compact,
            kind: CompactKind::P4,
            k1: 1.0,
            k2: 1.0,
            tau: 0.01,
        };
        let h = boundary_vector(&bp, grid, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert!(h.values().iter().all(|&v| v == 0.0));
        assert_eq!(h.values().len(), 7);
    }

    #[test]
    fn boundary_vector_first_entry_matches_hand_formula() {
        let grid = Grid1D::new(0.0, 1.0, 8).unwrap();
        let fo = FracOrder::new(1.5).unwrap();
        let tau = 0.02;
        let (k1, k2) = (1.25, 0.75);
        let w = fused_weights(fo, Tempering::zero(), grid.h(), 8).unwrap();
        let compact = CompactCoeffs::new(fo, Tempering::zero(), grid.h()).unwrap();
        let bp = BoundaryParams {
            weights: &w,
            compact: &compact,
            kind: CompactKind::P4,
            k1,
            k2,
            tau,
        };
        let (u0_old, u0_new) = (0.3, 0.4);
        let h = boundary_vector(&bp, grid, u0_old, u0_new, 0.0, 0.0).unwrap();

        let b2 = qc4_coeffs(fo).b2;
        let scale = tau / (2.0 * grid.h().powf(1.5));
        let first = scale * (k1 * w.w()[2] + k2 * w.w()[0]) * (u0_old + u0_new)
            + b2 * (u0_old - u0_new);
        assert!((h.values()[0] - first).abs() < 1e-15);
        // Rows away from the edges see only the convolution tail of u_0.
        for j in 2..8 - 1 {
            let expect = scale * k1 * w.w()[j + 1] * (u0_old + u0_new);
            assert!((h.values()[j - 1] - expect).abs() < 1e-15, "row {j}");
        }
    }

    #[test]
    fn tempered_boundary_vector_uses_tempered_tables() {
        let grid = Grid1D::new(0.0, 1.0, 8).unwrap();
        let fo = FracOrder::new(1.5).unwrap();
        let lam = Tempering::new(1.5).unwrap();
        let tau = 0.02;
        let w = fused_weights(fo, lam, grid.h(), 8).unwrap();
        let compact = CompactCoeffs::new(fo, lam, grid.h()).unwrap();
        let bp = BoundaryParams {
            weights: &w,
            compact: &compact,
            kind: CompactKind::P4Tempered,
            k1: 1.0,
            k2: 0.0,
            tau,
        };
        let (um_old, um_new) = (0.9, 0.8);
        let h = boundary_vector(&bp, grid, 0.0, 0.0, um_old, um_new).unwrap();

        let b2 = qc4_coeffs(fo).b2;
        let lh = 1.5 * grid.h();
        let scale = tau / (2.0 * grid.h().powf(1.5));
        // Last row: K1 w[0] tail plus the superdiagonal compact entry
        // b2 e^{+lambda h}.
        let last = scale * w.w()[0] * (um_old + um_new) + b2 * lh.exp() * (um_old - um_new);
        assert!((h.values()[6] - last).abs() < 1e-15);
        // K2 = 0 kills the convolution tail in every other row.
        for j in 1..7 {
            assert_eq!(h.values()[j - 1], 0.0, "row {j}");
        }
    }

    #[test]
    fn fifth_order_assembly_uses_qc5_tables() {
        let grid = Grid1D::new(0.0, 1.0, 8).unwrap();
        let fo = FracOrder::new(1.5).unwrap();
        let p5 = params(1.5, 0.0, 1.0, 0.0, SchemeOrder::Five);
        let mats = assemble_matrices(&p5, grid, Side::Left).unwrap();
        let qc5 = qc5_coeffs(fo).unwrap();
        assert!((mats.a.get(0, 1) - qc5.mu1).abs() < 1e-15);
        let ones = vec![1.0; 7];
        let pv = mats.p.matvec(&ones).unwrap();
        assert!((pv[3] - (1.0 + qc5.gamma1 + qc5.gamma2)).abs() < 1e-14);
    }
}
