//! Alternating-direction implicit steppers for 2D problems.
//!
//! The unsplit Crank-Nicolson scheme
//! `(P_x - tau/2 d_x)(P_y - tau/2 d_y) U^{n+1} = ... + tau P_x P_y f^{n+1/2}`
//! is factored into an x-sweep and a y-sweep. Two arrangements of the same
//! algebra are provided: Douglas keeps `U^n` terms on the first stage and
//! corrects in the second, D'yakonov premultiplies the explicit product.
//! They differ only in the intermediate variable, so their outputs agree to
//! solver precision, which the tests enforce.
//!
//! All right-hand sides are built operator by operator on strip buffers: the
//! x-convolution needs interior x rows at every y, the y-convolution needs
//! every x row at interior y. No Kronecker-product matrix is ever formed.

use crate::coeffs::{FracOrder, Tempering};
use crate::error::SolverError;
use crate::grid::{Field2D, Grid1D};
use crate::linalg::{DenseLu, DenseMatrix};
use crate::operators::{assemble_matrices, CompactCoeffs, CompactKind, OperatorParams, SchemeOrder, Side};
use crate::{BivariateFn, Result, TrivariateFn};

/// A 2D evolution problem on a rectangle with Dirichlet boundary data.
/// Tempering is 1D-only machinery, so both directions run untempered here.
#[derive(Clone)]
pub struct Evolution2D {
    pub grid_x: Grid1D,
    pub grid_y: Grid1D,
    pub t_end: f64,
    pub n_steps: usize,
    /// Fractional order in x.
    pub alpha: FracOrder,
    /// Fractional order in y.
    pub beta: FracOrder,
    pub k1x: f64,
    pub k2x: f64,
    pub k1y: f64,
    pub k2y: f64,
    /// Source f(x, y, t).
    pub f: TrivariateFn,
    /// Initial data u0(x, y).
    pub u0: BivariateFn,
    /// Boundary data phi(x, y, t), read only on the boundary ring.
    pub phi: TrivariateFn,
    /// Reference solution, when known.
    pub exact: Option<TrivariateFn>,
}

impl Evolution2D {
    pub fn tau(&self) -> f64 {
        self.t_end / self.n_steps as f64
    }

    fn validate(&self) -> Result<()> {
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(SolverError::InvalidParameter(format!(
                "final time must be positive and finite, got {}",
                self.t_end
            )));
        }
        if self.n_steps == 0 {
            return Err(SolverError::InvalidParameter(
                "at least one time step is required".into(),
            ));
        }
        Ok(())
    }
}

/// The two ADI arrangements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdiVariant {
    Douglas,
    Dyakonov,
}

/// Immutable per-direction material: weights, compact entries, and the
/// factorized one-dimensional implicit matrix `P - tau/2 d`.
struct DirectionOps {
    m: usize,
    /// 1 / h^order.
    scale: f64,
    w: Vec<f64>,
    b2: f64,
    k1: f64,
    k2: f64,
    lu: DenseLu,
}

impl DirectionOps {
    fn new(grid: Grid1D, order: FracOrder, k1: f64, k2: f64, tau: f64) -> Result<Self> {
        let params = OperatorParams {
            alpha: order,
            lambda: Tempering::zero(),
            k1,
            k2,
            order: SchemeOrder::Four,
        };
        params.validate()?;
        let m = grid.m();
        let n = m - 1;
        let mats = assemble_matrices(&params, grid, Side::Both)?;
        let weights = params.weights(grid.h(), m)?;
        let compact = CompactCoeffs::new(order, Tempering::zero(), grid.h())?;
        let (b2, diag, _) = compact.row(CompactKind::P4);
        let scale = 1.0 / grid.h().powf(order.alpha());

        let mut lhs = DenseMatrix::zeros(n, n);
        for i in 0..n {
            lhs.set(i, i, diag);
            if i > 0 {
                lhs.set(i, i - 1, b2);
            }
            if i + 1 < n {
                lhs.set(i, i + 1, b2);
            }
        }
        lhs.add_scaled(&mats.a, -0.5 * tau * scale)?;
        let lu = DenseLu::factor(&lhs).map_err(|e| match e {
            SolverError::SingularMatrix { pivot, step, .. } => SolverError::SingularMatrix {
                context: "ADI sweep matrix",
                pivot,
                step,
            },
            other => other,
        })?;

        Ok(Self {
            m,
            scale,
            w: weights.w().to_vec(),
            b2,
            k1,
            k2,
            lu,
        })
    }

    /// Coefficient that moves one implicit-solve boundary value to the right
    /// side: the row `j` entry of `P - tau/2 d` on the boundary column,
    /// negated. `left_end` picks which boundary column.
    fn boundary_move(&self, j: usize, half_tau: f64, left_end: bool) -> f64 {
        let m = self.m;
        let mut conv = if left_end {
            self.k1 * self.w[j + 1]
        } else {
            self.k2 * self.w[m - j + 1]
        };
        let edge = if left_end { j == 1 } else { j == m - 1 };
        if edge {
            conv += if left_end { self.k2 } else { self.k1 } * self.w[0];
        }
        let compact_part = if edge { self.b2 } else { 0.0 };
        half_tau * self.scale * conv - compact_part
    }

    /// One-dimensional convolution derivative along a contiguous slice,
    /// evaluated at interior index `j`.
    fn delta_slice(&self, values: &[f64], j: usize) -> f64 {
        let m = self.m;
        let mut acc = 0.0;
        if self.k1 != 0.0 {
            let mut left = 0.0;
            for k in 0..=(j + 1) {
                left += self.w[k] * values[j + 1 - k];
            }
            acc += self.k1 * left;
        }
        if self.k2 != 0.0 {
            let mut right = 0.0;
            for k in 0..=(m - j + 1) {
                right += self.w[k] * values[j + k - 1];
            }
            acc += self.k2 * right;
        }
        self.scale * acc
    }

    /// Compact stencil along a contiguous slice at interior index `j`.
    fn compact_slice(&self, values: &[f64], j: usize) -> f64 {
        self.b2 * values[j - 1] + (1.0 - 2.0 * self.b2) * values[j] + self.b2 * values[j + 1]
    }
}

fn axpy(dst: &mut [f64], src: &[f64], c: f64) {
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        *d += c * s;
    }
}

/// x-direction convolution derivative: filled on interior x rows, every y
/// column; boundary x rows stay zero. Runs with the convolution index
/// outermost so each inner pass is a contiguous row operation.
fn delta_x(ops: &DirectionOps, u: &Field2D) -> Field2D {
    let mx = u.nx();
    let mut out = Field2D::zeros(u.nx(), u.ny());
    let k1s = ops.k1 * ops.scale;
    let k2s = ops.k2 * ops.scale;
    for k in 0..ops.w.len() {
        let wk = ops.w[k];
        if k1s != 0.0 {
            let lo = if k >= 2 { k - 1 } else { 1 };
            for ix in lo..mx {
                let src = ix + 1 - k;
                axpy(out.row_mut(ix), u.row(src), k1s * wk);
            }
        }
        if k2s != 0.0 && k <= mx + 1 {
            let hi = (mx + 1 - k).min(mx - 1);
            for ix in 1..=hi {
                let src = ix + k - 1;
                axpy(out.row_mut(ix), u.row(src), k2s * wk);
            }
        }
    }
    out
}

/// y-direction convolution derivative: filled on every x row, interior y
/// columns; boundary y columns stay zero.
fn delta_y(ops: &DirectionOps, u: &Field2D) -> Field2D {
    let my = u.ny();
    let mut out = Field2D::zeros(u.nx(), u.ny());
    for ix in 0..=u.nx() {
        let row = u.row(ix);
        let orow = out.row_mut(ix);
        for (iy, o) in orow.iter_mut().enumerate().take(my).skip(1) {
            *o = ops.delta_slice(row, iy);
        }
    }
    out
}

/// Compact operator across x: interior x rows only.
fn p_x(ops: &DirectionOps, u: &Field2D) -> Field2D {
    let mx = u.nx();
    let mut out = Field2D::zeros(u.nx(), u.ny());
    for ix in 1..mx {
        let (prev, mid, next) = (u.row(ix - 1), u.row(ix), u.row(ix + 1));
        let orow = out.row_mut(ix);
        for iy in 0..orow.len() {
            orow[iy] = ops.b2 * prev[iy] + (1.0 - 2.0 * ops.b2) * mid[iy] + ops.b2 * next[iy];
        }
    }
    out
}

/// Compact operator across y: every x row, interior y columns.
fn p_y(ops: &DirectionOps, u: &Field2D) -> Field2D {
    let my = u.ny();
    let mut out = Field2D::zeros(u.nx(), u.ny());
    for ix in 0..=u.nx() {
        let row = u.row(ix);
        let orow = out.row_mut(ix);
        for (iy, o) in orow.iter_mut().enumerate().take(my).skip(1) {
            *o = ops.compact_slice(row, iy);
        }
    }
    out
}

/// Marches the 2D problem to `t_end` and returns the final field, boundary
/// ring included.
pub fn adi_solve_2d(problem: &Evolution2D, variant: AdiVariant) -> Result<Field2D> {
    problem.validate()?;
    let gx = problem.grid_x;
    let gy = problem.grid_y;
    let (mx, my) = (gx.m(), gy.m());
    let tau = problem.tau();
    let half_tau = 0.5 * tau;

    let ops_x = DirectionOps::new(gx, problem.alpha, problem.k1x, problem.k2x, tau)?;
    let ops_y = DirectionOps::new(gy, problem.beta, problem.k1y, problem.k2y, tau)?;

    // Initial level with the boundary ring taken from phi at t = 0.
    let mut u = Field2D::from_fn(mx, my, |ix, iy| {
        let (x, y) = (gx.node(ix), gy.node(iy));
        if ix == 0 || ix == mx || iy == 0 || iy == my {
            (problem.phi)(x, y, 0.0)
        } else {
            (problem.u0)(x, y)
        }
    });

    for step in 0..problem.n_steps {
        let t_old = step as f64 * tau;
        let t_new = t_old + tau;
        let t_mid = t_old + half_tau;

        // Source with its full boundary ring; the compact operators read it.
        let f_mid = Field2D::from_fn(mx, my, |ix, iy| {
            (problem.f)(gx.node(ix), gy.node(iy), t_mid)
        });
        let pf = p_x(&ops_x, &p_y(&ops_y, &f_mid));

        let dy_u = delta_y(&ops_y, &u);
        let mut r1 = Field2D::zeros(mx, my);
        match variant {
            AdiVariant::Douglas => {
                // (P_x P_y + tau/2 P_y d_x + tau P_x d_y) U^n + tau P_x P_y f.
                let pxpy = p_x(&ops_x, &p_y(&ops_y, &u));
                let pydx = p_y(&ops_y, &delta_x(&ops_x, &u));
                let pxdy = p_x(&ops_x, &dy_u);
                for ix in 1..mx {
                    for iy in 1..my {
                        r1.set(
                            ix,
                            iy,
                            pxpy.get(ix, iy)
                                + half_tau * pydx.get(ix, iy)
                                + tau * pxdy.get(ix, iy)
                                + tau * pf.get(ix, iy),
                        );
                    }
                }
            }
            AdiVariant::Dyakonov => {
                // (P_x + tau/2 d_x)(P_y + tau/2 d_y) U^n + tau P_x P_y f.
                let mut v = p_y(&ops_y, &u);
                for ix in 0..=mx {
                    let vrow = v.row_mut(ix);
                    let drow = dy_u.row(ix);
                    for iy in 1..my {
                        vrow[iy] += half_tau * drow[iy];
                    }
                }
                let pxv = p_x(&ops_x, &v);
                let dxv = delta_x(&ops_x, &v);
                for ix in 1..mx {
                    for iy in 1..my {
                        r1.set(
                            ix,
                            iy,
                            pxv.get(ix, iy) + half_tau * dxv.get(ix, iy) + tau * pf.get(ix, iy),
                        );
                    }
                }
            }
        }

        // Boundary values of the intermediate variable, derived from the
        // second-stage relation evaluated on the x-boundary columns where
        // U^{n+1} and U^n reduce to phi data.
        let mut ustar = Field2D::zeros(mx, my);
        for (left_end, bx) in [(true, 0usize), (false, mx)] {
            let x = gx.node(bx);
            let col_new: Vec<f64> = (0..=my)
                .map(|iy| (problem.phi)(x, gy.node(iy), t_new))
                .collect();
            let col_old: Vec<f64> = (0..=my)
                .map(|iy| (problem.phi)(x, gy.node(iy), t_old))
                .collect();
            let ix = if left_end { 0 } else { mx };
            for iy in 1..my {
                let mut v = ops_y.compact_slice(&col_new, iy)
                    - half_tau * ops_y.delta_slice(&col_new, iy);
                if variant == AdiVariant::Douglas {
                    v += half_tau * ops_y.delta_slice(&col_old, iy);
                }
                ustar.set(ix, iy, v);
            }
        }

        // x-sweep: one implicit solve along x per interior y column.
        let nx = mx - 1;
        let mut b = vec![0.0; nx];
        for iy in 1..my {
            for ix in 1..mx {
                b[ix - 1] = r1.get(ix, iy)
                    + ops_x.boundary_move(ix, half_tau, true) * ustar.get(0, iy)
                    + ops_x.boundary_move(ix, half_tau, false) * ustar.get(mx, iy);
            }
            ops_x.lu.solve_in_place(&mut b)?;
            for ix in 1..mx {
                ustar.set(ix, iy, b[ix - 1]);
            }
        }

        // y-sweep: one implicit solve along y per interior x row; Douglas
        // subtracts the splitting term tau/2 d_y U^n first.
        let ny = my - 1;
        let mut c = vec![0.0; ny];
        let mut u_new = Field2D::from_fn(mx, my, |ix, iy| {
            if ix == 0 || ix == mx || iy == 0 || iy == my {
                (problem.phi)(gx.node(ix), gy.node(iy), t_new)
            } else {
                0.0
            }
        });
        for ix in 1..mx {
            for iy in 1..my {
                let mut v = ustar.get(ix, iy);
                if variant == AdiVariant::Douglas {
                    v -= half_tau * dy_u.get(ix, iy);
                }
                v += ops_y.boundary_move(iy, half_tau, true) * u_new.get(ix, 0);
                v += ops_y.boundary_move(iy, half_tau, false) * u_new.get(ix, my);
                c[iy - 1] = v;
            }
            ops_y.lu.solve_in_place(&mut c)?;
            u_new.row_mut(ix)[1..my].copy_from_slice(&c);
        }

        u = u_new;
    }
    Ok(u)
}
