//! Discrete error norms over interior grid nodes.

use crate::error::SolverError;
use crate::grid::{Field2D, GridFunction1D};
use crate::Result;

/// A discrete L2 and L∞ norm pair, always measured over interior nodes only
/// because the boundary values are imposed exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormPair {
    pub l2: f64,
    pub linf: f64,
}

/// Discrete norms of `u - v` on the interior of a shared 1D grid.
///
/// L2 is `sqrt(h * sum d_j^2)`, L∞ is `max |d_j|`, both over `j = 1..M-1`.
/// The L2 sum accumulates strictly left to right so results are reproducible
/// bit for bit across runs.
pub fn norms_1d(u: &GridFunction1D, v: &GridFunction1D) -> Result<NormPair> {
    let gu = u.grid();
    let gv = v.grid();
    if gu != gv {
        return Err(SolverError::DimensionMismatch(format!(
            "norms_1d: grids differ ({:?} vs {:?})",
            gu, gv
        )));
    }
    let m = gu.m();
    let mut sum_sq = 0.0;
    let mut max_abs = 0.0f64;
    for j in 1..m {
        let d = u.values()[j] - v.values()[j];
        sum_sq += d * d;
        max_abs = max_abs.max(d.abs());
    }
    Ok(NormPair {
        l2: (gu.h() * sum_sq).sqrt(),
        linf: max_abs,
    })
}

/// Discrete norms of `u - v` on the interior of a shared 2D node layout.
///
/// The outer sum runs over interior x indices, the inner over interior y,
/// matching the storage order of `Field2D`.
pub fn norms_2d(u: &Field2D, v: &Field2D, hx: f64, hy: f64) -> Result<NormPair> {
    if u.nx() != v.nx() || u.ny() != v.ny() {
        return Err(SolverError::DimensionMismatch(format!(
            "norms_2d: {}x{} vs {}x{} nodes",
            u.nx() + 1,
            u.ny() + 1,
            v.nx() + 1,
            v.ny() + 1
        )));
    }
    let mut sum_sq = 0.0;
    let mut max_abs = 0.0f64;
    for ix in 1..u.nx() {
        for iy in 1..u.ny() {
            let d = u.get(ix, iy) - v.get(ix, iy);
            sum_sq += d * d;
            max_abs = max_abs.max(d.abs());
        }
    }
    Ok(NormPair {
        l2: (hx * hy * sum_sq).sqrt(),
        linf: max_abs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;

    #[test]
    fn identical_functions_have_zero_norms() {
        let grid = Grid1D::new(0.0, 1.0, 8).unwrap();
        let u = GridFunction1D::from_fn(grid, |x| x * x);
        let n = norms_1d(&u, &u).unwrap();
        assert_eq!(n.l2, 0.0);
        assert_eq!(n.linf, 0.0);
    }

    #[test]
    fn unit_difference_on_coarse_grid() {
        // M = 4, h = 0.25, three interior nodes with difference one:
        // L2 = sqrt(0.25 * 3) and L∞ = 1.
        let grid = Grid1D::new(0.0, 1.0, 4).unwrap();
        let u = GridFunction1D::from_fn(grid, |_| 1.0);
        let v = GridFunction1D::from_fn(grid, |_| 0.0);
        let n = norms_1d(&u, &v).unwrap();
        assert!((n.l2 - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((n.l2 - 0.8660254037844386).abs() < 1e-12);
        assert_eq!(n.linf, 1.0);
    }

    #[test]
    fn boundary_values_are_ignored() {
        let grid = Grid1D::new(0.0, 1.0, 4).unwrap();
        let mut u = GridFunction1D::zeros(grid);
        u.values_mut()[0] = 100.0;
        u.values_mut()[4] = -50.0;
        let v = GridFunction1D::zeros(grid);
        let n = norms_1d(&u, &v).unwrap();
        assert_eq!(n.l2, 0.0);
        assert_eq!(n.linf, 0.0);
    }

    #[test]
    fn unit_difference_2d() {
        // 4x4 cells, 3x3 interior nodes, hx = hy = 0.25:
        // L2 = sqrt(0.0625 * 9) = 0.75.
        let u = Field2D::from_fn(4, 4, |_, _| 1.0);
        let v = Field2D::zeros(4, 4);
        let n = norms_2d(&u, &v, 0.25, 0.25).unwrap();
        assert!((n.l2 - 0.75).abs() < 1e-15);
        assert_eq!(n.linf, 1.0);
    }

    #[test]
    fn norms_scale_homogeneously() {
        let grid = Grid1D::new(0.0, 2.0, 16).unwrap();
        let u = GridFunction1D::from_fn(grid, |x| (3.0 * x).sin());
        let z = GridFunction1D::zeros(grid);
        let base = norms_1d(&u, &z).unwrap();
        let scaled_fn = GridFunction1D::from_fn(grid, |x| -2.5 * (3.0 * x).sin());
        let scaled = norms_1d(&scaled_fn, &z).unwrap();
        assert!((scaled.l2 - 2.5 * base.l2).abs() < 1e-13 * base.l2.max(1.0));
        assert!((scaled.linf - 2.5 * base.linf).abs() < 1e-13);
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let u = GridFunction1D::zeros(Grid1D::new(0.0, 1.0, 4).unwrap());
        let v = GridFunction1D::zeros(Grid1D::new(0.0, 1.0, 8).unwrap());
        assert!(norms_1d(&u, &v).is_err());
        let a = Field2D::zeros(4, 4);
        let b = Field2D::zeros(4, 8);
        assert!(norms_2d(&a, &b, 0.25, 0.25).is_err());
    }
}
