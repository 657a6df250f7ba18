//! Uniform grids and grid functions.

use crate::error::SolverError;
use crate::Result;

/// A uniform 1D grid with `m + 1` nodes on `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    a: f64,
    b: f64,
    m: usize,
    h: f64,
}

impl Grid1D {
    /// At least four cells are required: the compact stencil and the two
    /// boundary-adjacent convolution rows must not overlap.
    pub fn new(a: f64, b: f64, m: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(SolverError::InvalidParameter(format!(
                "grid interval [{a}, {b}] must be finite with b > a"
            )));
        }
        if m < 4 {
            return Err(SolverError::InvalidParameter(format!(
                "grid needs at least 4 cells, got {m}"
            )));
        }
        Ok(Self {
            a,
            b,
            m,
            h: (b - a) / m as f64,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Number of cells; there are `m + 1` nodes and `m - 1` interior nodes.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Coordinate of node `j`, with `node(0) = a` and `node(m) = b`.
    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        debug_assert!(j <= self.m);
        self.a + j as f64 * self.h
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.m).map(|j| self.node(j)).collect()
    }
}

/// Values attached to every node of a 1D grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction1D {
    grid: Grid1D,
    values: Vec<f64>,
}

impl GridFunction1D {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.m() + 1 {
            return Err(SolverError::DimensionMismatch(format!(
                "grid has {} nodes but {} values were supplied",
                grid.m() + 1,
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid1D) -> Self {
        let values = vec![0.0; grid.m() + 1];
        Self { grid, values }
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..=grid.m()).map(|j| f(grid.node(j))).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// The interior slice, nodes `1..m`.
    pub fn interior(&self) -> &[f64] {
        &self.values[1..self.grid.m()]
    }
}

/// A scalar field on an `(nx + 1) x (ny + 1)` node lattice, stored row-major
/// with the y index contiguous. Grid geometry lives alongside in the solvers,
/// which keeps this type a plain rectangular buffer.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    nx: usize,
    ny: usize,
    data: Vec<f64>,
}

impl Field2D {
    /// `nx` and `ny` count cells per direction, matching `Grid1D::m`.
    pub fn zeros(nx: usize, ny: usize) -> Self {
        Self {
            nx,
            ny,
            data: vec![0.0; (nx + 1) * (ny + 1)],
        }
    }

    pub fn from_fn(nx: usize, ny: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut field = Self::zeros(nx, ny);
        for ix in 0..=nx {
            for iy in 0..=ny {
                field.set(ix, iy, f(ix, iy));
            }
        }
        field
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    #[inline]
    fn idx(&self, ix: usize, iy: usize) -> usize {
        debug_assert!(ix <= self.nx && iy <= self.ny);
        ix * (self.ny + 1) + iy
    }

    #[inline]
    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.data[self.idx(ix, iy)]
    }

    #[inline]
    pub fn set(&mut self, ix: usize, iy: usize, value: f64) {
        let i = self.idx(ix, iy);
        self.data[i] = value;
    }

    /// Borrows the x-row `ix` (all y values at that x node).
    #[inline]
    pub fn row(&self, ix: usize) -> &[f64] {
        let start = self.idx(ix, 0);
        &self.data[start..start + self.ny + 1]
    }

    #[inline]
    pub fn row_mut(&mut self, ix: usize) -> &mut [f64] {
        let start = self.idx(ix, 0);
        &mut self.data[start..start + self.ny + 1]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_coordinates_hit_the_endpoints() {
        let g = Grid1D::new(0.0, 1.0, 8).unwrap();
        assert_eq!(g.node(0), 0.0);
        assert_eq!(g.node(8), 1.0);
        assert!((g.node(4) - 0.5).abs() < 1e-15);
        assert!((g.h() - 0.125).abs() < 1e-16);
        assert_eq!(g.nodes().len(), 9);
    }

    #[test]
    fn degenerate_intervals_are_rejected() {
        assert!(Grid1D::new(1.0, 1.0, 8).is_err());
        assert!(Grid1D::new(1.0, 0.0, 8).is_err());
        assert!(Grid1D::new(0.0, f64::INFINITY, 8).is_err());
        assert!(Grid1D::new(0.0, 1.0, 3).is_err());
    }

    #[test]
    fn grid_function_sampling_and_interior() {
        let g = Grid1D::new(0.0, 1.0, 4).unwrap();
        let u = GridFunction1D::from_fn(g, |x| 2.0 * x);
        assert_eq!(u.values().len(), 5);
        assert_eq!(u.interior().len(), 3);
        assert!((u.interior()[1] - 1.0).abs() < 1e-15);
        assert!(GridFunction1D::new(g, vec![0.0; 4]).is_err());
    }

    #[test]
    fn field_layout_keeps_y_contiguous() {
        let mut f = Field2D::zeros(3, 2);
        f.set(1, 0, 10.0);
        f.set(1, 1, 11.0);
        f.set(1, 2, 12.0);
        assert_eq!(f.row(1), &[10.0, 11.0, 12.0]);
        assert_eq!(f.get(1, 2), 12.0);
        assert_eq!(f.data().len(), 12);
        assert_eq!(f.max_abs(), 12.0);
    }

    #[test]
    fn from_fn_visits_every_node() {
        let f = Field2D::from_fn(2, 3, |ix, iy| (10 * ix + iy) as f64);
        assert_eq!(f.get(0, 0), 0.0);
        assert_eq!(f.get(2, 3), 23.0);
        assert_eq!(f.get(1, 2), 12.0);
    }
}
