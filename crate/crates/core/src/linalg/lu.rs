//! Dense row-major matrices and LU factorization with partial pivoting.

use crate::error::SolverError;
use crate::Result;

/// Dense matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Creates an `n_rows x n_cols` matrix of zeros.
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            data: vec![0.0; n_rows * n_cols],
        }
    }

    /// Creates the `n x n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        self.data[i * self.n_cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        self.data[i * self.n_cols + j] = value;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, value: f64) {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        self.data[i * self.n_cols + j] += value;
    }

    /// Borrows row `i` as a slice.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        debug_assert!(i < self.n_rows);
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    /// Returns the transpose as a new matrix.
    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Computes `y = self * x`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n_cols {
            return Err(SolverError::DimensionMismatch(format!(
                "matvec: matrix has {} columns but vector has length {}",
                self.n_cols,
                x.len()
            )));
        }
        let mut y = vec![0.0; self.n_rows];
        for (i, yi) in y.iter_mut().enumerate() {
            let row = self.row(i);
            *yi = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        Ok(y)
    }

    /// Adds `scale * other` into `self` entrywise.
    pub fn add_scaled(&mut self, other: &DenseMatrix, scale: f64) -> Result<()> {
        if self.n_rows != other.n_rows || self.n_cols != other.n_cols {
            return Err(SolverError::DimensionMismatch(format!(
                "add_scaled: {}x{} vs {}x{}",
                self.n_rows, self.n_cols, other.n_rows, other.n_cols
            )));
        }
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += scale * b;
        }
        Ok(())
    }
}

/// LU factorization `P A = L U` of a square matrix, with partial pivoting.
#[derive(Debug, Clone)]
pub struct DenseLu {
    n: usize,
    /// Packed L (unit lower, diagonal implicit) and U factors.
    lu: Vec<f64>,
    /// Row swap applied at each elimination step.
    pivots: Vec<usize>,
}

impl DenseLu {
    /// Factors `a`, consuming a copy of its storage.
    ///
    /// Fails with `SingularMatrix` when a pivot column is exactly zero below
    /// the diagonal, which is the only unambiguous signal of rank deficiency
    /// available at this precision.
    pub fn factor(a: &DenseMatrix) -> Result<Self> {
        if a.n_rows != a.n_cols {
            return Err(SolverError::DimensionMismatch(format!(
                "LU factorization needs a square matrix, got {}x{}",
                a.n_rows, a.n_cols
            )));
        }
        let n = a.n_rows;
        let mut lu = a.data.clone();
        let mut pivots = vec![0usize; n];

        for k in 0..n {
            // Pick the largest magnitude entry in column k at or below row k.
            let mut p = k;
            let mut best = lu[k * n + k].abs();
            for i in (k + 1)..n {
                let cand = lu[i * n + k].abs();
                if cand > best {
                    best = cand;
                    p = i;
                }
            }
            if best == 0.0 {
                return Err(SolverError::SingularMatrix {
                    context: "dense LU",
                    pivot: 0.0,
                    step: k,
                });
            }
            pivots[k] = p;
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                if factor != 0.0 {
                    for j in (k + 1)..n {
                        lu[i * n + j] -= factor * lu[k * n + j];
                    }
                }
            }
        }

        Ok(Self { n, lu, pivots })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Solves `A x = b`, returning the solution.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x)?;
        Ok(x)
    }

    /// Solves `A x = b` with `b` overwritten by the solution.
    pub fn solve_in_place(&self, b: &mut [f64]) -> Result<()> {
        let n = self.n;
        if b.len() != n {
            return Err(SolverError::DimensionMismatch(format!(
                "LU solve: system size {} but right-hand side length {}",
                n,
                b.len()
            )));
        }
        // The factorization swaps whole rows, multipliers included, so the
        // right-hand side must see every swap before forward substitution
        // starts; interleaving the two would pair multipliers with stale rows.
        for k in 0..n {
            let p = self.pivots[k];
            if p != k {
                b.swap(k, p);
            }
        }
        // Forward substitution with unit lower L.
        for k in 0..n {
            let bk = b[k];
            if bk != 0.0 {
                for (i, bi) in b.iter_mut().enumerate().skip(k + 1) {
                    *bi -= self.lu[i * n + k] * bk;
                }
            }
        }
        // Back substitution with U.
        for k in (0..n).rev() {
            let mut acc = b[k];
            let row = &self.lu[k * n + k + 1..(k + 1) * n];
            for (a, &bj) in row.iter().zip(&b[k + 1..n]) {
                acc -= a * bj;
            }
            b[k] = acc / self.lu[k * n + k];
        }
        Ok(())
    }
}
