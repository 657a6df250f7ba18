//! Toeplitz matrix-vector products via circulant embedding and the FFT.
//!
//! The Grünwald convolution matrices are Toeplitz, so the explicit half of a
//! Crank-Nicolson step can be applied in `O(M log M)` instead of `O(M^2)`.
//! The Toeplitz block is embedded in a circulant of power-of-two length and
//! diagonalized by the FFT once at construction.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::SolverError;
use crate::Result;

/// Precomputed FFT workspace for products with one fixed Toeplitz matrix.
pub struct ToeplitzMatvec {
    n: usize,
    len: usize,
    first_col: Vec<f64>,
    first_row: Vec<f64>,
    /// DFT of the embedding circulant's first column.
    spectrum: Vec<Complex<f64>>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl ToeplitzMatvec {
    /// Builds the workspace for the `n x n` Toeplitz matrix whose first
    /// column is `first_col` and first row is `first_row`. The two must agree
    /// on the shared corner entry.
    pub fn new(first_col: &[f64], first_row: &[f64]) -> Result<Self> {
        let n = first_col.len();
        if n == 0 || first_row.len() != n {
            return Err(SolverError::DimensionMismatch(format!(
                "Toeplitz generators: column {}, row {}",
                n,
                first_row.len()
            )));
        }
        if first_col[0] != first_row[0] {
            return Err(SolverError::InvalidParameter(format!(
                "Toeplitz corner mismatch: column starts {}, row starts {}",
                first_col[0], first_row[0]
            )));
        }

        let len = (2 * n - 1).next_power_of_two();
        // Circulant first column: the Toeplitz column, then zero padding,
        // then the reversed tail of the first row wrapping around the end.
        let mut circ = vec![Complex::new(0.0, 0.0); len];
        for (k, &v) in first_col.iter().enumerate() {
            circ[k].re = v;
        }
        for k in 1..n {
            circ[len - k].re = first_row[k];
        }

        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(len);
        let inverse = planner.plan_fft_inverse(len);
        forward.process(&mut circ);

        Ok(Self {
            n,
            len,
            first_col: first_col.to_vec(),
            first_row: first_row.to_vec(),
            spectrum: circ,
            forward,
            inverse,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Direct `O(n^2)` product, the reference the FFT path is tested against.
    pub fn apply_dense(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(SolverError::DimensionMismatch(format!(
                "Toeplitz apply: size {} vs vector {}",
                self.n,
                x.len()
            )));
        }
        let mut y = vec![0.0; self.n];
        for (i, yi) in y.iter_mut().enumerate() {
            // Row i reads first_col[i], ..., first_col[0] against x[0..=i],
            // then first_row[1..] against the tail of x.
            let mut acc = 0.0;
            for (xv, cv) in x[..=i].iter().zip(self.first_col[..=i].iter().rev()) {
                acc += cv * xv;
            }
            for (xv, rv) in x[i + 1..].iter().zip(self.first_row[1..].iter()) {
                acc += rv * xv;
            }
            *yi = acc;
        }
        Ok(y)
    }

    /// FFT-accelerated product through the circulant embedding.
    pub fn apply_fft(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(SolverError::DimensionMismatch(format!(
                "Toeplitz apply: size {} vs vector {}",
                self.n,
                x.len()
            )));
        }
        let mut buf = vec![Complex::new(0.0, 0.0); self.len];
        for (b, &v) in buf.iter_mut().zip(x.iter()) {
            b.re = v;
        }
        self.forward.process(&mut buf);
        for (b, s) in buf.iter_mut().zip(self.spectrum.iter()) {
            *b *= s;
        }
        self.inverse.process(&mut buf);
        let scale = 1.0 / self.len as f64;
        Ok(buf[..self.n].iter().map(|c| c.re * scale).collect())
    }
}
