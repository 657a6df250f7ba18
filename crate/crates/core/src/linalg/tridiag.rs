//! Tridiagonal systems and the Thomas algorithm.

use crate::error::SolverError;
use crate::Result;

/// Tridiagonal matrix stored as three diagonals.
///
/// `lower[i]` multiplies `x[i]` in row `i + 1`, `upper[i]` multiplies
/// `x[i + 1]` in row `i`, so `lower` and `upper` have length `n - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(lower: Vec<f64>, diag: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(SolverError::InvalidParameter(
                "tridiagonal system must have at least one row".into(),
            ));
        }
        if lower.len() + 1 != n || upper.len() + 1 != n {
            return Err(SolverError::DimensionMismatch(format!(
                "tridiagonal bands: diag {}, lower {}, upper {}",
                n,
                lower.len(),
                upper.len()
            )));
        }
        Ok(Self { lower, diag, upper })
    }

    /// Builds the constant-band matrix with `sub` below, `main` on, and
    /// `sup` above the diagonal. This is the shape of every compact operator.
    pub fn constant_bands(n: usize, sub: f64, main: f64, sup: f64) -> Result<Self> {
        if n == 0 {
            return Err(SolverError::InvalidParameter(
                "tridiagonal system must have at least one row".into(),
            ));
        }
        Ok(Self {
            lower: vec![sub; n - 1],
            diag: vec![main; n],
            upper: vec![sup; n - 1],
        })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Computes `y = T x`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        let n = self.n();
        if x.len() != n {
            return Err(SolverError::DimensionMismatch(format!(
                "tridiagonal matvec: size {} vs vector {}",
                n,
                x.len()
            )));
        }
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut acc = self.diag[i] * x[i];
            if i > 0 {
                acc += self.lower[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                acc += self.upper[i] * x[i + 1];
            }
            y[i] = acc;
        }
        Ok(y)
    }

    /// Solves `T x = b` by the Thomas algorithm without pivoting.
    ///
    /// The compact matrices this is used for are strictly diagonally dominant,
    /// so the sweep is stable; a vanishing pivot is reported as singular.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.n();
        if b.len() != n {
            return Err(SolverError::DimensionMismatch(format!(
                "tridiagonal solve: size {} vs right-hand side {}",
                n,
                b.len()
            )));
        }
        let mut c_prime = vec![0.0; n.saturating_sub(1)];
        let mut d_prime = vec![0.0; n];

        let mut pivot = self.diag[0];
        if pivot == 0.0 {
            return Err(SolverError::SingularMatrix {
                context: "Thomas sweep",
                pivot,
                step: 0,
            });
        }
        if n > 1 {
            c_prime[0] = self.upper[0] / pivot;
        }
        d_prime[0] = b[0] / pivot;

        for i in 1..n {
            pivot = self.diag[i] - self.lower[i - 1] * c_prime[i - 1];
            if pivot == 0.0 {
                return Err(SolverError::SingularMatrix {
                    context: "Thomas sweep",
                    pivot,
                    step: i,
                });
            }
            if i + 1 < n {
                c_prime[i] = self.upper[i] / pivot;
            }
            d_prime[i] = (b[i] - self.lower[i - 1] * d_prime[i - 1]) / pivot;
        }

        for i in (0..n - 1).rev() {
            let next = d_prime[i + 1];
            d_prime[i] -= c_prime[i] * next;
        }
        Ok(d_prime)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{DenseLu, DenseMatrix};
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn compact_shaped_system_preserves_constants() {
        // Row sums of [b2, 1 - 2 b2, b2] equal one away from the ends, so a
        // constant vector maps to itself there.
        let b2 = 1.0 / 6.0;
        let t = Tridiagonal::constant_bands(9, b2, 1.0 - 2.0 * b2, b2).unwrap();
        let ones = vec![1.0; 9];
        let y = t.matvec(&ones).unwrap();
        for yi in &y[1..8] {
            assert!((yi - 1.0).abs() < 1e-15);
        }
        let x = t.solve(&y).unwrap();
        for xi in &x {
            assert!((xi - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn agrees_with_dense_lu_on_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
        for trial in 0..100 {
            let n = rng.random_range(2..40usize);
            let lower: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-1.0..1.0)).collect();
            let upper: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-1.0..1.0)).collect();
            // Dominant diagonal keeps the unpivoted sweep well behaved.
            let diag: Vec<f64> = (0..n).map(|_| rng.random_range(2.5..3.5)).collect();
            let b: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();

            let t = Tridiagonal::new(lower.clone(), diag.clone(), upper.clone()).unwrap();
            let x_thomas = t.solve(&b).unwrap();

            let mut dense = DenseMatrix::zeros(n, n);
            for i in 0..n {
                dense.set(i, i, diag[i]);
                if i > 0 {
                    dense.set(i, i - 1, lower[i - 1]);
                }
                if i + 1 < n {
                    dense.set(i, i + 1, upper[i]);
                }
            }
            let x_dense = DenseLu::factor(&dense).unwrap().solve(&b).unwrap();
            for (a, c) in x_thomas.iter().zip(x_dense.iter()) {
                assert!(
                    (a - c).abs() < 1e-11,
                    "trial {trial}: Thomas {a} vs LU {c}"
                );
            }
        }
    }

    #[test]
    fn one_by_one_system() {
        let t = Tridiagonal::new(vec![], vec![4.0], vec![]).unwrap();
        let x = t.solve(&[2.0]).unwrap();
        assert_eq!(x, vec![0.5]);
    }

    #[test]
    fn zero_pivot_is_reported() {
        let t = Tridiagonal::constant_bands(3, 1.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            t.solve(&[1.0, 1.0, 1.0]),
            Err(SolverError::SingularMatrix { step: 0, .. })
        ));
    }

    #[test]
    fn band_length_mismatch_is_rejected() {
        assert!(Tridiagonal::new(vec![1.0], vec![1.0, 2.0, 3.0], vec![1.0, 1.0]).is_err());
    }
}
