//! Stability theory made executable.
//!
//! The semidiscrete operator `A + A^T` has the real generating function
//! `f(alpha, x)`, and the fully discrete Crank-Nicolson step has the
//! amplification factor `v = (Q1 + Q2) / (Q1 - Q2)` in frequency space.
//! Unconditional stability rests on two sign facts: `f <= 0` on `[1, 2] x
//! [-pi, pi]`, and consequently `Re Q2 <= 0` while `Q1 > 0`. Neither fact is
//! proven here; [`stability_scan`] samples both claims on dense grids and
//! reports any violation instead of panicking, so a failed scan is data.
//!
//! Everything in this module works with dimensionless weights (`h = 1`), so
//! grid steps enter only through the ratio `tau / h^alpha`.

use crate::coeffs::qc4_raw;
use rustfft::num_complex::Complex;
use std::f64::consts::PI;

/// One sampled point of the scan, kept when it violates a bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSample {
    pub alpha: f64,
    /// Second direction order for 2D factors; unused by the 1D scan.
    pub beta: Option<f64>,
    pub sigma: f64,
    /// Time step over h^alpha.
    pub ratio: f64,
    pub k1: f64,
    pub k2: f64,
    pub f_value: f64,
    pub amp_modulus: f64,
}

/// Aggregated row of the scan: for one (alpha, sigma) pair, the generating
/// function value and the largest amplification modulus over all sampled
/// ratios and diffusion-coefficient pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub alpha: f64,
    pub sigma: f64,
    pub f_value: f64,
    pub max_amp: f64,
}

/// Outcome of a stability scan.
#[derive(Debug, Clone, Default)]
pub struct StabilityReport {
    pub rows: Vec<ScanRow>,
    /// Largest f value seen; negative infinity when the scan is empty.
    pub max_f: f64,
    /// Largest amplification modulus seen.
    pub max_amp: f64,
    pub violations: Vec<SpectralSample>,
}

/// Bound below which f is considered nonpositive, one order above the
/// rounding noise of the trig evaluations.
pub const F_TOLERANCE: f64 = 1e-12;

/// Bound for the amplification modulus.
pub const AMP_TOLERANCE: f64 = 1.0 + 1e-12;

impl StabilityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Frequency symbol of the left-sided fused weights, `sum_k w_k
/// e^{-i(k-1)sigma}`, in the closed trigonometric form
/// `(2 sin(|sigma|/2))^alpha e^{i alpha (pi - |sigma|)/2} (mu1 e^{i sigma} +
/// mu0 + mu_m1 e^{-i sigma})` with conjugation handling the sign of sigma.
/// The right-sided symbol is its conjugate.
pub fn weight_symbol(alpha: f64, sigma: f64) -> Complex<f64> {
    let (mu1, mu0, mu_m1) = {
        let (m1, m0, mm1, _) = qc4_raw(alpha);
        (m1, m0, mm1)
    };
    let s = sigma.abs();
    let amp = (2.0 * (0.5 * s).sin()).powf(alpha);
    let outer = Complex::from_polar(amp, 0.5 * alpha * (PI - s));
    let inner = mu1 * Complex::from_polar(1.0, s)
        + Complex::new(mu0, 0.0)
        + mu_m1 * Complex::from_polar(1.0, -s);
    let value = outer * inner;
    if sigma < 0.0 {
        value.conj()
    } else {
        value
    }
}

/// Generating function of `A + A^T` in closed form. Real by construction:
/// the symbol plus its conjugate. Even in x, and f(alpha, 0) = 0.
///
/// Valid for alpha anywhere in the closed interval [1, 2] and x in
/// [-pi, pi]; both endpoints of the order interval matter to the analysis
/// even though the solvers themselves stay strictly inside.
pub fn generating_function(alpha: f64, x: f64) -> f64 {
    let (mu1, mu0, mu_m1, _) = qc4_raw(alpha);
    let s = x.abs();
    let amp = (2.0 * (0.5 * s).sin()).powf(alpha);
    let phase = 0.5 * alpha * (PI - s);
    2.0 * amp * (mu1 * (phase + s).cos() + mu0 * phase.cos() + mu_m1 * (phase - s).cos())
}

/// Modulus of the 1D Crank-Nicolson amplification factor at frequency
/// sigma, with time step tau and grid step h.
pub fn amplification_factor_1d(
    alpha: f64,
    sigma: f64,
    tau: f64,
    h: f64,
    k1: f64,
    k2: f64,
) -> f64 {
    let (_, _, _, b2) = qc4_raw(alpha);
    let sin_half = (0.5 * sigma).sin();
    let q1 = Complex::new(1.0 - 4.0 * b2 * sin_half * sin_half, 0.0);
    let a = weight_symbol(alpha, sigma);
    let q2 = 0.5 * tau / h.powf(alpha) * (k1 * a + k2 * a.conj());
    ((q1 + q2) / (q1 - q2)).norm()
}

/// Modulus of the 2D ADI amplification factor, the product of the two
/// one-directional factors.
#[allow(clippy::too_many_arguments)]
pub fn amplification_factor_2d(
    alpha: f64,
    beta: f64,
    sigma_x: f64,
    sigma_y: f64,
    tau: f64,
    hx: f64,
    hy: f64,
    kx: (f64, f64),
    ky: (f64, f64),
) -> f64 {
    amplification_factor_1d(alpha, sigma_x, tau, hx, kx.0, kx.1)
        * amplification_factor_1d(beta, sigma_y, tau, hy, ky.0, ky.1)
}

/// Evenly spaced sample points including both endpoints; a single point
/// lands on `lo`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Ratios tau / h^alpha probed by the default scan; the last one is far
/// outside any practical step size to stress the unconditional claim.
pub fn default_ratios() -> Vec<f64> {
    vec![0.1, 1.0, 10.0, 1000.0]
}

/// Diffusion-coefficient pairs probed by the scan: one-sided left, one-sided
/// right, and symmetric two-sided.
const K_PAIRS: [(f64, f64); 3] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)];

/// Samples f and |v| over the given grids and records every bound
/// violation. Empty input grids produce an empty report.
pub fn stability_scan(
    alpha_grid: &[f64],
    sigma_grid: &[f64],
    ratio_grid: &[f64],
) -> StabilityReport {
    let mut report = StabilityReport {
        rows: Vec::with_capacity(alpha_grid.len() * sigma_grid.len()),
        max_f: f64::NEG_INFINITY,
        max_amp: f64::NEG_INFINITY,
        violations: Vec::new(),
    };
    for &alpha in alpha_grid {
        for &sigma in sigma_grid {
            let f_value = generating_function(alpha, sigma);
            report.max_f = report.max_f.max(f_value);
            let mut row_amp: f64 = f64::NEG_INFINITY;
            if f_value > F_TOLERANCE {
                report.violations.push(SpectralSample {
                    alpha,
                    beta: None,
                    sigma,
                    ratio: f64::NAN,
                    k1: f64::NAN,
                    k2: f64::NAN,
                    f_value,
                    amp_modulus: f64::NAN,
                });
            }
            for &ratio in ratio_grid {
                for (k1, k2) in K_PAIRS {
                    let amp = amplification_factor_1d(alpha, sigma, ratio, 1.0, k1, k2);
                    row_amp = row_amp.max(amp);
                    if amp > AMP_TOLERANCE {
                        report.violations.push(SpectralSample {
                            alpha,
                            beta: None,
                            sigma,
                            ratio,
                            k1,
                            k2,
                            f_value,
                            amp_modulus: amp,
                        });
                    }
                }
            }
            report.max_amp = report.max_amp.max(row_amp);
            report.rows.push(ScanRow {
                alpha,
                sigma,
                f_value,
                max_amp: row_amp,
            });
        }
    }
    report
}

/// The scan from the module documentation: 101 orders across [1, 2], 721
/// frequencies across [0, pi], the default ratio list, all K pairs.
pub fn default_scan() -> StabilityReport {
    stability_scan(
        &linspace(1.0, 2.0, 101),
        &linspace(0.0, PI, 721),
        &default_ratios(),
    )
}
