//! Coefficient families for the quasi-compact Grünwald schemes.
//!
//! Everything downstream is driven by four scalar families: the Grünwald
//! weights `g_k`, the shift-expansion coefficients `a_{p,l}`, the fourth- and
//! fifth-order combination coefficients (mu and gamma sets), and the fused
//! weights `w_k` that bake the mu combination and the tempering factor into a
//! single convolution kernel. All of them are cheap closed forms; the solvers
//! compute them once per run and share them immutably.

use crate::error::SolverError;
use crate::linalg::{DenseLu, DenseMatrix};
use crate::Result;

/// A fractional differentiation order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    alpha: f64,
}

impl FracOrder {
    /// The strict range the schemes are derived for: `1 < alpha < 2`.
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(SolverError::InvalidParameter(format!(
                "fractional order must satisfy 1 < alpha < 2, got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    /// Admits the closed upper endpoint `alpha = 2`, where the weight series
    /// terminates and the operator reduces to the classical second
    /// derivative. Analysis routines sample this endpoint; solvers do not.
    pub fn closed_upper(alpha: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha <= 2.0) {
            return Err(SolverError::InvalidParameter(format!(
                "fractional order must satisfy 1 < alpha <= 2, got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// A tempering rate `lambda >= 0`; zero disables tempering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tempering {
    lambda: f64,
}

impl Tempering {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(SolverError::InvalidParameter(format!(
                "tempering rate must be finite and nonnegative, got {lambda}"
            )));
        }
        Ok(Self { lambda })
    }

    pub fn zero() -> Self {
        Self { lambda: 0.0 }
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Grünwald weights `g_k`, the Taylor coefficients of `(1 - z)^alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrunwaldWeights {
    alpha: FracOrder,
    g: Vec<f64>,
}

impl GrunwaldWeights {
    pub fn alpha(&self) -> FracOrder {
        self.alpha
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }
}

/// Computes `g[0..=n]` by the multiplicative recurrence
/// `g_0 = 1`, `g_k = g_{k-1} (1 - (alpha + 1)/k)`.
///
/// The recurrence is exact in exact arithmetic and avoids the overflow of
/// Gamma ratios; the ratio form survives only as a test oracle.
pub fn grunwald_weights(alpha: FracOrder, n: usize) -> GrunwaldWeights {
    let a = alpha.alpha();
    let mut g = Vec::with_capacity(n + 1);
    g.push(1.0);
    for k in 1..=n {
        let prev = g[k - 1];
        g.push(prev * (1.0 - (a + 1.0) / k as f64));
    }
    GrunwaldWeights { alpha, g }
}

/// Shift-expansion coefficients `a_{p,l}` for `l = 0..3`: the Taylor
/// coefficients of `((1 - e^{-z})/z)^alpha e^{pz}` around `z = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftExpansionCoeffs {
    p: i32,
    a: [f64; 4],
}

impl ShiftExpansionCoeffs {
    pub fn p(&self) -> i32 {
        self.p
    }

    pub fn a(&self) -> &[f64; 4] {
        &self.a
    }
}

/// Closed forms of `a_{p,l}`, `l = 0..3`, for the bounded-domain shifts
/// `p ∈ {-1, 0, 1}`.
pub fn shift_expansion_coeffs(alpha: FracOrder, p: i32) -> Result<ShiftExpansionCoeffs> {
    if !(-1..=1).contains(&p) {
        return Err(SolverError::InvalidParameter(format!(
            "shift must be -1, 0 or 1 on a bounded domain, got {p}"
        )));
    }
    let a = alpha.alpha();
    let pf = p as f64;
    let a0 = 1.0;
    let a1 = pf - a / 2.0;
    let a2 = (a + 3.0 * a * a - 12.0 * a * pf + 12.0 * pf * pf) / 24.0;
    let a3 = (8.0 * pf.powi(3) + 2.0 * pf * a - 12.0 * pf * pf * a - a * a + 6.0 * pf * a * a
        - a.powi(3))
        / 48.0;
    Ok(ShiftExpansionCoeffs {
        p,
        a: [a0, a1, a2, a3],
    })
}

/// The next coefficient `a_{p,4}` of the same expansion.
///
/// It sits outside `ShiftExpansionCoeffs` because only the fifth-order
/// elimination system needs it; expressed through `q = p - alpha/2` it is
/// `-alpha/2880 + alpha^2/1152 + q^2 alpha/48 + q^4/24`.
pub fn shift_expansion_a4(alpha: FracOrder, p: i32) -> f64 {
    let a = alpha.alpha();
    let q = p as f64 - a / 2.0;
    -a / 2880.0 + a * a / 1152.0 + q * q * a / 48.0 + q.powi(4) / 24.0
}

/// Fourth-order combination coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QC4Coeffs {
    pub mu1: f64,
    pub mu0: f64,
    pub mu_m1: f64,
    pub b2: f64,
}

fn b2_poly(alpha: f64) -> f64 {
    (4.0 + alpha - alpha * alpha) / 24.0
}

/// Raw polynomial evaluation of (mu1, mu0, mu_m1, b2) for any real order.
/// The stability analysis samples the closed interval [1, 2], which the
/// `FracOrder` constructors deliberately exclude, so this path skips them.
pub(crate) fn qc4_raw(alpha: f64) -> (f64, f64, f64, f64) {
    (
        (1.0 + alpha) * (2.0 + alpha) / 12.0,
        -(alpha - 2.0) * (2.0 + alpha) / 6.0,
        (alpha - 2.0) * (alpha - 1.0) / 12.0,
        b2_poly(alpha),
    )
}

/// Closed forms of the fourth-order coefficient set.
pub fn qc4_coeffs(alpha: FracOrder) -> QC4Coeffs {
    let (mu1, mu0, mu_m1, b2) = qc4_raw(alpha.alpha());
    QC4Coeffs { mu1, mu0, mu_m1, b2 }
}

/// Fifth-order combination coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QC5Coeffs {
    pub gamma1: f64,
    pub gamma2: f64,
    pub mu1: f64,
    pub mu0: f64,
    pub mu_m1: f64,
}

/// Closed forms of the fifth-order coefficient set.
///
/// The shared denominator `1724 - 2a - 570a^2 - 30a^3 + 30a^4` stays well
/// away from zero on `(1, 2]`; the guard exists for defense only.
pub fn qc5_coeffs(alpha: FracOrder) -> Result<QC5Coeffs> {
    let a = alpha.alpha();
    let a2 = a * a;
    let a3 = a2 * a;
    let a4 = a2 * a2;
    let d = 1724.0 - 2.0 * a - 570.0 * a2 - 30.0 * a3 + 30.0 * a4;
    if d.abs() < 1e-8 {
        return Err(SolverError::InvalidParameter(format!(
            "degenerate fifth-order denominator {d} at alpha = {a}"
        )));
    }
    Ok(QC5Coeffs {
        gamma1: (350.0 + 331.0 * a - 15.0 * a2 - 75.0 * a3 - 15.0 * a4) / d,
        gamma2: (566.0 - 329.0 * a - 135.0 * a2 + 105.0 * a3 - 15.0 * a4) / d,
        mu1: (566.0 + 329.0 * a - 135.0 * a2 - 105.0 * a3 - 15.0 * a4) / d,
        mu0: 2.0 * (862.0 + a - 285.0 * a2 + 15.0 * a3 + 15.0 * a4) / d,
        mu_m1: (350.0 - 331.0 * a - 15.0 * a2 + 75.0 * a3 - 15.0 * a4) / d,
    })
}

/// Maximum residual of the five elimination equations the fifth-order
/// coefficients must satisfy.
///
/// Matching Taylor orders `l = 0..4` of the shifted sum against the compact
/// right-hand side gives, for each `l`,
/// `sum_p mu_p a_{p,l} - (-1)^l gamma1 / l! - gamma2 / l! = delta_{l,0}`.
/// A correct coefficient set drives every residual below 1e-12.
pub fn qc5_elimination_residual(alpha: FracOrder, c: &QC5Coeffs) -> Result<f64> {
    let mut worst = 0.0f64;
    let mut factorial = 1.0;
    for l in 0..5usize {
        if l > 0 {
            factorial *= l as f64;
        }
        let mut lhs = 0.0;
        for (p, mu) in [(1, c.mu1), (0, c.mu0), (-1, c.mu_m1)] {
            let apl = if l < 4 {
                shift_expansion_coeffs(alpha, p)?.a()[l]
            } else {
                shift_expansion_a4(alpha, p)
            };
            lhs += mu * apl;
        }
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        lhs -= sign * c.gamma1 / factorial;
        lhs -= c.gamma2 / factorial;
        let rhs = if l == 0 { 1.0 } else { 0.0 };
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

/// Fused convolution weights `w_k`, optionally tempered.
#[derive(Debug, Clone, PartialEq)]
pub struct FusedWeights {
    alpha: FracOrder,
    lambda: Tempering,
    h: f64,
    w: Vec<f64>,
}

impl FusedWeights {
    pub fn alpha(&self) -> FracOrder {
        self.alpha
    }

    pub fn lambda(&self) -> Tempering {
        self.lambda
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }
}

fn fuse(
    mu1: f64,
    mu0: f64,
    mu_m1: f64,
    alpha: FracOrder,
    lambda: Tempering,
    h: f64,
    n: usize,
) -> Result<FusedWeights> {
    if n < 2 {
        return Err(SolverError::InvalidParameter(format!(
            "fused weights need n >= 2, got {n}"
        )));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(SolverError::InvalidParameter(format!(
            "grid spacing must be positive and finite, got {h}"
        )));
    }
    let g = grunwald_weights(alpha, n);
    let g = g.g();
    let mut w = Vec::with_capacity(n + 1);
    w.push(mu1 * g[0]);
    w.push(mu0 * g[0] + mu1 * g[1]);
    for k in 2..=n {
        w.push(mu1 * g[k] + mu0 * g[k - 1] + mu_m1 * g[k - 2]);
    }
    let lh = lambda.lambda() * h;
    if lh != 0.0 {
        // The shift by one (k - 1, not k) makes w[0] grow by e^{+lambda h};
        // it pairs with the superdiagonal position that weight occupies.
        for (k, wk) in w.iter_mut().enumerate() {
            *wk *= (-(k as f64 - 1.0) * lh).exp();
        }
    }
    Ok(FusedWeights {
        alpha,
        lambda,
        h,
        w,
    })
}

/// Fused weights of the fourth-order scheme:
/// `w_0 = mu1 g_0`, `w_1 = mu0 g_0 + mu1 g_1`,
/// `w_k = mu1 g_k + mu0 g_{k-1} + mu_m1 g_{k-2}` for `k >= 2`,
/// each multiplied by `e^{-(k-1) lambda h}` when tempered.
pub fn fused_weights(
    alpha: FracOrder,
    lambda: Tempering,
    h: f64,
    n: usize,
) -> Result<FusedWeights> {
    let c = qc4_coeffs(alpha);
    fuse(c.mu1, c.mu0, c.mu_m1, alpha, lambda, h, n)
}

/// Fused weights with the fifth-order mu set, used by the fifth-order steady
/// scheme; same fusion and tempering rule as `fused_weights`.
pub fn fused_weights_qc5(
    alpha: FracOrder,
    lambda: Tempering,
    h: f64,
    n: usize,
) -> Result<FusedWeights> {
    let c = qc5_coeffs(alpha)?;
    fuse(c.mu1, c.mu0, c.mu_m1, alpha, lambda, h, n)
}

/// Solves the fifth-order elimination system numerically, bypassing the
/// closed forms. Returned in the order (mu1, mu0, mu_m1, gamma1, gamma2).
/// This is the independent oracle the closed forms are tested against; it is
/// public so the acceptance suite can call it without reimplementation.
pub fn qc5_coeffs_from_system(alpha: FracOrder) -> Result<[f64; 5]> {
    let mut m = DenseMatrix::zeros(5, 5);
    let mut rhs = [0.0; 5];
    rhs[0] = 1.0;
    let mut factorial = 1.0;
    for l in 0..5usize {
        if l > 0 {
            factorial *= l as f64;
        }
        for (col, p) in [(0usize, 1i32), (1, 0), (2, -1)] {
            let apl = if l < 4 {
                shift_expansion_coeffs(alpha, p)?.a()[l]
            } else {
                shift_expansion_a4(alpha, p)
            };
            m.set(l, col, apl);
        }
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        m.set(l, 3, -sign / factorial);
        m.set(l, 4, -1.0 / factorial);
    }
    let solved = DenseLu::factor(&m)?.solve(&rhs)?;
    Ok([solved[0], solved[1], solved[2], solved[3], solved[4]])
}
