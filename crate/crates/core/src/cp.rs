//! Mallows' Cp degree selection on a Chebyshev interpolant.
//!
//! With `ĉ_0..ĉ_N` the coefficients of the degree-`N` interpolant and a
//! degree cap `n̄ < N`, the noise variance estimate is
//!
//! ```text
//! σ̂² = N / (2(N − n̄)) · (‖ĉ_{n̄+1:N}‖² + ĉ_N²)
//! ```
//!
//! and the criterion for degree `ℓ ≤ n̄` is
//!
//! ```text
//! Cp(ℓ) = (N/2)(‖ĉ_{ℓ+1:N}‖² + ĉ_N²) + 2σ̂²(ℓ + 1 − (2ℓ + 1)/(2N))
//! ```
//!
//! The selected degree is the smallest `ℓ` attaining the minimum.
//!
//! Coefficients no larger than [`ROUNDOFF_FLOOR`] times the largest
//! coefficient are counted as exact zeros. Transform roundoff sits at about
//! one ulp of the largest coefficient; without the floor a noiseless
//! polynomial leaves a pseudo-random roundoff tail that Cp treats as noise.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::cheb::ChebSeries;
use crate::error::{invalid, Result};

/// Relative magnitude below which a coefficient counts as zero.
pub const ROUNDOFF_FLOOR: f64 = 8.0 * f64::EPSILON;

/// `c_j²`, or zero when `|c_j|` is at roundoff level.
struct Energies {
    floor: f64,
}

impl Energies {
    fn of(coeffs: &[f64]) -> Self {
        let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        Self {
            floor: ROUNDOFF_FLOOR * max,
        }
    }

    #[inline]
    fn sq(&self, c: f64) -> f64 {
        if c.abs() <= self.floor {
            0.0
        } else {
            c * c
        }
    }
}

/// The Cp curve over `ℓ = 0..=n̄` and its minimiser.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CpScan {
    pub nbar: usize,
    pub sigma_hat_sq: f64,
    pub cp_values: Vec<f64>,
    pub selected: usize,
}

/// The default cap `n̄ = ⌊(N + 1)/2⌋`.
pub fn default_nbar(num_intervals: usize) -> usize {
    num_intervals.div_ceil(2)
}

/// Noise variance estimate from the coefficients beyond `nbar`.
pub fn sigma_hat_sq(coeffs: &ChebSeries, nbar: usize) -> Result<f64> {
    let n = coeffs.degree();
    if nbar >= n {
        return invalid(format!("σ̂² needs n̄ < N, got n̄ = {nbar}, N = {n}"));
    }
    let c = coeffs.coeffs();
    let e = Energies::of(c);
    let tail: f64 = c[nbar + 1..].iter().map(|&v| e.sq(v)).sum();
    Ok(variance_from_tail(n, nbar, tail + e.sq(c[n])))
}

fn variance_from_tail(n: usize, nbar: usize, tail_with_last: f64) -> f64 {
    n as f64 / (2.0 * (n - nbar) as f64) * tail_with_last
}

fn penalty(n: usize, sigma_hat_sq: f64, ell: usize) -> f64 {
    let nf = n as f64;
    let ell = ell as f64;
    2.0 * sigma_hat_sq * (ell + 1.0 - (2.0 * ell + 1.0) / (2.0 * nf))
}

fn check_nbar(n: usize, nbar: usize) -> Result<()> {
    if nbar == 0 || nbar >= n {
        return invalid(format!("Cp scan needs 1 <= n̄ < N, got n̄ = {nbar}, N = {n}"));
    }
    Ok(())
}

/// All of `Cp(0..=nbar)` in one reverse pass over the coefficients.
pub fn cp_scan(coeffs: &ChebSeries, nbar: usize) -> Result<CpScan> {
    let n = coeffs.degree();
    check_nbar(n, nbar)?;
    let c = coeffs.coeffs();
    let e = Energies::of(c);
    let last_sq = e.sq(c[n]);

    // tails[ℓ] = Σ_{j=ℓ+1}^{N} c_j², accumulated from the small end.
    let mut tails = vec![0.0; nbar + 1];
    let mut acc = 0.0;
    for j in (1..=n).rev() {
        acc += e.sq(c[j]);
        if j - 1 <= nbar {
            tails[j - 1] = acc;
        }
    }
    let sigma_hat_sq = variance_from_tail(n, nbar, tails[nbar] + last_sq);
    let half_n = n as f64 / 2.0;
    let cp_values: Vec<f64> = tails
        .iter()
        .enumerate()
        .map(|(ell, tail)| half_n * (tail + last_sq) + penalty(n, sigma_hat_sq, ell))
        .collect();

    let mut selected = 0;
    for (ell, &v) in cp_values.iter().enumerate() {
        if v < cp_values[selected] {
            selected = ell;
        }
    }
    Ok(CpScan {
        nbar,
        sigma_hat_sq,
        cp_values,
        selected,
    })
}

/// `Cp(ell)` evaluated directly, without the shared suffix sums.
pub fn cp_value(coeffs: &ChebSeries, nbar: usize, ell: usize) -> Result<f64> {
    let n = coeffs.degree();
    check_nbar(n, nbar)?;
    if ell > nbar {
        return invalid(format!("ℓ = {ell} exceeds n̄ = {nbar}"));
    }
    let c = coeffs.coeffs();
    let e = Energies::of(c);
    let sigma = sigma_hat_sq(coeffs, nbar)?;
    let tail: f64 = c[ell + 1..].iter().map(|&v| e.sq(v)).sum();
    Ok(n as f64 / 2.0 * (tail + e.sq(c[n])) + penalty(n, sigma, ell))
}

/// The general form `‖μ̂ − y‖²_M + σ̂² tr(M(B + Bᵀ))` for a linear estimate
/// `μ̂ = By` and a positive diagonal loss weight `M`.
///
/// Dense; intended for small-`N` checks of the simplified criterion.
pub fn generalized_cp(
    y: &[f64],
    mu_hat: &[f64],
    sigma_hat_sq: f64,
    b: &DMatrix<f64>,
    m_diag: &[f64],
) -> Result<f64> {
    let dim = y.len();
    if mu_hat.len() != dim || m_diag.len() != dim || b.nrows() != dim || b.ncols() != dim {
        return invalid(format!(
            "dimension mismatch: y {dim}, μ̂ {}, M {}, B {}×{}",
            mu_hat.len(),
            m_diag.len(),
            b.nrows(),
            b.ncols()
        ));
    }
    if m_diag.iter().any(|&m| m.is_nan() || m <= 0.0) {
        return invalid("M must be positive definite");
    }
    let fit: f64 = (0..dim)
        .map(|i| m_diag[i] * (mu_hat[i] - y[i]).powi(2))
        .sum();
    // tr(M(B + Bᵀ)) = 2 Σ m_i B_ii for diagonal M
    let trace: f64 = (0..dim).map(|i| 2.0 * m_diag[i] * b[(i, i)]).sum();
    Ok(fit + sigma_hat_sq * trace)
}
