//! The end-to-end procedure: sample at Chebyshev points, interpolate,
//! choose the degree by Mallows' Cp, truncate.

use serde::{Deserialize, Serialize};

use crate::cheb::{make_grid, values_to_coeffs, ChebSeries};
use crate::cp::{cp_scan, default_nbar, CpScan};
use crate::error::{invalid, Error, Result};
use crate::noise::{rng_from_seed, NoiseModel};
use crate::target::TargetFunction;

/// Output of [`fit`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    /// Coefficients of the degree-`N` interpolant of the samples.
    pub full_coeffs: ChebSeries,
    pub selected_degree: usize,
    /// `full_coeffs` truncated at `selected_degree`.
    pub truncated: ChebSeries,
    pub sigma_hat_sq: f64,
    pub cp_curve: CpScan,
    /// Seed the samples were drawn with, when they were drawn here.
    pub seed: Option<u64>,
    pub num_intervals: usize,
}

impl FitResult {
    pub fn nbar(&self) -> usize {
        self.cp_curve.nbar
    }
}

/// Draws `y_i = f(x_i) + ε_i` on the `N + 1` point grid.
///
/// The noise stream is ChaCha8 keyed by `seed`, so equal arguments give
/// bitwise equal samples.
pub fn sample(
    f: &TargetFunction,
    noise: &NoiseModel,
    num_intervals: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if num_intervals < 2 {
        return invalid(format!("sampling needs N >= 2, got {num_intervals}"));
    }
    let grid = make_grid(num_intervals)?;
    let mut rng = rng_from_seed(seed);
    Ok(grid
        .points()
        .iter()
        .map(|&x| f.eval(x) + noise.draw(&mut rng))
        .collect())
}

/// Fits samples taken at `cos(iπ/N)`, `i = 0..=N`.
///
/// `nbar` defaults to `⌊(N + 1)/2⌋`.
pub fn fit(values: &[f64], nbar: Option<usize>) -> Result<FitResult> {
    if values.len() < 3 {
        return invalid(format!(
            "fitting needs at least 3 samples, got {}",
            values.len()
        ));
    }
    let num_intervals = values.len() - 1;
    let full_coeffs = values_to_coeffs(values)?;
    if !full_coeffs.is_finite() {
        return Err(Error::NumericFailure(
            "samples contain non-finite values".into(),
        ));
    }
    let nbar = nbar.unwrap_or_else(|| default_nbar(num_intervals));
    let cp_curve = cp_scan(&full_coeffs, nbar)?;
    let selected_degree = cp_curve.selected;
    let truncated = full_coeffs.truncate(selected_degree)?;
    Ok(FitResult {
        full_coeffs,
        selected_degree,
        truncated,
        sigma_hat_sq: cp_curve.sigma_hat_sq,
        cp_curve,
        seed: None,
        num_intervals,
    })
}

/// [`sample`] followed by [`fit`].
pub fn fit_function(
    f: &TargetFunction,
    noise: &NoiseModel,
    num_intervals: usize,
    seed: u64,
    nbar: Option<usize>,
) -> Result<FitResult> {
    let values = sample(f, noise, num_intervals, seed)?;
    let mut result = fit(&values, nbar)?;
    result.seed = Some(seed);
    Ok(result)
}
