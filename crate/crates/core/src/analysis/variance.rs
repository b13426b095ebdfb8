use rayon::prelude::*;

use super::metrics::residual_proxy;
use super::stats::{mean, sample_variance};
use crate::cheb::{make_grid, values_to_coeffs};
use crate::error::{invalid, Result};
use crate::ls_oracle::sampling_vector;
use crate::noise::{substream_seed, NoiseModel};
use crate::pipeline::sample;
use crate::target::TargetFunction;

/// `4(n+1)σ²/N`, an upper bound on `Var[p_n(x)]` for uncorrelated noise of
/// variance `σ²` and any `x ∈ [-1, 1]`.
pub fn variance_bound(degree: usize, num_intervals: usize, sigma_sq: f64) -> Result<f64> {
    if degree >= num_intervals {
        return invalid(format!(
            "variance bound needs n < N, got n = {degree}, N = {num_intervals}"
        ));
    }
    Ok(4.0 * (degree as f64 + 1.0) * sigma_sq / num_intervals as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarianceEstimate {
    /// Sample variance of `p_n(x)` across trials.
    pub empirical: f64,
    /// `Var[ε]·‖s(x)‖₂²`; `None` when the noise has no variance.
    pub exact: Option<f64>,
    /// [`variance_bound`] for the same setting.
    pub bound: Option<f64>,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiasEstimate {
    /// Mean of `p_n(x)` across trials minus `f(x)`.
    pub empirical: f64,
    /// Standard error of `empirical`.
    pub standard_error: f64,
    /// `s(x)ᵀr̂_n − r̂_n(x)` with `r̂_n = f − q_n` from the residual proxy.
    pub predicted: f64,
    /// `(2√(n+1)·√(1+1/N) + 1)·‖r̂_n‖∞`.
    pub bound: f64,
    pub trials: usize,
}

struct Setting<'a> {
    f: &'a TargetFunction,
    noise: &'a NoiseModel,
    num_intervals: usize,
    degree: usize,
    x: f64,
}

impl Setting<'_> {
    fn check(&self, trials: usize) -> Result<()> {
        if trials < 100 {
            return invalid(format!(
                "Monte-Carlo estimates need at least 100 trials, got {trials}"
            ));
        }
        if self.degree >= self.num_intervals {
            return invalid(format!(
                "fixed degree {} must be below N = {}",
                self.degree, self.num_intervals
            ));
        }
        if !self.x.is_finite() {
            return invalid("evaluation point must be finite");
        }
        Ok(())
    }

    /// `p_n(x)` for each independent trial, in trial order.
    fn evaluations(&self, trials: usize, seed: u64) -> Result<Vec<f64>> {
        (0..trials as u64)
            .into_par_iter()
            .map(|t| {
                let y = sample(
                    self.f,
                    self.noise,
                    self.num_intervals,
                    substream_seed(seed, t),
                )?;
                values_to_coeffs(&y)?
                    .truncate(self.degree)?
                    .evaluate(self.x)
            })
            .collect()
    }
}

/// Monte-Carlo variance of the fixed-degree truncation `p_n(x)` (no degree
/// selection), next to the exact value from the sampling vector.
pub fn empirical_variance(
    f: &TargetFunction,
    noise: &NoiseModel,
    num_intervals: usize,
    n_fixed: usize,
    x: f64,
    trials: usize,
    seed: u64,
) -> Result<VarianceEstimate> {
    let setting = Setting {
        f,
        noise,
        num_intervals,
        degree: n_fixed,
        x,
    };
    setting.check(trials)?;
    let evals = setting.evaluations(trials, seed)?;
    let s = sampling_vector(x, n_fixed, num_intervals)?;
    let s_norm_sq: f64 = s.iter().map(|v| v * v).sum();
    let var = noise.variance();
    Ok(VarianceEstimate {
        empirical: sample_variance(&evals),
        exact: var.map(|v| v * s_norm_sq),
        bound: var
            .map(|v| variance_bound(n_fixed, num_intervals, v))
            .transpose()?,
        trials,
    })
}

/// Monte-Carlo bias of the fixed-degree truncation `p_n(x)`, next to the
/// value predicted from the residual proxy.
pub fn empirical_bias(
    f: &TargetFunction,
    noise: &NoiseModel,
    num_intervals: usize,
    n_fixed: usize,
    x: f64,
    trials: usize,
    seed: u64,
) -> Result<BiasEstimate> {
    let setting = Setting {
        f,
        noise,
        num_intervals,
        degree: n_fixed,
        x,
    };
    setting.check(trials)?;
    let evals = setting.evaluations(trials, seed)?;
    let fx = f.eval(x);
    let empirical = mean(&evals) - fx;
    let standard_error = (sample_variance(&evals) / trials as f64).sqrt();

    let proxy = residual_proxy(f, n_fixed)?;
    let q = &proxy.truncation;
    let grid = make_grid(num_intervals)?;
    let s = sampling_vector(x, n_fixed, num_intervals)?;
    let mut s_dot_r = 0.0;
    for (&xi, &si) in grid.points().iter().zip(&s) {
        s_dot_r += si * (f.eval(xi) - q.evaluate(xi)?);
    }
    let predicted = s_dot_r - (fx - q.evaluate(x)?);
    let n1 = n_fixed as f64 + 1.0;
    let bound = (2.0 * n1.sqrt() * (1.0 + 1.0 / num_intervals as f64).sqrt() + 1.0) * proxy.value;
    Ok(BiasEstimate {
        empirical,
        standard_error,
        predicted,
        bound,
        trials,
    })
}
