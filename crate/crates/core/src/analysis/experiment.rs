//! Repeated-trial runs behind the convergence and concentration studies.
//!
//! Every trial draws from its own substream of the base seed, so trials
//! may run in any order or in parallel and still reproduce.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{uniform_bound_subgaussian, BoundInputs, ResidualScaling};
use super::metrics::{inf_norm_error, residual_proxy};
use super::stats::{iqr, mean, median};
use crate::error::{invalid, Result};
use crate::noise::{substream_seed, NoiseModel, TailClass};
use crate::pipeline::fit_function;
use crate::target::TargetFunction;

/// One fit in an error-versus-`N` sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub num_intervals: usize,
    pub trial: usize,
    pub seed: u64,
    pub selected_degree: usize,
    pub inf_error: f64,
    pub l2_error: f64,
}

/// Seed of `trial` at grid size `N = 2^exponent`.
pub fn convergence_seed(base_seed: u64, exponent: u32, trial: usize) -> u64 {
    substream_seed(substream_seed(base_seed, exponent as u64), trial as u64)
}

/// Fits `trials` independent samples at each `N = 2^k`, `k` in
/// `exponents`, handing each completed `N` to `sink` in trial order.
pub fn convergence_sweep<F>(
    f: &TargetFunction,
    noise: &NoiseModel,
    exponents: std::ops::RangeInclusive<u32>,
    trials: usize,
    base_seed: u64,
    mut sink: F,
) -> Result<()>
where
    F: FnMut(&[ConvergenceRecord]) -> Result<()>,
{
    if *exponents.start() < 1 || trials == 0 {
        return invalid("convergence sweep needs exponents >= 1 and at least one trial");
    }
    for k in exponents {
        let num_intervals = 1usize << k;
        let rows = (0..trials)
            .into_par_iter()
            .map(|trial| {
                let seed = convergence_seed(base_seed, k, trial);
                let fit = fit_function(f, noise, num_intervals, seed, None)?;
                let err = inf_norm_error(&fit.truncated, f)?;
                Ok(ConvergenceRecord {
                    num_intervals,
                    trial,
                    seed,
                    selected_degree: fit.selected_degree,
                    inf_error: err.inf_norm_error,
                    l2_error: err.l2_error,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        sink(&rows)?;
    }
    Ok(())
}

/// One fit in a repeated-trial concentration study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramRecord {
    pub trial: usize,
    pub seed: u64,
    pub selected_degree: usize,
    pub inf_error: f64,
}

/// `trials` independent fits at a fixed `N`, in trial order.
pub fn histogram_trials(
    f: &TargetFunction,
    noise: &NoiseModel,
    num_intervals: usize,
    trials: usize,
    base_seed: u64,
) -> Result<Vec<HistogramRecord>> {
    if trials == 0 {
        return invalid("need at least one trial");
    }
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let seed = substream_seed(base_seed, trial as u64);
            let fit = fit_function(f, noise, num_intervals, seed, None)?;
            Ok(HistogramRecord {
                trial,
                seed,
                selected_degree: fit.selected_degree,
                inf_error: inf_norm_error(&fit.truncated, f)?.inf_norm_error,
            })
        })
        .collect()
}

/// Distribution summary of a concentration study plus the uniform-bound
/// estimate at the rounded mean degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramSummary {
    pub trials: usize,
    pub num_intervals: usize,
    pub median_error: f64,
    pub error_iqr: f64,
    pub mean_error: f64,
    pub min_error: f64,
    pub max_error: f64,
    pub median_degree: f64,
    pub degree_iqr: f64,
    pub mean_degree: f64,
    pub rounded_mean_degree: usize,
    /// Residual proxy `‖f − q_n‖∞` at the rounded mean degree.
    pub residual_proxy: f64,
    /// Uniform subgaussian threshold at `t = 1` with the residual term
    /// divided by `√N`; absent for noise without a subgaussian parameter.
    pub dashed_line_estimate: Option<f64>,
    /// The same threshold with the proven residual term.
    pub rigorous_threshold: Option<f64>,
}

impl HistogramSummary {
    pub fn new(
        records: &[HistogramRecord],
        f: &TargetFunction,
        noise: &NoiseModel,
        num_intervals: usize,
    ) -> Result<Self> {
        if records.is_empty() {
            return invalid("cannot summarise zero trials");
        }
        let errors: Vec<f64> = records.iter().map(|r| r.inf_error).collect();
        let degrees: Vec<f64> = records.iter().map(|r| r.selected_degree as f64).collect();
        let mean_degree = mean(&degrees);
        let rounded_mean_degree = mean_degree.round() as usize;
        let proxy = residual_proxy(f, rounded_mean_degree)?.value;
        let (dashed, rigorous) = match noise.tail_class() {
            tail @ TailClass::SubGaussian { .. } => {
                let inputs = BoundInputs {
                    degree: rounded_mean_degree,
                    num_intervals,
                    tail,
                    r_inf: proxy,
                    t: 1.0,
                };
                (
                    Some(
                        uniform_bound_subgaussian(&inputs, ResidualScaling::SqrtNReduced)?
                            .threshold,
                    ),
                    Some(uniform_bound_subgaussian(&inputs, ResidualScaling::Rigorous)?.threshold),
                )
            }
            _ => (None, None),
        };
        Ok(Self {
            trials: records.len(),
            num_intervals,
            median_error: median(&errors),
            error_iqr: iqr(&errors),
            mean_error: mean(&errors),
            min_error: errors.iter().copied().fold(f64::INFINITY, f64::min),
            max_error: errors.iter().copied().fold(0.0, f64::max),
            median_degree: median(&degrees),
            degree_iqr: iqr(&degrees),
            mean_degree,
            rounded_mean_degree,
            residual_proxy: proxy,
            dashed_line_estimate: dashed,
            rigorous_threshold: rigorous,
        })
    }
}
