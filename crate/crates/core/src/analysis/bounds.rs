//! Tail bounds for `|p_n(x) − f(x)|` and `‖p_n − f‖∞` at a fixed degree.
//!
//! Each evaluator returns both sides of an inequality
//! `P[error > threshold] ≤ probability`. The residual `‖r_n‖∞ = ‖f − p*_n‖∞`
//! enters through `BoundInputs::r_inf`; in practice it comes from
//! [`residual_proxy`](super::residual_proxy).

use std::f64::consts::PI;

use crate::cheb::make_grid;
use crate::error::{invalid, Result};
use crate::ls_oracle::sampling_vector;
use crate::noise::TailClass;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    /// Degree `n` of the truncated interpolant.
    pub degree: usize,
    /// `N`, so that `N + 1` samples were taken.
    pub num_intervals: usize,
    /// Subgaussian `σ` or subexponential `(ν, α)` of the noise.
    pub tail: TailClass,
    /// `‖r_n‖∞` or a proxy for it.
    pub r_inf: f64,
    /// Deviation parameter.
    pub t: f64,
}

/// One inequality `P[error > threshold] ≤ probability`.
///
/// `probability` is the raw right-hand side and may exceed 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub threshold: f64,
    pub probability: f64,
    /// Crossover between the quadratic and linear exponent regimes of the
    /// subexponential bounds.
    pub t_star: Option<f64>,
}

/// How the residual enters the uniform bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResidualScaling {
    /// The proven `√8·‖r_n‖∞` term.
    #[default]
    Rigorous,
    /// `√8·‖r_n‖∞ / √N`: an average-case estimate that treats `s(x)ᵀr_n` as
    /// if `r_n` had independent entries. Not a bound.
    SqrtNReduced,
}

/// `(2/π)·log(n+1) + 1`, an upper bound on the Lebesgue constant of
/// interpolation at `n + 1` Chebyshev points.
pub fn lebesgue_bound(degree: usize) -> f64 {
    2.0 / PI * (degree as f64 + 1.0).ln() + 1.0
}

impl BoundInputs {
    fn check(&self) -> Result<()> {
        if self.degree >= self.num_intervals {
            return invalid(format!(
                "bounds need n < N, got n = {}, N = {}",
                self.degree, self.num_intervals
            ));
        }
        if self.t.is_nan() || self.t < 0.0 || self.r_inf.is_nan() || self.r_inf < 0.0 {
            return invalid("t and r_inf must be nonnegative");
        }
        Ok(())
    }

    fn subgaussian_sigma(&self) -> Result<f64> {
        self.check()?;
        match self.tail {
            TailClass::SubGaussian { sigma } if sigma >= 0.0 => Ok(sigma),
            other => invalid(format!("subgaussian bound applied to {other:?}")),
        }
    }

    fn subexponential_params(&self) -> Result<(f64, f64)> {
        self.check()?;
        match self.tail {
            TailClass::SubExponential { nu, alpha } if nu >= 0.0 && alpha > 0.0 => Ok((nu, alpha)),
            other => invalid(format!("subexponential bound applied to {other:?}")),
        }
    }

    fn n1(&self) -> f64 {
        self.degree as f64 + 1.0
    }

    fn nf(&self) -> f64 {
        self.num_intervals as f64
    }

    fn pointwise_residual(&self) -> f64 {
        ((8.0 * self.n1()).sqrt() + 1.0) * self.r_inf
    }

    fn uniform_threshold(&self, noise_scale: f64, scaling: ResidualScaling) -> f64 {
        let residual = match scaling {
            ResidualScaling::Rigorous => 8f64.sqrt() * self.r_inf,
            ResidualScaling::SqrtNReduced => 8f64.sqrt() * self.r_inf / self.nf().sqrt(),
        };
        lebesgue_bound(self.degree)
            * self.n1().sqrt()
            * (2.0 * self.t * noise_scale / self.nf().sqrt() + residual)
            + self.r_inf
    }
}

/// `‖s(x)‖₂² / (2 max_i |s_i(x)|) · √(N/(n+1))`.
fn crossover(x: f64, degree: usize, num_intervals: usize) -> Result<f64> {
    let s = sampling_vector(x, degree, num_intervals)?;
    let norm_sq: f64 = s.iter().map(|v| v * v).sum();
    let max = s.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(norm_sq / (2.0 * max) * (num_intervals as f64 / (degree as f64 + 1.0)).sqrt())
}

fn subexponential_probability(nu: f64, alpha: f64, t: f64, t_star: f64) -> f64 {
    let rate = nu * nu / (2.0 * alpha * alpha);
    if t <= t_star {
        2.0 * (-rate * t * t).exp()
    } else {
        2.0 * (-rate * t).exp()
    }
}

/// Fixed-`x` bound for subgaussian noise:
/// `P[|p_n(x) − f(x)| > 2tσ√((n+1)/N) + (√(8(n+1)) + 1)‖r_n‖∞] ≤ 2e^{−t²/2}`.
pub fn pointwise_bound_subgaussian(inputs: &BoundInputs) -> Result<TailBound> {
    let sigma = inputs.subgaussian_sigma()?;
    let t = inputs.t;
    Ok(TailBound {
        threshold: 2.0 * t * sigma * (inputs.n1() / inputs.nf()).sqrt()
            + inputs.pointwise_residual(),
        probability: 2.0 * (-t * t / 2.0).exp(),
        t_star: None,
    })
}

/// Fixed-`x` bound for subexponential noise with parameters `(ν, α)`.
///
/// The threshold is `2t(ν²/α)√((n+1)/N) + (√(8(n+1)) + 1)‖r_n‖∞`; the
/// probability is `2e^{−ν²t²/2α²}` up to `t_*` and `2e^{−ν²t/2α²}` beyond.
pub fn pointwise_bound_subexponential(inputs: &BoundInputs, x: f64) -> Result<TailBound> {
    let (nu, alpha) = inputs.subexponential_params()?;
    let t_star = crossover(x, inputs.degree, inputs.num_intervals)?;
    let t = inputs.t;
    Ok(TailBound {
        threshold: 2.0 * t * nu * nu / alpha * (inputs.n1() / inputs.nf()).sqrt()
            + inputs.pointwise_residual(),
        probability: subexponential_probability(nu, alpha, t, t_star),
        t_star: Some(t_star),
    })
}

/// Uniform bound for subgaussian noise:
/// `P[‖p_n − f‖∞ > Λ_n√(n+1)(2tσ/√N + √8‖r_n‖∞) + ‖r_n‖∞] ≤ 2(n+1)e^{−t²/2}`
/// with `Λ_n = (2/π)log(n+1) + 1`.
pub fn uniform_bound_subgaussian(
    inputs: &BoundInputs,
    scaling: ResidualScaling,
) -> Result<TailBound> {
    let sigma = inputs.subgaussian_sigma()?;
    let t = inputs.t;
    Ok(TailBound {
        threshold: inputs.uniform_threshold(sigma, scaling),
        probability: 2.0 * inputs.n1() * (-t * t / 2.0).exp(),
        t_star: None,
    })
}

/// Uniform bound for subexponential noise: the subgaussian form with `σ`
/// replaced by `ν²/α` and the two-regime probability, times `n + 1`.
///
/// The union bound runs over the `n + 1` Chebyshev points of degree `n`, so
/// `t_*` is the smallest crossover among them (the single point `0` when
/// `n = 0`).
pub fn uniform_bound_subexponential(
    inputs: &BoundInputs,
    scaling: ResidualScaling,
) -> Result<TailBound> {
    let (nu, alpha) = inputs.subexponential_params()?;
    let points = if inputs.degree == 0 {
        vec![0.0]
    } else {
        make_grid(inputs.degree)?.points().to_vec()
    };
    let mut t_star = f64::INFINITY;
    for x in points {
        t_star = t_star.min(crossover(x, inputs.degree, inputs.num_intervals)?);
    }
    let t = inputs.t;
    Ok(TailBound {
        threshold: inputs.uniform_threshold(nu * nu / alpha, scaling),
        probability: inputs.n1() * subexponential_probability(nu, alpha, t, t_star),
        t_star: Some(t_star),
    })
}
