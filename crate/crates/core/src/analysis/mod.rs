//! Error metrics, Monte-Carlo estimators and evaluators for the variance
//! and concentration bounds satisfied by truncated Chebyshev interpolants.

mod bounds;
pub mod experiment;
mod metrics;
pub mod stats;
mod variance;

pub use bounds::{
    lebesgue_bound, pointwise_bound_subexponential, pointwise_bound_subgaussian,
    uniform_bound_subexponential, uniform_bound_subgaussian, BoundInputs, ResidualScaling,
    TailBound,
};
pub use metrics::{inf_norm_error, residual_proxy, ErrorReport, ResidualProxy};
pub use variance::{
    empirical_bias, empirical_variance, variance_bound, BiasEstimate, VarianceEstimate,
};
