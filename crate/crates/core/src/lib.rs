//! Polynomial approximation of noisy functions on `[-1, 1]`.
//!
//! Sample `f` with noise at the `N + 1` Chebyshev points `cos(iπ/N)`,
//! interpolate with one DCT-I in `O(N log N)`, pick a degree `n` by
//! minimising Mallows' Cp over the interpolant's coefficients, and keep the
//! first `n + 1` coefficients. The truncated interpolant is the weighted
//! least-squares fit of degree `n`, so oversampling averages the noise
//! down at the Monte-Carlo rate while the degree adapts to the smoothness
//! of `f`.
//!
//! ```
//! use noisy_cheb::{fit_function, NoiseModel, TargetFunction};
//!
//! let noise = NoiseModel::gaussian(1e-3).unwrap();
//! let result = fit_function(&TargetFunction::Runge, &noise, 1 << 12, 7, None).unwrap();
//! assert!(result.selected_degree > 20 && result.selected_degree < 80);
//! let p = &result.truncated;
//! assert!((p.evaluate(0.0).unwrap() - 1.0).abs() < 1e-3);
//! ```
//!
//! The `book/` directory at the repository root explains the method
//! chapter by chapter; its code listings are compiled as doctests of this
//! crate.

pub mod analysis;
pub mod cheb;
pub mod cp;
mod error;
pub mod ls_oracle;
pub mod noise;
pub mod pipeline;
pub mod target;

pub use cheb::{coeffs_to_values, make_grid, values_to_coeffs, ChebGrid, ChebSeries};
pub use cp::{cp_scan, cp_value, default_nbar, generalized_cp, sigma_hat_sq, CpScan};
pub use error::{Error, Result};
pub use noise::{NoiseKind, NoiseModel, TailClass};
pub use pipeline::{fit, fit_function, sample, FitResult};
pub use target::TargetFunction;

/// README and book chapters, one module each so a failing listing names
/// its source.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/chebyshev.md")]
    mod chebyshev {}
    #[doc = include_str!("../../../book/src/least_squares.md")]
    mod least_squares {}
    #[doc = include_str!("../../../book/src/cp.md")]
    mod cp {}
    #[doc = include_str!("../../../book/src/pipeline.md")]
    mod pipeline {}
    #[doc = include_str!("../../../book/src/concentration.md")]
    mod concentration {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
