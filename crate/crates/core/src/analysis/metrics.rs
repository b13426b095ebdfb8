use serde::{Deserialize, Serialize};

use crate::cheb::{coeffs_to_values, make_grid, values_to_coeffs, ChebSeries};
use crate::error::Result;
use crate::target::TargetFunction;

/// Discrepancy between a polynomial and a target on a dense grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    /// Estimate of `‖f − p‖∞`; a lower bound on the true supremum.
    pub inf_norm_error: f64,
    /// Number of evaluation points.
    pub grid_size: usize,
    /// Root-mean-square error over the same points.
    pub l2_error: f64,
}

fn dense_intervals(degree: usize) -> usize {
    (10 * (degree + 1)).max(1000)
}

/// `max |f(x) − p(x)|` over the Chebyshev grid with
/// `max(10·(deg+1), 1000)` intervals.
pub fn inf_norm_error(p: &ChebSeries, f: &TargetFunction) -> Result<ErrorReport> {
    let m = dense_intervals(p.degree());
    let grid = make_grid(m)?;
    let pv = coeffs_to_values(p, m)?;
    let (mut worst, mut sum_sq) = (0.0f64, 0.0);
    for (&x, &px) in grid.points().iter().zip(&pv) {
        let e = (f.eval(x) - px).abs();
        worst = worst.max(e);
        sum_sq += e * e;
    }
    Ok(ErrorReport {
        inf_norm_error: worst,
        grid_size: grid.len(),
        l2_error: (sum_sq / grid.len() as f64).sqrt(),
    })
}

/// Near-best stand-in for the minimax residual `‖f − p*_n‖∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualProxy {
    /// `‖f − q_n‖∞` on a dense grid, `q_n` the degree-`n` truncation of a
    /// noiseless high-degree interpolant of `f`.
    pub value: f64,
    /// Whether the high-degree interpolant resolved `f` to 1e-15.
    pub converged: bool,
    /// Degree of the high-degree interpolant.
    pub resolution: usize,
    /// `q_n` itself.
    pub truncation: ChebSeries,
}

const PROXY_START: usize = 1 << 10;
const PROXY_CAP: usize = 1 << 20;

/// Chebyshev truncation is within a factor `(2/π)log(n+1) + 2` of best,
/// so `value` brackets the minimax error up to that factor.
///
/// The resolving interpolant starts at degree 1024 and doubles until its
/// last ten coefficients fall below `1e-15` relative to the largest, capped
/// at `2^20`.
pub fn residual_proxy(f: &TargetFunction, degree: usize) -> Result<ResidualProxy> {
    let mut m = PROXY_START;
    let (coeffs, converged) = loop {
        let grid = make_grid(m)?;
        let coeffs = values_to_coeffs(&grid.sample(|x| f.eval(x)))?;
        let c = coeffs.coeffs();
        let max = c.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let resolved = c[c.len() - 10..].iter().all(|v| v.abs() <= 1e-15 * max);
        if resolved || m >= PROXY_CAP {
            break (coeffs, resolved);
        }
        m *= 2;
    };
    let truncation = coeffs.truncate(degree.min(m))?;
    let value = inf_norm_error(&truncation, f)?.inf_norm_error;
    Ok(ResidualProxy {
        value,
        converged,
        resolution: m,
        truncation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_polynomial_against_runge() {
        let r = inf_norm_error(
            &ChebSeries::unit(0).truncate(0).unwrap(),
            &TargetFunction::Runge,
        )
        .unwrap();
        // p = T_0 = 1 equals f at x = 0; the largest gap is at the ends
        assert!((r.inf_norm_error - (1.0 - 1.0 / 26.0)).abs() < 1e-15);
        assert_eq!(r.grid_size, 1001);

        let zero = ChebSeries::new(vec![0.0]).unwrap();
        let r = inf_norm_error(&zero, &TargetFunction::Runge).unwrap();
        assert_eq!(r.inf_norm_error, 1.0);
    }

    #[test]
    fn polynomial_proxy_vanishes() {
        let cubic = TargetFunction::custom("cubic", |x| 0.5 - x + 2.0 * x * x * x);
        for n in [3, 4, 10] {
            let proxy = residual_proxy(&cubic, n).unwrap();
            assert!(proxy.converged);
            assert!(proxy.value < 1e-13, "n = {n}: {}", proxy.value);
        }
        assert!(residual_proxy(&cubic, 2).unwrap().value > 0.1);
    }

    #[test]
    fn abs_does_not_resolve() {
        // |x| has coefficients ~ j⁻², far above 1e-15 at degree 2^20
        let proxy = residual_proxy(&TargetFunction::Abs, 8).unwrap();
        assert!(!proxy.converged);
        assert_eq!(proxy.resolution, PROXY_CAP);
    }
}
