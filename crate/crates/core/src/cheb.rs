//! Chebyshev grids, the DCT-I value/coefficient transforms and Clenshaw
//! evaluation.
//!
//! Everything here works on `[-1, 1]` with the extrema grid
//! `x_i = cos(iπ/N)`, `i = 0..=N`, stored in descending order.

use std::cell::RefCell;
use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// The `N + 1` Chebyshev extrema points `cos(iπ/N)`, from `1` down to `-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebGrid {
    num_intervals: usize,
    points: Vec<f64>,
}

impl ChebGrid {
    /// Builds the grid for `num_intervals = N ≥ 1`.
    ///
    /// The endpoints are exactly `±1`, the midpoint (even `N`) is exactly
    /// `0`, and the lower half is the mirror image of the upper half, so
    /// `points[i] == -points[N - i]` holds bit for bit.
    pub fn new(num_intervals: usize) -> Result<Self> {
        if num_intervals == 0 {
            return invalid("a Chebyshev grid needs N >= 1 intervals");
        }
        let n = num_intervals;
        let mut points = vec![0.0; n + 1];
        // cos(iπ/N) = sin((N - 2i)π/(2N)) is accurate near the endpoints too.
        for i in 0..=n / 2 {
            let x = (PI * (n as f64 - 2.0 * i as f64) / (2.0 * n as f64)).sin();
            points[i] = x;
            points[n - i] = -x;
        }
        points[0] = 1.0;
        points[n] = -1.0;
        if n.is_multiple_of(2) {
            points[n / 2] = 0.0;
        }
        Ok(Self {
            num_intervals: n,
            points,
        })
    }

    /// `N`, the number of intervals (one less than the number of points).
    pub fn num_intervals(&self) -> usize {
        self.num_intervals
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Evaluates `f` at every grid point.
    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.points.iter().map(|&x| f(x)).collect()
    }
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Shorthand for [`ChebGrid::new`].
pub fn make_grid(num_intervals: usize) -> Result<ChebGrid> {
    ChebGrid::new(num_intervals)
}

/// A finite Chebyshev expansion `p(x) = Σ_{j=0}^{n} c_j T_j(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ChebSeries {
    coeffs: Vec<f64>,
}

impl TryFrom<Vec<f64>> for ChebSeries {
    type Error = crate::Error;

    fn try_from(coeffs: Vec<f64>) -> Result<Self> {
        ChebSeries::new(coeffs)
    }
}

impl From<ChebSeries> for Vec<f64> {
    fn from(series: ChebSeries) -> Self {
        series.coeffs
    }
}

impl ChebSeries {
    /// Wraps a coefficient vector; it must hold at least one entry.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return invalid("a Chebyshev series needs at least one coefficient");
        }
        Ok(Self { coeffs })
    }

    /// The polynomial `T_k`.
    pub fn unit(k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = 1.0;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `false` if any coefficient is NaN or infinite.
    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Evaluates the series at `x` with the Clenshaw recurrence.
    ///
    /// Points outside `[-1, 1]` are accepted and extrapolate; the
    /// Chebyshev polynomials grow quickly there.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return invalid(format!("cannot evaluate at non-finite x = {x}"));
        }
        Ok(clenshaw(&self.coeffs, x))
    }

    /// Element-wise [`evaluate`](Self::evaluate).
    pub fn evaluate_many(&self, xs: &[f64]) -> Result<Vec<f64>> {
        xs.iter().map(|&x| self.evaluate(x)).collect()
    }

    /// Keeps `c_0..=c_n` without refitting.
    pub fn truncate(&self, n: usize) -> Result<ChebSeries> {
        if n > self.degree() {
            return invalid(format!(
                "cannot truncate a degree-{} series to degree {n}",
                self.degree()
            ));
        }
        Ok(ChebSeries {
            coeffs: self.coeffs[..=n].to_vec(),
        })
    }
}

fn clenshaw(coeffs: &[f64], x: f64) -> f64 {
    let two_x = 2.0 * x;
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &c in coeffs[1..].iter().rev() {
        let b0 = two_x * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    x * b1 - b2 + coeffs[0]
}

/// Free-function form of [`ChebSeries::evaluate`].
pub fn evaluate(series: &ChebSeries, x: f64) -> Result<f64> {
    series.evaluate(x)
}

/// Free-function form of [`ChebSeries::evaluate_many`].
pub fn evaluate_many(series: &ChebSeries, xs: &[f64]) -> Result<Vec<f64>> {
    series.evaluate_many(xs)
}

/// Free-function form of [`ChebSeries::truncate`].
pub fn truncate(series: &ChebSeries, n: usize) -> Result<ChebSeries> {
    series.truncate(n)
}

/// Returns `Σ″_{i=0}^{N} v_i cos(ijπ/N)` for `j = 0..=N`, where `Σ″` halves
/// the first and last terms.
///
/// Computed from one FFT of the length-`2N` even extension of `v`.
fn dct1_double_prime(v: &[f64]) -> Vec<f64> {
    let n = v.len() - 1;
    let len = 2 * n;
    let mut buf: Vec<Complex<f64>> = Vec::with_capacity(len);
    buf.extend(v.iter().map(|&re| Complex::new(re, 0.0)));
    buf.extend(v[1..n].iter().rev().map(|&re| Complex::new(re, 0.0)));
    let fft = PLANNER.with(|planner| planner.borrow_mut().plan_fft_forward(len));
    fft.process(&mut buf);
    buf[..=n].iter().map(|z| 0.5 * z.re).collect()
}

/// Coefficients of the degree-`N` interpolant through `values[i]` at
/// `cos(iπ/N)`.
///
/// Non-finite samples are not masked: they spread into the coefficients,
/// which [`ChebSeries::is_finite`] reports.
pub fn values_to_coeffs(values: &[f64]) -> Result<ChebSeries> {
    if values.len() < 2 {
        return invalid(format!(
            "interpolation needs at least 2 samples, got {}",
            values.len()
        ));
    }
    let n = values.len() - 1;
    let scale = 2.0 / n as f64;
    let mut coeffs: Vec<f64> = dct1_double_prime(values)
        .into_iter()
        .map(|s| s * scale)
        .collect();
    coeffs[0] *= 0.5;
    coeffs[n] *= 0.5;
    Ok(ChebSeries { coeffs })
}

/// Values of `series` on the `N + 1` point grid; the inverse of
/// [`values_to_coeffs`].
pub fn coeffs_to_values(series: &ChebSeries, num_intervals: usize) -> Result<Vec<f64>> {
    let n = num_intervals;
    if n == 0 {
        return invalid("a Chebyshev grid needs N >= 1 intervals");
    }
    if series.degree() > n {
        return invalid(format!(
            "degree {} exceeds N = {n}; the samples would alias",
            series.degree()
        ));
    }
    // Σ_j c_j cos(ijπ/N) = Σ″_j b_j cos(ijπ/N) with b_0 = 2c_0, b_N = 2c_N.
    let mut padded = vec![0.0; n + 1];
    padded[..series.coeffs.len()].copy_from_slice(&series.coeffs);
    padded[0] *= 2.0;
    padded[n] *= 2.0;
    Ok(dct1_double_prime(&padded))
}
