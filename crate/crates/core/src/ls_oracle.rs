//! Dense Chebyshev–Vandermonde least-squares solvers.
//!
//! These build the `(N+1) × (n+1)` matrix `T_{ij} = T_j(x_i)` explicitly and
//! are only meant for small grids. They serve as references for the fast
//! transform path: the weighted problem `min ‖D(Tc − y)‖₂` with
//! `D = diag(1/√2, 1, …, 1, 1/√2)` has the same solution as truncating the
//! degree-`N` interpolant, for every `n` at once.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{DMatrix, DVector};

use crate::cheb::{make_grid, ChebSeries};
use crate::error::{invalid, Error, Result};

/// Largest `N` accepted by the dense routines.
pub const MAX_DENSE_INTERVALS: usize = 4096;

/// The Chebyshev–Vandermonde matrix on the `N + 1` point grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebVandermonde {
    num_intervals: usize,
    degree: usize,
    entries: DMatrix<f64>,
}

impl ChebVandermonde {
    pub fn num_intervals(&self) -> usize {
        self.num_intervals
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.entries
    }
}

/// Builds `T_{ij} = T_j(x_i)` column by column with the three-term
/// recurrence.
pub fn build_vandermonde(num_intervals: usize, degree: usize) -> Result<ChebVandermonde> {
    check_dense(num_intervals)?;
    if degree > num_intervals {
        return invalid(format!(
            "degree {degree} exceeds N = {num_intervals} for the Vandermonde matrix"
        ));
    }
    let grid = make_grid(num_intervals)?;
    let x = DVector::from_column_slice(grid.points());
    let rows = num_intervals + 1;
    let mut entries = DMatrix::zeros(rows, degree + 1);
    entries.column_mut(0).fill(1.0);
    if degree >= 1 {
        entries.set_column(1, &x);
    }
    for j in 2..=degree {
        let next = 2.0 * x.component_mul(&entries.column(j - 1)) - entries.column(j - 2);
        entries.set_column(j, &next);
    }
    Ok(ChebVandermonde {
        num_intervals,
        degree,
        entries,
    })
}

/// The diagonal weight `D = diag(1/√2, 1, …, 1, 1/√2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    diag: Vec<f64>,
}

impl WeightMatrix {
    pub fn new(num_intervals: usize) -> Result<Self> {
        if num_intervals == 0 {
            return invalid("the weight matrix needs N >= 1");
        }
        let mut diag = vec![1.0; num_intervals + 1];
        diag[0] = FRAC_1_SQRT_2;
        diag[num_intervals] = FRAC_1_SQRT_2;
        Ok(Self { diag })
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Diagonal of `D²`: `(1/2, 1, …, 1, 1/2)`.
    pub fn squared(&self) -> Vec<f64> {
        self.diag.iter().map(|d| d * d).collect()
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_column_slice(&self.diag))
    }
}

fn check_dense(num_intervals: usize) -> Result<()> {
    if num_intervals == 0 {
        return invalid("dense oracle needs N >= 1");
    }
    if num_intervals > MAX_DENSE_INTERVALS {
        return invalid(format!(
            "dense oracle capped at N = {MAX_DENSE_INTERVALS}, got {num_intervals}"
        ));
    }
    Ok(())
}

fn intervals_of(values: &[f64]) -> Result<usize> {
    if values.len() < 2 {
        return invalid("least squares needs at least 2 samples");
    }
    Ok(values.len() - 1)
}

/// Diagonal of `(TᵀD²T)⁻¹ = (2/N)·diag(1/2, 1, …, 1)`, valid for `n < N`.
fn inverse_normal_diag(num_intervals: usize, degree: usize) -> Vec<f64> {
    let scale = 2.0 / num_intervals as f64;
    let mut g = vec![scale; degree + 1];
    g[0] *= 0.5;
    g
}

/// Solves `min ‖D(Tc − y)‖₂` for a degree `n < N`.
///
/// The normal matrix `TᵀD²T` is exactly diagonal on Chebyshev points, so
/// the solve is a scaling of `TᵀD²y`.
pub fn solve_weighted_ls(values: &[f64], degree: usize) -> Result<Vec<f64>> {
    let num_intervals = intervals_of(values)?;
    if degree >= num_intervals {
        return invalid(format!(
            "weighted least squares needs n < N, got n = {degree}, N = {num_intervals}"
        ));
    }
    let t = build_vandermonde(num_intervals, degree)?;
    let d2 = WeightMatrix::new(num_intervals)?.squared();
    let weighted_y =
        DVector::from_iterator(values.len(), values.iter().zip(&d2).map(|(y, w)| y * w));
    let rhs = t.entries.transpose() * weighted_y;
    let g = inverse_normal_diag(num_intervals, degree);
    Ok(rhs.iter().zip(&g).map(|(r, g)| r * g).collect())
}

/// Solves `min ‖Tc − y‖₂` for `n ≤ N` by Householder QR.
pub fn solve_unweighted_ls(values: &[f64], degree: usize) -> Result<Vec<f64>> {
    let num_intervals = intervals_of(values)?;
    let t = build_vandermonde(num_intervals, degree)?.into_matrix();
    let qr = t.qr();
    let r = qr.r();
    let max_diag = r.diagonal().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if r.diagonal()
        .iter()
        .any(|v| v.abs() <= 1e-12 * max_diag || !v.is_finite())
    {
        return Err(Error::NumericFailure(
            "Vandermonde matrix is numerically rank deficient".into(),
        ));
    }
    let qty = qr.q().transpose() * DVector::from_column_slice(values);
    let c = r
        .solve_upper_triangular(&qty)
        .ok_or_else(|| Error::NumericFailure("triangular solve failed".into()))?;
    Ok(c.iter().copied().collect())
}

/// The vector `s(x) = D²T(TᵀD²T)⁻¹t(x)`, so that the degree-`n` weighted
/// fit evaluated at `x` equals `s(x)ᵀy`.
pub fn sampling_vector(x: f64, degree: usize, num_intervals: usize) -> Result<Vec<f64>> {
    if degree >= num_intervals {
        return invalid(format!(
            "sampling vector needs n < N, got n = {degree}, N = {num_intervals}"
        ));
    }
    if !x.is_finite() {
        return invalid("sampling vector needs a finite x");
    }
    let grid = make_grid(num_intervals)?;
    let d2 = WeightMatrix::new(num_intervals)?.squared();
    let g = inverse_normal_diag(num_intervals, degree);
    // s_i = D²_i Σ_j g_j T_j(x) T_j(x_i)
    let weights: Vec<f64> = chebyshev_values(x, degree)
        .iter()
        .zip(&g)
        .map(|(t, g)| t * g)
        .collect();
    let series = ChebSeries::new(weights)?;
    grid.points()
        .iter()
        .zip(&d2)
        .map(|(&xi, &w)| Ok(w * series.evaluate(xi)?))
        .collect()
}

/// `[T_0(x), …, T_n(x)]` by the three-term recurrence.
pub fn chebyshev_values(x: f64, degree: usize) -> Vec<f64> {
    let mut t = Vec::with_capacity(degree + 1);
    t.push(1.0);
    if degree >= 1 {
        t.push(x);
    }
    for j in 2..=degree {
        t.push(2.0 * x * t[j - 1] - t[j - 2]);
    }
    t
}

/// The weighted projector `B = T_ℓ(T_ℓᵀD²T_ℓ)⁻¹T_ℓᵀD²` with `ℓ < N`, so that
/// `B y` are the fitted values of the degree-`ℓ` weighted fit.
pub fn weighted_projector(num_intervals: usize, degree: usize) -> Result<DMatrix<f64>> {
    if degree >= num_intervals {
        return invalid(format!(
            "projector needs ℓ < N, got ℓ = {degree}, N = {num_intervals}"
        ));
    }
    let t = build_vandermonde(num_intervals, degree)?.into_matrix();
    let g = DMatrix::from_diagonal(&DVector::from_vec(inverse_normal_diag(
        num_intervals,
        degree,
    )));
    let d2 = DMatrix::from_diagonal(&DVector::from_vec(
        WeightMatrix::new(num_intervals)?.squared(),
    ));
    Ok(&t * g * t.transpose() * d2)
}

/// Interpolation coefficients from the direct `O(N²)` cosine sums
/// `c_j = (2/N) Σ″ y_i cos(ijπ/N)`, with `c_0` and `c_N` halved.
pub fn cosine_sum_coeffs(values: &[f64]) -> Result<Vec<f64>> {
    let n = intervals_of(values)?;
    let nf = n as f64;
    let mut c: Vec<f64> = (0..=n)
        .map(|j| {
            let mut acc = 0.0;
            for (i, &y) in values.iter().enumerate() {
                let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                // reduce ij mod 2N so the cosine argument stays in [0, 2π)
                let k = (i * j) % (2 * n);
                acc += w * y * (PI * k as f64 / nf).cos();
            }
            2.0 * acc / nf
        })
        .collect();
    c[0] *= 0.5;
    c[n] *= 0.5;
    Ok(c)
}
