//! Small dense helpers: ranks, singular values, residuals, vectorization.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Dense complex matrix used for every operator in the crate.
pub type Matrix = DMatrix<Complex64>;

/// Relative singular-value cutoff used for rank decisions.
pub const RANK_REL_TOL: f64 = 1e-9;

pub fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `RANK_REL_TOL * σ_max`.
pub fn numerical_rank(m: &DMatrix<Complex64>) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&max) if max > 0.0 => s.iter().filter(|&&x| x > RANK_REL_TOL * max).count(),
        _ => 0,
    }
}

pub fn spectral_norm(m: &DMatrix<Complex64>) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Column-major flattening.
pub fn vectorize(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    m.iter().copied().collect()
}

/// Matrix whose `k`-th column is the `k`-th vector.
///
/// # Panics
///
/// If the vectors have different lengths.
pub fn columns_matrix(columns: &[Vec<Complex64>]) -> DMatrix<Complex64> {
    let rows = columns.first().map_or(0, Vec::len);
    assert!(columns.iter().all(|c| c.len() == rows), "ragged column set");
    DMatrix::from_fn(rows, columns.len(), |r, k| columns[k][r])
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `max |a - b| / max(1, max |a|, max |b|)`: an entrywise discrepancy that is
/// absolute for small matrices and relative for large ones.
pub fn relative_residual(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let scale = 1.0f64.max(max_abs(a)).max(max_abs(b));
    max_abs_diff(a, b) / scale
}

/// Running complex sum with Neumaier compensation, so that the result does
/// not depend on the order of the terms beyond a final rounding in most
/// cases.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn add(&mut self, x: Complex64) {
        neumaier(&mut self.sum.re, &mut self.comp.re, x.re);
        neumaier(&mut self.sum.im, &mut self.comp.im, x.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

impl core::iter::Sum<Complex64> for CompensatedSum {
    fn sum<I: Iterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = Self::default();
        iter.for_each(|x| acc.add(x));
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_projector() {
        let m = DMatrix::from_fn(3, 3, |r, c| {
            Complex64::new(if r == c && r < 2 { 1.0 } else { 0.0 }, 0.0)
        });
        assert_eq!(numerical_rank(&m), 2);
        assert_eq!(numerical_rank(&DMatrix::zeros(3, 3)), 0);
    }

    #[test]
    fn norm_of_scaled_shift() {
        let mut m = DMatrix::<Complex64>::zeros(3, 3);
        m[(1, 0)] = Complex64::new(0.0, 3.0);
        m[(2, 1)] = Complex64::new(1.0, 0.0);
        assert!((spectral_norm(&m) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn compensation_recovers_cancelled_terms() {
        let terms = [1e16, 1.0, -1e16, 1.0].map(|x| Complex64::new(x, -x));
        let naive: Complex64 = terms.iter().sum();
        assert_eq!(naive, Complex64::new(1.0, -1.0));
        let sum: CompensatedSum = terms.into_iter().sum();
        assert_eq!(sum.value(), Complex64::new(2.0, -2.0));
    }

    #[test]
    fn vectorize_is_column_major() {
        let m = DMatrix::from_fn(2, 2, |r, c| Complex64::new((2 * c + r) as f64, 0.0));
        let v = vectorize(&m);
        assert_eq!(v.iter().map(|z| z.re).collect::<Vec<_>>(), [0.0, 1.0, 2.0, 3.0]);
        assert_eq!(columns_matrix(core::slice::from_ref(&v)).nrows(), 4);
    }
}
