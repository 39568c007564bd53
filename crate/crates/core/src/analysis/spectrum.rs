//! Singular values of the causal target matrix `A[t, s] = rho(t - s)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::memory::MemoryKernel;

/// Relative threshold for the effective rank.
pub const DEFAULT_TAU: f64 = 1e-3;

pub const MAX_SPECTRUM_SIZE: usize = 512;

const MAX_SWEEPS: usize = 80;
const ORTHOGONALITY_TOL: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    /// Sorted descending.
    pub singular_values: Vec<f64>,
    /// Number of singular values strictly above `tau * sigma_1`.
    pub effective_rank: usize,
    pub tau: f64,
}

/// Lower-triangular Toeplitz matrix of the first `size` kernel weights.
pub fn causal_matrix(kernel: &MemoryKernel, size: usize) -> Result<Matrix> {
    let rho = kernel.values();
    if size == 0 || size > rho.len() {
        return Err(Error::Domain(format!("matrix size {size} outside [1, {}]", rho.len())));
    }
    let mut a = Matrix::zeros(size, size);
    for t in 0..size {
        for s in 0..=t {
            a[(t, s)] = rho[t - s];
        }
    }
    Ok(a)
}

pub fn singular_values(a: &Matrix) -> Result<SpectrumResult> {
    singular_values_with_tau(a, DEFAULT_TAU)
}

/// One-sided Jacobi SVD: rotate column pairs until all columns are mutually
/// orthogonal; the column norms are then the singular values.
pub fn singular_values_with_tau(a: &Matrix, tau: f64) -> Result<SpectrumResult> {
    let (rows, cols) = a.shape();
    if rows != cols {
        return Err(Error::Domain(format!("expected a square matrix, got {rows}x{cols}")));
    }
    if cols > MAX_SPECTRUM_SIZE {
        return Err(Error::Domain(format!("matrix size {cols} exceeds {MAX_SPECTRUM_SIZE}")));
    }
    if a.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    if !(tau >= 0.0) {
        return Err(Error::Domain(format!("tau {tau} must be nonnegative")));
    }

    let mut columns: Vec<Vec<f64>> = (0..cols).map(|j| (0..rows).map(|i| a[(i, j)]).collect()).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..cols {
            for j in i + 1..cols {
                let (left, right) = columns.split_at_mut(j);
                if rotate_pair(&mut left[i], &mut right[0]) {
                    rotated = true;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut singular_values: Vec<f64> = columns.iter().map(|c| norm(c)).collect();
    singular_values.sort_by(|x, y| y.total_cmp(x));
    let threshold = tau * singular_values.first().copied().unwrap_or(0.0);
    let effective_rank = singular_values.iter().filter(|&&s| s > threshold).count();
    Ok(SpectrumResult { singular_values, effective_rank, tau })
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Orthogonalizes two columns in place. Returns false if they already were.
fn rotate_pair(p: &mut [f64], q: &mut [f64]) -> bool {
    let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
    for (x, y) in p.iter().zip(q.iter()) {
        alpha += x * x;
        beta += y * y;
        gamma += x * y;
    }
    if gamma == 0.0 || gamma.abs() <= ORTHOGONALITY_TOL * (alpha * beta).sqrt() {
        return false;
    }
    let zeta = (beta - alpha) / (2.0 * gamma);
    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = c * t;
    for (x, y) in p.iter_mut().zip(q.iter_mut()) {
        let (xv, yv) = (*x, *y);
        *x = c * xv - s * yv;
        *y = s * xv + c * yv;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::memory::{materialize, MemoryKind, MemorySpec};

    fn kernel(kind: MemoryKind, alpha: f64, t_max: usize) -> MemoryKernel {
        materialize(MemorySpec::new(kind, alpha, t_max).unwrap()).unwrap()
    }

    #[test]
    fn delta_matrices() {
        let a = causal_matrix(&kernel(MemoryKind::Delta, 0.0, 8), 4).unwrap();
        assert_eq!(a, Matrix::identity(4));

        // offset floor(0.25 * 8 / 2) = 1
        let a = causal_matrix(&kernel(MemoryKind::Delta, 0.25, 8), 4).unwrap();
        for t in 0..4 {
            for s in 0..4 {
                assert_eq!(a[(t, s)], if t == s + 1 { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn toeplitz_structure() {
        let k = kernel(MemoryKind::Exp, 0.5, 16);
        let a = causal_matrix(&k, 10).unwrap();
        for t in 0..10 {
            for s in 0..10 {
                let expected = if s <= t { k.values()[t - s] } else { 0.0 };
                assert_eq!(a[(t, s)], expected);
            }
        }
        assert!(causal_matrix(&k, 18).is_err());
        assert!(causal_matrix(&k, 0).is_err());
    }

    #[test]
    fn identity_spectrum() {
        let r = singular_values(&Matrix::identity(4)).unwrap();
        assert_eq!(r.singular_values, vec![1.0; 4]);
        assert_eq!(r.effective_rank, 4);
    }

    #[test]
    fn shifted_identity_spectrum() {
        // T = 8, alpha = 0.5: offset 2
        let a = causal_matrix(&kernel(MemoryKind::Delta, 0.5, 8), 8).unwrap();
        let r = singular_values(&a).unwrap();
        assert_eq!(r.singular_values, vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0]);
        assert_eq!(r.effective_rank, 6);
    }

    #[test]
    fn two_by_two() {
        // [[3, 0], [4, 5]]: sigma^2 are roots of x^2 - 50x + 225
        let a = Matrix::from_rows(vec![vec![3.0, 0.0], vec![4.0, 5.0]]).unwrap();
        let r = singular_values(&a).unwrap();
        let big = (25.0 + 400.0_f64.sqrt()).sqrt();
        let small = (25.0 - 400.0_f64.sqrt()).sqrt();
        assert!((r.singular_values[0] - big).abs() < 1e-14);
        assert!((r.singular_values[1] - small).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        let mut a = Matrix::identity(3);
        a[(1, 2)] = f64::NAN;
        assert!(singular_values(&a).is_err());
        assert!(singular_values(&Matrix::zeros(2, 3)).is_err());
        assert!(singular_values(&Matrix::identity(513)).is_err());
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let r = singular_values(&Matrix::zeros(3, 3)).unwrap();
        assert_eq!(r.effective_rank, 0);
    }
}
