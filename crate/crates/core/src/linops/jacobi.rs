//! Cyclic Jacobi eigensolver for dense symmetric matrices.
//!
//! Each rotation zeroes one off-diagonal pair `(p, q)`; sweeps visit every
//! pair in row order. Iteration stops once the off-diagonal Frobenius norm
//! drops below `1e-12` of the matrix Frobenius norm.

use crate::error::{CdError, Result};
use crate::linops::OperatorMatrix;
use crate::scalar::{tolerance, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair<T> {
    pub value: T,
    /// Unit eigenvector.
    pub vector: Vec<T>,
}

/// Eigenpairs in ascending order of value; vectors are orthonormal.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPairList<T> {
    pub pairs: Vec<EigenPair<T>>,
}

impl<T: Scalar> EigenPairList<T> {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn values(&self) -> Vec<T> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    /// Sets values with `|λ| ≤ tol` to exactly zero.
    pub fn clamp_near_zero(&mut self, tol: T) {
        for p in &mut self.pairs {
            if p.value.abs() <= tol {
                p.value = T::zero();
            }
        }
    }

    /// `Σ λ v vᵀ`.
    pub fn reconstruct(&self) -> OperatorMatrix<T> {
        let d = self.pairs.first().map_or(0, |p| p.vector.len());
        let mut rows = vec![vec![T::zero(); d]; d];
        for p in &self.pairs {
            for (r, row) in rows.iter_mut().enumerate() {
                let s = p.value * p.vector[r];
                for (x, &v) in row.iter_mut().zip(&p.vector) {
                    *x += s * v;
                }
            }
        }
        let mut m = OperatorMatrix::zeros(d);
        m.entries = rows.into_iter().flatten().collect();
        m
    }
}

fn off_diagonal_norm<T: Scalar>(a: &[T], n: usize) -> T {
    let mut s = T::zero();
    for r in 0..n {
        for c in (r + 1)..n {
            s += a[r * n + c] * a[r * n + c];
        }
    }
    (s + s).sqrt()
}

/// Full eigendecomposition of a symmetric matrix.
pub fn symmetric_eigen<T: Scalar>(matrix: &OperatorMatrix<T>) -> Result<EigenPairList<T>> {
    if !matrix.is_symmetric() {
        return Err(CdError::NotSymmetric {
            asymmetry: matrix.asymmetry().as_f64(),
        });
    }
    let n = matrix.dim();
    let mut a = matrix.entries().to_vec();
    let mut v = vec![T::zero(); n * n];
    for k in 0..n {
        v[k * n + k] = T::one();
    }

    let total = matrix.frobenius();
    let threshold = T::tol(tolerance::JACOBI_OFF_DIAGONAL) * total;
    let mut converged = false;
    for _ in 0..tolerance::JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (apq + apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                // A <- A J
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                // A <- Jᵀ A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = T::zero();
                a[q * n + p] = T::zero();
                // V <- V J
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a, n) > threshold {
        return Err(CdError::NoConvergence {
            sweeps: tolerance::JACOBI_MAX_SWEEPS,
        });
    }

    let mut pairs: Vec<EigenPair<T>> = (0..n)
        .map(|k| {
            let mut vector: Vec<T> = (0..n).map(|r| v[r * n + k]).collect();
            let norm = vector.iter().map(|&x| x * x).sum::<T>().sqrt();
            for x in &mut vector {
                *x /= norm;
            }
            EigenPair {
                value: a[k * n + k],
                vector,
            }
        })
        .collect();
    pairs.sort_by(|x, y| x.value.partial_cmp(&y.value).expect("finite eigenvalues"));
    Ok(EigenPairList { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_unit_eigenvalues() {
        let eig = symmetric_eigen(&OperatorMatrix::<f64>::identity(8)).unwrap();
        assert_eq!(eig.values(), vec![1.0; 8]);
    }

    #[test]
    fn diagonal_values_sorted() {
        let eig = symmetric_eigen(&OperatorMatrix::diagonal(&[2.0, 0.0, 2.0, 1.0])).unwrap();
        assert_eq!(eig.values(), vec![0.0, 1.0, 2.0, 2.0]);
    }

    #[test]
    fn two_by_two() {
        let m = OperatorMatrix::from_rows(&[vec![2.0f64, 1.0], vec![1.0, 2.0]]).unwrap();
        let eig = symmetric_eigen(&m).unwrap();
        assert!((eig.pairs[0].value - 1.0).abs() < 1e-14);
        assert!((eig.pairs[1].value - 3.0).abs() < 1e-14);
        let v = &eig.pairs[1].vector;
        assert!((v[0].abs() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        assert!((v[0] - v[1]).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_symmetric() {
        let m = OperatorMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(symmetric_eigen(&m), Err(CdError::NotSymmetric { .. })));
    }

    #[test]
    fn reconstructs_dense_matrix() {
        let n = 12;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let (i, j) = (r.min(c) as f64, r.max(c) as f64);
                        (i * 0.37 + j * 1.13).sin()
                    })
                    .collect()
            })
            .collect();
        let m = OperatorMatrix::from_rows(&rows).unwrap();
        let eig = symmetric_eigen(&m).unwrap();
        assert!(eig.reconstruct().max_abs_diff(&m) < 1e-12);
        for p in &eig.pairs {
            let av = m.matvec(&p.vector);
            let res: f64 = av
                .iter()
                .zip(&p.vector)
                .map(|(&x, &v)| (x - p.value * v).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-10);
        }
    }

    #[test]
    fn single_precision_converges() {
        let m = OperatorMatrix::<f32>::from_rows(&[
            vec![4.0, 1.0, 0.5],
            vec![1.0, 3.0, 0.25],
            vec![0.5, 0.25, 1.0],
        ])
        .unwrap();
        let eig = symmetric_eigen(&m).unwrap();
        let tr: f32 = eig.values().iter().sum();
        assert!((tr - 8.0).abs() < 1e-5);
    }
}
