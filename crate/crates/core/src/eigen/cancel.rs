//! Solving `a x = b` through the eigendecomposition of `b`.
//!
//! With `b = Σ b_i`, `b_i ∈ Eig_{λ_i}(a)`, every non-zero eigenvalue
//! contributes `x_i = a* b_i / (λ_i ‖a‖²)`. Components of `b` in `Eig_0(a)`
//! cannot be reached since the image of `L_a` is `Eig_0(a)^⊥`; if the
//! resulting residual is too large the system has no solution.

use crate::algebra::CdElement;
use crate::eigen::Spectrum;
use crate::error::{CdError, Result};
use crate::scalar::{tolerance, Scalar};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions<T> {
    pub cluster_tol: T,
    /// Eigenvalues at or below this are treated as zero.
    pub zero_tol: T,
    /// Accept when `‖a x − b‖ ≤ residual_tol · ‖b‖`.
    pub residual_tol: T,
}

impl<T: Scalar> Default for SolveOptions<T> {
    fn default() -> Self {
        Self {
            cluster_tol: T::tol(tolerance::CLUSTER),
            zero_tol: T::tol(tolerance::ZERO_DIVISOR),
            residual_tol: T::tol(tolerance::SOLVE_RESIDUAL),
        }
    }
}

/// Solves `a x = b` with default options.
///
/// When `a` is a zero-divisor the returned `x` is the solution of minimal
/// norm, the one orthogonal to `Eig_0(a)`.
pub fn cancel_solve<T: Scalar>(a: &CdElement<T>, b: &CdElement<T>) -> Result<CdElement<T>> {
    cancel_solve_with(a, b, &SolveOptions::default())
}

pub fn cancel_solve_with<T: Scalar>(
    a: &CdElement<T>,
    b: &CdElement<T>,
    options: &SolveOptions<T>,
) -> Result<CdElement<T>> {
    if a.level() != b.level() {
        return Err(CdError::LevelMismatch {
            left: a.level(),
            right: b.level(),
        });
    }
    let spectrum = super::spectrum(a, options.cluster_tol)?;
    let scale = a.norm_sqr();
    let a_conj = a.conjugate();
    let mut x = CdElement::zero(a.level());
    for cluster in spectrum.clusters() {
        if cluster.value <= options.zero_tol {
            continue;
        }
        let b_i = Spectrum::project(&spectrum, cluster, b);
        x += &(&a_conj * &b_i).scale((cluster.value * scale).recip());
    }
    let b_norm = b.norm();
    let residual = (&(a * &x) - b).norm();
    if residual > options.residual_tol * b_norm {
        let relative = if b_norm > T::zero() {
            residual / b_norm
        } else {
            residual
        };
        return Err(CdError::NoSolution {
            residual: relative.as_f64(),
        });
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;

    type E = CdElement<f64>;

    #[test]
    fn octonion_division() {
        let a = parse_element::<f64>("1 + 2i - jt + 0.5kt", 3).unwrap();
        let x0 = parse_element::<f64>("3 - k + t", 3).unwrap();
        let b = &a * &x0;
        let x = cancel_solve(&a, &b).unwrap();
        assert!(x.max_abs_diff(&x0) < 1e-12);
        let closed_form = (&a.conjugate() * &b).scale(a.norm_sqr().recip());
        assert!(x.max_abs_diff(&closed_form) < 1e-12);
    }

    #[test]
    fn zero_right_hand_side() {
        let a = parse_element::<f64>("(i, j)", 4).unwrap();
        assert!(cancel_solve(&a, &E::zero(4)).unwrap().is_zero());
    }

    #[test]
    fn kernel_direction_has_no_solution() {
        let a = parse_element::<f64>("(i, j)", 4).unwrap();
        // (t, -k·t) spans part of Eig_0((i, j)); k = ij
        let b = parse_element::<f64>("(t, -kt)", 4).unwrap();
        assert!((&a * &b).norm() < 1e-12);
        assert!(matches!(cancel_solve(&a, &b), Err(CdError::NoSolution { .. })));
    }

    #[test]
    fn rejects_zero_and_mismatch() {
        assert_eq!(cancel_solve(&E::zero(3), &E::one(3)), Err(CdError::ZeroElement));
        assert!(cancel_solve(&E::one(3), &E::one(2)).is_err());
    }
}
