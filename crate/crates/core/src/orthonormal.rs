//! Modified Gram-Schmidt on coefficient vectors.

use crate::scalar::Scalar;

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub(crate) fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Removes from `v` its components along the orthonormal `basis`, twice
/// (re-orthogonalization keeps the residual orthogonal to working precision).
pub(crate) fn residual<T: Scalar>(basis: &[Vec<T>], v: &[T]) -> Vec<T> {
    let mut r = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let c = dot(b, &r);
            for (ri, &bi) in r.iter_mut().zip(b) {
                *ri -= c * bi;
            }
        }
    }
    r
}

/// Appends `v` to the orthonormal `basis` if its residual exceeds
/// `rank_tol · max(‖v‖, 1)`. Returns whether it was added.
pub(crate) fn push_if_independent<T: Scalar>(basis: &mut Vec<Vec<T>>, v: &[T], rank_tol: T) -> bool {
    let scale = norm(v).max(T::one());
    let r = residual(basis, v);
    let rn = norm(&r);
    if rn <= rank_tol * scale {
        return false;
    }
    basis.push(r.into_iter().map(|x| x / rn).collect());
    true
}

/// Orthonormal basis for the span of `vectors`, in order, dropping dependent ones.
pub(crate) fn orthonormalize<T: Scalar>(vectors: &[Vec<T>], rank_tol: T) -> Vec<Vec<T>> {
    let mut basis = Vec::new();
    for v in vectors {
        push_if_independent(&mut basis, v, rank_tol);
    }
    basis
}
