//! Explicit elements and eigenspaces with known spectra.

use crate::algebra::CdElement;
use crate::eigen::{EigenCluster, Spectrum};
use crate::error::{CdError, Result};
use crate::linops::m_operator;
use crate::orthonormal;
use crate::scalar::{tolerance, Scalar};

/// Explicit eigenspaces of the zero-divisor `(a, b) ∈ A_4`, for orthogonal
/// imaginary octonions of equal non-zero norm.
///
/// With `H = ⟨⟨a, b⟩⟩ = span{1, a, b, ab}` and `c = ab/‖ab‖`:
/// `Eig_0 = {(x, −cx)}` and `Eig_2 = {(x, cx)}` for `x ∈ H^⊥`, and
/// `Eig_1 = H × H`. Every basis vector is checked against `M_(a,b)`.
pub fn a4_eigenbasis<T: Scalar>(a: &CdElement<T>, b: &CdElement<T>) -> Result<Spectrum<T>> {
    let tol = T::tol(tolerance::PRECONDITION);
    for x in [a, b] {
        if x.level() != 3 {
            return Err(CdError::Precondition(format!(
                "expected an octonion (level 3), got level {}",
                x.level()
            )));
        }
        if x.is_zero() {
            return Err(CdError::ZeroElement);
        }
        if !x.is_imaginary(tol) {
            return Err(CdError::Precondition("inputs must be imaginary".into()));
        }
    }
    let (an, bn) = (a.norm(), b.norm());
    if (an - bn).abs() > tol * an {
        return Err(CdError::Precondition("inputs must have equal norms".into()));
    }
    if a.dot(b).abs() > tol * an * bn {
        return Err(CdError::Precondition("inputs must be orthogonal".into()));
    }

    let ab = a * b;
    let c = ab.normalized()?;
    let rank_tol = T::tol(tolerance::RANK);
    let mut frame: Vec<Vec<T>> = orthonormal::orthonormalize(
        &[
            CdElement::<T>::one(3).into_coeffs(),
            a.coeffs().to_vec(),
            b.coeffs().to_vec(),
            ab.coeffs().to_vec(),
        ],
        rank_tol,
    );
    let h_dim = frame.len();
    if h_dim != 4 {
        return Err(CdError::Internal(format!("⟨⟨a, b⟩⟩ has dimension {h_dim}")));
    }
    for k in 0..8 {
        let e = CdElement::<T>::basis(3, k)?;
        orthonormal::push_if_independent(&mut frame, e.coeffs(), rank_tol);
    }
    let to_elem = |v: &Vec<T>| CdElement::from_coeffs(v.clone()).expect("length 8");
    let h: Vec<CdElement<T>> = frame[..4].iter().map(to_elem).collect();
    let h_perp: Vec<CdElement<T>> = frame[4..].iter().map(to_elem).collect();

    let zero3 = CdElement::zero(3);
    let eig1: Vec<CdElement<T>> = h
        .iter()
        .flat_map(|u| {
            [
                CdElement::join(u, &zero3).expect("same level"),
                CdElement::join(&zero3, u).expect("same level"),
            ]
        })
        .collect();
    let half = T::c(0.5).sqrt();
    let paired = |sign: T| -> Vec<CdElement<T>> {
        h_perp
            .iter()
            .map(|x| {
                CdElement::join(x, &(&c * x).scale(sign))
                    .expect("same level")
                    .scale(half)
            })
            .collect()
    };

    let clusters = vec![
        EigenCluster {
            value: T::zero(),
            multiplicity: 4,
            basis: paired(-T::one()),
        },
        EigenCluster {
            value: T::one(),
            multiplicity: 8,
            basis: eig1,
        },
        EigenCluster {
            value: T::c(2.0),
            multiplicity: 4,
            basis: paired(T::one()),
        },
    ];

    let m = m_operator(&CdElement::join(a, b)?)?;
    let residual_tol = T::tol(1e-8);
    for cluster in &clusters {
        for v in &cluster.basis {
            let residual = (&m.apply(v) - &v.scale(cluster.value)).norm();
            if residual > residual_tol {
                return Err(CdError::Internal(format!(
                    "eigenvector check failed for value {} (residual {residual:e})",
                    cluster.value
                )));
            }
        }
    }
    Ok(Spectrum::from_clusters(4, clusters))
}

/// A unit top-dimensional zero-divisor of `A_level`, `level ≥ 4`.
///
/// Starts from `(i, j)/√2 ∈ A_4` and lifts by `a ↦ (a, i_{m} a)/√2`.
pub fn top_zero_divisor<T: Scalar>(level: u32) -> Result<CdElement<T>> {
    if level < 4 {
        return Err(CdError::LevelTooLow {
            op: "top zero-divisor",
            level,
            min: 4,
        });
    }
    let half = T::c(0.5).sqrt();
    let mut a = CdElement::join(&CdElement::basis(3, 1)?, &CdElement::basis(3, 2)?)?.scale(half);
    for m in 4..level {
        let lifted = &CdElement::imaginary_unit(m)? * &a;
        a = CdElement::join(&a, &lifted)?.scale(half);
    }
    Ok(a)
}

/// An element of `A_level` having `lambda ∈ [0, 2^(level−3)]` as an eigenvalue.
///
/// Mixes a top zero-divisor `a` (eigenvalues `0` and `2^(level−3)`) with `1`
/// as `a cos θ + sin θ`, which shifts every eigenvalue `μ` of `a` to
/// `sin²θ + μ cos²θ`. Uses `sin²θ = λ` when `λ ≤ 1` and
/// `sin²θ + 2^(level−3) cos²θ = λ` otherwise.
pub fn realize_eigenvalue<T: Scalar>(level: u32, lambda: T) -> Result<CdElement<T>> {
    let a = top_zero_divisor::<T>(level)?;
    let top = T::from_count(1usize << (level - 3));
    if !(lambda >= T::zero() && lambda <= top) {
        return Err(CdError::EigenvalueOutOfRange {
            value: lambda.as_f64(),
            max: top.as_f64(),
        });
    }
    let cos2 = if lambda <= T::one() {
        T::one() - lambda
    } else {
        (lambda - T::one()) / (top - T::one())
    };
    let cos2 = cos2.max(T::zero()).min(T::one());
    let (cos, sin) = (cos2.sqrt(), (T::one() - cos2).sqrt());
    Ok(&a.scale(cos) + &CdElement::real(level, sin))
}
