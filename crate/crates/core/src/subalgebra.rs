//! Subalgebras generated by a set of elements.

use serde::{Deserialize, Serialize};

use crate::algebra::CdElement;
use crate::error::{CdError, Result};
use crate::orthonormal;
use crate::scalar::Scalar;

/// A subspace containing `1`, closed under multiplication and conjugation,
/// stored as an orthonormal basis whose first vector is `1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Subalgebra<T> {
    level: u32,
    basis: Vec<CdElement<T>>,
}

/// Wire shape: `{"level": n, "dim": d, "basis": [[coeffs], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubalgebraJson<T> {
    pub level: u32,
    pub dim: usize,
    pub basis: Vec<Vec<T>>,
}

impl<T: Scalar> Subalgebra<T> {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CdElement<T>] {
        &self.basis
    }

    /// Orthogonal projection onto the subalgebra.
    pub fn project(&self, x: &CdElement<T>) -> CdElement<T> {
        let mut p = CdElement::zero(self.level);
        for b in &self.basis {
            p += &b.scale(b.dot(x));
        }
        p
    }

    /// Largest residual of a basis product or conjugate outside the span.
    pub fn closure_defect(&self) -> T {
        let mut worst = T::zero();
        for u in &self.basis {
            let c = u.conjugate();
            worst = worst.max((&c - &self.project(&c)).norm());
            for v in &self.basis {
                let uv = u * v;
                worst = worst.max((&uv - &self.project(&uv)).norm());
            }
        }
        worst
    }

    pub fn to_json(&self) -> SubalgebraJson<T> {
        SubalgebraJson {
            level: self.level,
            dim: self.dim(),
            basis: self.basis.iter().map(|b| b.coeffs().to_vec()).collect(),
        }
    }
}

/// `⟨⟨g_1, …, g_k⟩⟩`: the smallest subalgebra containing the generators.
///
/// Seeds the span of `1`, the generators and their conjugates, then sweeps
/// over basis pairs in lexicographic order adjoining products (and
/// conjugates) that fall outside the span by more than `rank_tol`, until a
/// sweep adds nothing.
pub fn generated_subalgebra<T: Scalar>(
    gens: &[CdElement<T>],
    rank_tol: T,
) -> Result<Subalgebra<T>> {
    let first = gens
        .first()
        .ok_or_else(|| CdError::Precondition("at least one generator is required".into()))?;
    let level = first.level();
    if let Some(bad) = gens.iter().find(|g| g.level() != level) {
        return Err(CdError::LevelMismatch {
            left: level,
            right: bad.level(),
        });
    }
    let full = 1usize << level;
    let mut basis: Vec<Vec<T>> = vec![CdElement::<T>::one(level).into_coeffs()];
    for g in gens {
        orthonormal::push_if_independent(&mut basis, g.coeffs(), rank_tol);
        orthonormal::push_if_independent(&mut basis, g.conjugate().coeffs(), rank_tol);
    }

    let as_elem = |v: &Vec<T>| CdElement::from_coeffs(v.clone()).expect("power-of-two length");
    // pairs (r, c) with r, c < checked have already been multiplied
    let mut checked = 0;
    let mut sweeps = 0;
    while checked < basis.len() && basis.len() < full {
        sweeps += 1;
        if sweeps > full {
            return Err(CdError::Internal(
                "subalgebra closure did not reach a fixpoint".into(),
            ));
        }
        let snapshot: Vec<CdElement<T>> = basis.iter().map(as_elem).collect();
        let len = snapshot.len();
        for r in 0..len {
            for c in 0..len {
                if r < checked && c < checked {
                    continue;
                }
                let product = &snapshot[r] * &snapshot[c];
                orthonormal::push_if_independent(&mut basis, product.coeffs(), rank_tol);
            }
            if r >= checked {
                orthonormal::push_if_independent(
                    &mut basis,
                    snapshot[r].conjugate().coeffs(),
                    rank_tol,
                );
            }
        }
        checked = len;
    }
    Ok(Subalgebra {
        level,
        basis: basis.iter().map(as_elem).collect(),
    })
}

/// Whether `‖x − proj_S(x)‖ ≤ tol · ‖x‖`.
pub fn contains<T: Scalar>(s: &Subalgebra<T>, x: &CdElement<T>, tol: T) -> Result<bool> {
    if x.level() != s.level {
        return Err(CdError::LevelMismatch {
            left: s.level,
            right: x.level(),
        });
    }
    let r = x - &s.project(x);
    Ok(r.norm() <= tol * x.norm())
}
