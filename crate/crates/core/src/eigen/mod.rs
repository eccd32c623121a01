//! Eigenvalues and eigenspaces of elements of `A_n`.
//!
//! The eigenvalues of a non-zero `a` are those of the symmetric positive
//! semi-definite operator `M_a = L_{a*} L_a / ‖a‖²`. They are computed
//! numerically, clustered into eigenspaces, and exposed together with
//! closed-form predictions and explicit constructions that can be checked
//! against the solver.

mod cancel;
mod construct;
mod predict;

use serde::{Deserialize, Serialize};

use crate::algebra::CdElement;
use crate::error::{CdError, Result};
use crate::linops::{m_operator, symmetric_eigen, EigenPairList};
use crate::orthonormal;
use crate::scalar::{tolerance, Scalar};

pub use cancel::{cancel_solve, cancel_solve_with, SolveOptions};
pub use construct::{a4_eigenbasis, realize_eigenvalue, top_zero_divisor};
pub use predict::{
    a4_spectrum, predict_pair_spectrum, predict_top_zero_divisor, PredictedEigenvalue,
    PredictionSource, SpectrumPrediction,
};

/// One eigenspace: a clustered eigenvalue with an orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenCluster<T> {
    pub value: T,
    pub multiplicity: usize,
    pub basis: Vec<CdElement<T>>,
}

/// Clustered spectrum of `M_a`, ascending by value.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    level: u32,
    clusters: Vec<EigenCluster<T>>,
}

/// One summand `x_λ ∈ Eig_λ(a)` of an eigendecomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenComponent<T> {
    pub value: T,
    pub component: CdElement<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterJson<T> {
    pub value: T,
    pub multiplicity: usize,
    #[serde(default = "Option::default", skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<T>>>,
}

/// Wire shape of a spectrum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumJson<T> {
    pub level: u32,
    pub clusters: Vec<ClusterJson<T>>,
    pub is_zero_divisor: bool,
    pub lambda_min: T,
    pub lambda_max: T,
}

impl<T: Scalar> Spectrum<T> {
    /// Spectrum of `a` with the default cluster tolerance.
    pub fn of(a: &CdElement<T>) -> Result<Self> {
        spectrum(a, T::tol(tolerance::CLUSTER))
    }

    /// Groups solver output into clusters: a new cluster starts whenever the
    /// gap to the previous (ascending) eigenvalue exceeds `cluster_tol`.
    pub fn from_eigenpairs(level: u32, eig: &EigenPairList<T>, cluster_tol: T) -> Self {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (k, pair) in eig.pairs.iter().enumerate() {
            match groups.last_mut() {
                Some(g) if pair.value - eig.pairs[*g.last().unwrap()].value <= cluster_tol => {
                    g.push(k)
                }
                _ => groups.push(vec![k]),
            }
        }
        let rank_tol = T::tol(tolerance::RANK);
        let clusters = groups
            .into_iter()
            .map(|g| {
                let value =
                    g.iter().map(|&k| eig.pairs[k].value).sum::<T>() / T::from_count(g.len());
                let vectors: Vec<Vec<T>> = g.iter().map(|&k| eig.pairs[k].vector.clone()).collect();
                let basis: Vec<CdElement<T>> = orthonormal::orthonormalize(&vectors, rank_tol)
                    .into_iter()
                    .map(|v| CdElement::from_coeffs(v).expect("power-of-two length"))
                    .collect();
                EigenCluster {
                    value,
                    multiplicity: g.len(),
                    basis,
                }
            })
            .collect();
        Self { level, clusters }
    }

    /// Assembles a spectrum from explicit eigenspace bases. Bases are used
    /// as given; callers are responsible for orthonormality.
    pub fn from_clusters(level: u32, mut clusters: Vec<EigenCluster<T>>) -> Self {
        clusters.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("finite values"));
        Self { level, clusters }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn clusters(&self) -> &[EigenCluster<T>] {
        &self.clusters
    }

    pub fn values(&self) -> Vec<T> {
        self.clusters.iter().map(|c| c.value).collect()
    }

    /// `(value, multiplicity)` pairs.
    pub fn signature(&self) -> Vec<(T, usize)> {
        self.clusters.iter().map(|c| (c.value, c.multiplicity)).collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).sum()
    }

    /// `Σ λ · mult(λ)`, the trace of `M_a`.
    pub fn weighted_sum(&self) -> T {
        self.clusters
            .iter()
            .map(|c| c.value * T::from_count(c.multiplicity))
            .sum()
    }

    pub fn min_value(&self) -> T {
        self.clusters[0].value
    }

    pub fn max_value(&self) -> T {
        self.clusters[self.clusters.len() - 1].value
    }

    /// The cluster whose value lies within `tol` of `value`, if any.
    pub fn cluster_near(&self, value: T, tol: T) -> Option<&EigenCluster<T>> {
        self.clusters
            .iter()
            .filter(|c| (c.value - value).abs() <= tol)
            .min_by(|a, b| {
                (a.value - value)
                    .abs()
                    .partial_cmp(&(b.value - value).abs())
                    .expect("finite values")
            })
    }

    /// `dim Eig_value(a)`, zero when `value` is not an eigenvalue.
    pub fn dim_eigenspace(&self, value: T, tol: T) -> usize {
        self.cluster_near(value, tol).map_or(0, |c| c.multiplicity)
    }

    pub fn is_zero_divisor(&self, tol: T) -> bool {
        self.min_value() <= tol
    }

    /// Orthogonal projection of `x` onto one cluster's eigenspace.
    pub fn project(&self, cluster: &EigenCluster<T>, x: &CdElement<T>) -> CdElement<T> {
        let mut out = CdElement::zero(self.level);
        for v in &cluster.basis {
            out += &v.scale(v.dot(x));
        }
        out
    }

    /// Splits `x` into its components in each eigenspace, dropping
    /// components of norm at most `1e-12 · ‖x‖`.
    pub fn decompose(&self, x: &CdElement<T>) -> Vec<EigenComponent<T>> {
        let cutoff = T::tol(1e-12) * x.norm();
        self.clusters
            .iter()
            .map(|c| EigenComponent {
                value: c.value,
                component: self.project(c, x),
            })
            .filter(|c| c.component.norm() > cutoff)
            .collect()
    }

    pub fn to_json(&self, zero_divisor_tol: T, with_bases: bool) -> SpectrumJson<T> {
        SpectrumJson {
            level: self.level,
            clusters: self
                .clusters
                .iter()
                .map(|c| ClusterJson {
                    value: c.value,
                    multiplicity: c.multiplicity,
                    basis: with_bases
                        .then(|| c.basis.iter().map(|v| v.coeffs().to_vec()).collect()),
                })
                .collect(),
            is_zero_divisor: self.is_zero_divisor(zero_divisor_tol),
            lambda_min: self.min_value(),
            lambda_max: self.max_value(),
        }
    }
}

/// Numerical spectrum of `a`: eigenvalues of `M_a` clustered by
/// `cluster_tol`, with orthonormal eigenspace bases. Raw eigenvalues within
/// `1e-9` of zero are set to zero.
pub fn spectrum<T: Scalar>(a: &CdElement<T>, cluster_tol: T) -> Result<Spectrum<T>> {
    let m = m_operator(a)?;
    let mut eig = symmetric_eigen(&m)?;
    eig.clamp_near_zero(T::tol(tolerance::CLAMP));
    Ok(Spectrum::from_eigenpairs(a.level(), &eig, cluster_tol))
}

/// Eigendecomposition of `x` with respect to `a`.
pub fn eigendecompose<T: Scalar>(
    x: &CdElement<T>,
    a: &CdElement<T>,
) -> Result<Vec<EigenComponent<T>>> {
    if x.level() != a.level() {
        return Err(CdError::LevelMismatch {
            left: x.level(),
            right: a.level(),
        });
    }
    Ok(Spectrum::of(a)?.decompose(x))
}

/// `a` is a zero-divisor iff `0` is an eigenvalue of `M_a`.
pub fn is_zero_divisor<T: Scalar>(a: &CdElement<T>, tol: T) -> Result<bool> {
    Ok(Spectrum::of(a)?.is_zero_divisor(tol))
}

/// `(λ⁻, λ⁺)`: the minimum and maximum eigenvalue of `a`.
pub fn extreme_eigenvalues<T: Scalar>(a: &CdElement<T>) -> Result<(T, T)> {
    let s = Spectrum::of(a)?;
    Ok((s.min_value(), s.max_value()))
}

/// The two norm conditions characterizing `x ∈ Eig_λ(a)`:
/// `‖ax‖ = √λ ‖a‖ ‖x‖` and `‖M_a x‖ = λ ‖x‖`, each checked to `tol`
/// relative to `‖a‖‖x‖` and `‖x‖` respectively.
pub fn eig_norm_conditions<T: Scalar>(
    a: &CdElement<T>,
    x: &CdElement<T>,
    lambda: T,
    tol: T,
) -> (bool, bool) {
    let an = a.norm();
    let xn = x.norm();
    let ax = a * x;
    let first = (ax.norm() - lambda.sqrt() * an * xn).abs() <= tol * an * xn;
    let max = a.conjugate().try_mul(&ax).expect("same level").scale((an * an).recip());
    let second = (max.norm() - lambda * xn).abs() <= tol * xn;
    (first, second)
}

/// Whether `x` passes both norm conditions for eigenvalue `lambda`.
/// Returns `false` for `a = 0` or mismatched levels.
pub fn verify_eig_norm<T: Scalar>(a: &CdElement<T>, x: &CdElement<T>, lambda: T, tol: T) -> bool {
    if a.is_zero() || a.level() != x.level() || lambda < T::zero() {
        return false;
    }
    let (first, second) = eig_norm_conditions(a, x, lambda, tol);
    first && second
}
