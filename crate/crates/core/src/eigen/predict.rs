//! Closed-form spectra, for cross-checking the numerical solver.

use serde::{Deserialize, Serialize};

use crate::algebra::{CdElement, ComplexScalar};
use crate::eigen::Spectrum;
use crate::error::{CdError, Result};
use crate::scalar::{tolerance, Scalar};

/// Which closed form produced a prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredictionSource {
    /// `(αa, βa)` with `α, β` linearly dependent: spectrum of `a`, doubled.
    DependentPair,
    /// `(αa, βa)` with `α, β` independent.
    IndependentPair,
    /// `(αa, βa)` with `α ⊥ β` of equal norm, so `‖α×β‖ / (‖α‖² + ‖β‖²) = ½`.
    MaximalCrossPair,
    /// `(a, b)` with `a, b` dependent imaginary octonions: alternative.
    DependentOctonionPair,
    /// `(a, b)` with `a, b` independent imaginary octonions.
    OctonionPair,
    /// Top-dimensional zero-divisor of `A_n`.
    TopZeroDivisor,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictedEigenvalue<T> {
    pub value: T,
    pub multiplicity: usize,
}

/// Predicted `(eigenvalue, multiplicity)` table, ascending, with coincident
/// values merged and zero multiplicities dropped.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPrediction<T> {
    pub level: u32,
    pub entries: Vec<PredictedEigenvalue<T>>,
    pub source: PredictionSource,
}

impl<T: Scalar> SpectrumPrediction<T> {
    pub fn new(level: u32, raw: Vec<(T, usize)>, merge_tol: T, source: PredictionSource) -> Self {
        let entries = raw
            .into_iter()
            .filter(|&(_, m)| m > 0)
            .map(|(value, multiplicity)| PredictedEigenvalue {
                value,
                multiplicity,
            })
            .collect();
        Self {
            level,
            entries,
            source,
        }
        .merged(merge_tol)
    }

    /// Merges entries whose values are within `tol` of their neighbour,
    /// summing multiplicities and averaging values by weight.
    pub fn merged(&self, tol: T) -> Self {
        let mut sorted = self.entries.clone();
        sorted.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("finite values"));
        let mut groups: Vec<Vec<PredictedEigenvalue<T>>> = Vec::new();
        for e in sorted {
            match groups.last_mut() {
                Some(g) if e.value - g.last().unwrap().value <= tol => g.push(e),
                _ => groups.push(vec![e]),
            }
        }
        let entries = groups
            .into_iter()
            .map(|g| {
                let multiplicity: usize = g.iter().map(|e| e.multiplicity).sum();
                let value = g
                    .iter()
                    .map(|e| e.value * T::from_count(e.multiplicity))
                    .sum::<T>()
                    / T::from_count(multiplicity);
                PredictedEigenvalue {
                    value,
                    multiplicity,
                }
            })
            .collect();
        Self {
            level: self.level,
            entries,
            source: self.source,
        }
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn multiplicity_of(&self, value: T, tol: T) -> usize {
        self.entries
            .iter()
            .filter(|e| (e.value - value).abs() <= tol)
            .map(|e| e.multiplicity)
            .sum()
    }

    /// Compares against a numerical spectrum. The prediction is first merged
    /// at `value_tol` (values the solver cannot separate); then the cluster
    /// counts and multiplicities must agree exactly. Returns the largest
    /// value discrepancy on agreement, `None` otherwise.
    pub fn agreement(&self, spectrum: &Spectrum<T>, value_tol: T) -> Option<T> {
        if spectrum.level() != self.level {
            return None;
        }
        let merged = self.merged(value_tol);
        let clusters = spectrum.clusters();
        if merged.entries.len() != clusters.len() {
            return None;
        }
        let mut worst = T::zero();
        for (e, c) in merged.entries.iter().zip(clusters) {
            if e.multiplicity != c.multiplicity {
                return None;
            }
            worst = worst.max((e.value - c.value).abs());
        }
        Some(worst)
    }

    /// [`Self::agreement`] with the value discrepancy bounded by `value_tol`.
    pub fn matches(&self, spectrum: &Spectrum<T>, value_tol: T) -> bool {
        self.agreement(spectrum, value_tol)
            .is_some_and(|err| err <= value_tol)
    }
}

/// Predicted spectrum of `(αa, βa) ∈ A_n` for `a ∈ C_{n-1}^⊥` and
/// `α, β ∈ C_{n-1}`, from the spectrum `base` of `a`.
///
/// With `g = ‖α×β‖ / (‖α‖² + ‖β‖²)`:
/// - `g = 0`: the spectrum of `a` with every multiplicity doubled;
/// - otherwise `1` with multiplicity 8, `1 ± 2g` with multiplicity
///   `dim Eig_1(a) − 4` each, and `(1 ± 2g)λ` with multiplicity
///   `dim Eig_λ(a)` each for every other eigenvalue `λ` of `a`.
///
/// Coinciding values are merged. At `g = ½` this yields the `0, 1, 2λ` table
/// of orthogonal equal-norm pairs.
pub fn predict_pair_spectrum<T: Scalar>(
    a: &CdElement<T>,
    alpha: ComplexScalar<T>,
    beta: ComplexScalar<T>,
    base: &Spectrum<T>,
) -> Result<SpectrumPrediction<T>> {
    let m = a.level();
    if m < 2 {
        return Err(CdError::LevelTooLow {
            op: "pair prediction",
            level: m,
            min: 2,
        });
    }
    if base.level() != m {
        return Err(CdError::LevelMismatch {
            left: m,
            right: base.level(),
        });
    }
    let an = a.norm();
    if an == T::zero() {
        return Err(CdError::ZeroElement);
    }
    if a.complex_part()?.norm() > T::tol(tolerance::PRECONDITION) * an {
        return Err(CdError::Precondition(format!(
            "a must be orthogonal to C_{m}"
        )));
    }
    let total = alpha.norm_sqr() + beta.norm_sqr();
    if total == T::zero() {
        return Err(CdError::Precondition("α and β cannot both vanish".into()));
    }
    let merge_tol = T::tol(tolerance::MERGE);
    let g = alpha.cross(beta).abs() / total;

    if g <= merge_tol {
        let raw = base
            .clusters()
            .iter()
            .map(|c| (c.value, 2 * c.multiplicity))
            .collect();
        return Ok(SpectrumPrediction::new(
            m + 1,
            raw,
            merge_tol,
            PredictionSource::DependentPair,
        ));
    }

    let cluster_tol = T::tol(tolerance::CLUSTER);
    let dim_one = base.dim_eigenspace(T::one(), cluster_tol);
    if dim_one < 4 {
        return Err(CdError::Internal(format!(
            "base spectrum has dim Eig_1 = {dim_one} < 4"
        )));
    }
    let two = T::c(2.0);
    let plus = T::one() + two * g;
    let minus = T::one() - two * g;
    let mut raw = vec![
        (T::one(), 8),
        (plus, dim_one - 4),
        (minus, dim_one - 4),
    ];
    for c in base.clusters() {
        if (c.value - T::one()).abs() <= cluster_tol {
            continue;
        }
        raw.push((plus * c.value, c.multiplicity));
        raw.push((minus * c.value, c.multiplicity));
    }
    let source = if (g - T::c(0.5)).abs() <= merge_tol {
        PredictionSource::MaximalCrossPair
    } else {
        PredictionSource::IndependentPair
    };
    Ok(SpectrumPrediction::new(m + 1, raw, merge_tol, source))
}

/// Predicted spectrum of `(a, b) ∈ A_4` for imaginary `a, b ∈ A_3`:
/// `{1: 16}` if they are dependent, otherwise `1, 1 ± s` with multiplicities
/// `8, 4, 4` where `s = 2‖a‖‖b‖ sin θ / (‖a‖² + ‖b‖²)`.
pub fn a4_spectrum<T: Scalar>(a: &CdElement<T>, b: &CdElement<T>) -> Result<SpectrumPrediction<T>> {
    for x in [a, b] {
        if x.level() != 3 {
            return Err(CdError::Precondition(format!(
                "expected an octonion (level 3), got level {}",
                x.level()
            )));
        }
        if !x.is_imaginary(T::tol(tolerance::PRECONDITION)) {
            return Err(CdError::Precondition("octonion inputs must be imaginary".into()));
        }
    }
    let total = a.norm_sqr() + b.norm_sqr();
    if total == T::zero() {
        return Err(CdError::ZeroElement);
    }
    let merge_tol = T::tol(tolerance::MERGE);
    // ‖a × b‖ = ‖a‖‖b‖ sin θ for octonions
    let s = T::c(2.0) * a.cross(b)?.norm() / total;
    if s <= merge_tol {
        return Ok(SpectrumPrediction::new(
            4,
            vec![(T::one(), 16)],
            merge_tol,
            PredictionSource::DependentOctonionPair,
        ));
    }
    Ok(SpectrumPrediction::new(
        4,
        vec![(T::one(), 8), (T::one() + s, 4), (T::one() - s, 4)],
        merge_tol,
        PredictionSource::OctonionPair,
    ))
}

/// Spectrum of a top-dimensional zero-divisor of `A_n` (`n ≥ 3`):
/// `0` with multiplicity `2^n − 4n + 4`, `1` with multiplicity 8, and
/// `2^k` with multiplicity 4 for `1 ≤ k ≤ n − 3`.
pub fn predict_top_zero_divisor<T: Scalar>(level: u32) -> Result<SpectrumPrediction<T>> {
    if level < 3 {
        return Err(CdError::LevelTooLow {
            op: "top zero-divisor table",
            level,
            min: 3,
        });
    }
    let dim = 1usize << level;
    let mut raw = vec![(T::zero(), dim + 4 - 4 * level as usize), (T::one(), 8)];
    for k in 1..=(level - 3) {
        raw.push((T::from_count(1usize << k), 4));
    }
    Ok(SpectrumPrediction::new(
        level,
        raw,
        T::tol(tolerance::MERGE),
        PredictionSource::TopZeroDivisor,
    ))
}
