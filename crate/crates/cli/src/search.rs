//! Sampling searches over eigenspace dimensions and zero-divisor spectra.
//!
//! Both searches emit CSV with fixed columns:
//!
//! ```text
//! eig1-dims:  level,dim_eig1,count,families
//! zd-spectra: level,spectrum,count,families
//! ```
//!
//! `spectrum` is written `value:multiplicity` pairs joined by `;`, values
//! rounded to the cluster tolerance; `families` is a `|`-separated list of
//! the sample families that produced the row. Rows are sorted.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use cd_eigen::sample::{self, stream, SeededRng};
use cd_eigen::*;
use clap::ValueEnum;
use rand::Rng;
use serde::Serialize;

use crate::format::sig12;

pub const MIN_LEVEL: u32 = 4;
pub const MAX_LEVEL: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Question {
    Eig1Dims,
    ZdSpectra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Family {
    Gaussian,
    SparseTernary,
    Embedded,
    PairLift,
    TopMixed,
    OctonionPair,
    Top,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Gaussian => "gaussian",
            Family::SparseTernary => "sparse-ternary",
            Family::Embedded => "embedded",
            Family::PairLift => "pair-lift",
            Family::TopMixed => "top-mixed",
            Family::OctonionPair => "octonion-pair",
            Family::Top => "top",
        }
    }
}

/// One CSV row before formatting.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub key: String,
    pub count: usize,
    pub families: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    pub question: Question,
    pub level: u32,
    pub samples: usize,
    pub rows: Vec<Row>,
}

pub fn run(question: Question, level: u32, samples: usize, seed: u64) -> Result<SearchResult> {
    if level < MIN_LEVEL {
        return Err(CdError::LevelTooLow {
            op: "search",
            level,
            min: MIN_LEVEL,
        });
    }
    if level > MAX_LEVEL {
        return Err(CdError::LevelTooHigh {
            level,
            max: MAX_LEVEL,
        });
    }
    let families: &[Family] = match question {
        Question::Eig1Dims => &[
            Family::Gaussian,
            Family::SparseTernary,
            Family::Embedded,
            Family::PairLift,
            Family::TopMixed,
        ],
        Question::ZdSpectra if level == 4 => &[Family::OctonionPair, Family::PairLift, Family::Top],
        Question::ZdSpectra => &[
            Family::OctonionPair,
            Family::Embedded,
            Family::PairLift,
            Family::Top,
        ],
    };
    let label = match question {
        Question::Eig1Dims => "search-eig1-dims",
        Question::ZdSpectra => "search-zd-spectra",
    };

    let mut tally: BTreeMap<Key, (usize, BTreeSet<Family>)> = BTreeMap::new();
    for k in 0..samples {
        let family = families[k % families.len()];
        let mut r = stream(seed, label, k as u64);
        let a = match question {
            Question::Eig1Dims => element(family, level, &mut r),
            Question::ZdSpectra => zero_divisor(family, level, &mut r),
        };
        let s = Spectrum::of(&a)?;
        let key = match question {
            Question::Eig1Dims => Key::Dim(s.dim_eigenspace(1.0, tolerance::CLUSTER)),
            Question::ZdSpectra => {
                if !s.is_zero_divisor(tolerance::ZERO_DIVISOR) {
                    return Err(CdError::Internal(format!(
                        "{} sample is not a zero-divisor",
                        family.name()
                    )));
                }
                Key::Spectrum(
                    s.signature()
                        .iter()
                        .map(|&(v, m)| ((v / tolerance::CLUSTER).round() as i64, m))
                        .collect(),
                )
            }
        };
        let entry = tally.entry(key).or_default();
        entry.0 += 1;
        entry.1.insert(family);
    }

    let rows = tally
        .into_iter()
        .map(|(key, (count, fams))| Row {
            key: key.render(),
            count,
            families: fams.into_iter().map(Family::name).collect(),
        })
        .collect();
    Ok(SearchResult {
        question,
        level,
        samples,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Dim(usize),
    Spectrum(Vec<(i64, usize)>),
}

impl Key {
    fn render(&self) -> String {
        match self {
            Key::Dim(d) => d.to_string(),
            Key::Spectrum(entries) => entries
                .iter()
                .map(|&(v, m)| format!("{}:{m}", sig12(v as f64 * tolerance::CLUSTER)))
                .collect::<Vec<_>>()
                .join(";"),
        }
    }
}

impl SearchResult {
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let key = match self.question {
            Question::Eig1Dims => "dim_eig1",
            Question::ZdSpectra => "spectrum",
        };
        w.write_record(["level", key, "count", "families"])?;
        for row in &self.rows {
            w.write_record([
                self.level.to_string(),
                row.key.clone(),
                row.count.to_string(),
                row.families.join("|"),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn phase(r: &mut SeededRng) -> Complex {
    Complex::from_angle(r.random_range(0.0..std::f64::consts::TAU))
}

/// Coefficients in `{−1, 0, 1}`, each non-zero with probability ½.
fn sparse_ternary(r: &mut SeededRng, level: u32) -> Element {
    loop {
        let coeffs: Vec<f64> = (0..1usize << level)
            .map(|_| match r.random_range(0..4) {
                0 => 1.0,
                1 => -1.0,
                _ => 0.0,
            })
            .collect();
        let x = Element::from_coeffs(coeffs).expect("power-of-two length");
        if !x.is_zero() {
            return x;
        }
    }
}

fn element(family: Family, level: u32, r: &mut SeededRng) -> Element {
    match family {
        Family::Gaussian => sample::gaussian(r, level),
        Family::SparseTernary => sparse_ternary(r, level),
        Family::Embedded => {
            // a lower-level element placed in the first half, plus a sparse second half
            let low = sample::gaussian(r, level - 1);
            let high = sparse_ternary(r, level - 1);
            let high = if r.random_bool(0.5) { high } else { Element::zero(level - 1) };
            Element::join(&low, &high).expect("same level")
        }
        Family::PairLift => {
            let a = sample::perp_complex::<f64, _>(r, level - 1).expect("level ≥ 3");
            let (alpha, beta) = (sample::complex_scalar(r), sample::complex_scalar(r));
            Element::join(
                &a.mul_complex_left(alpha).expect("level ≥ 1"),
                &a.mul_complex_left(beta).expect("level ≥ 1"),
            )
            .expect("same level")
        }
        _ => {
            let lambda = r.random_range(0.0..=(1u64 << (level - 3)) as f64);
            realize_eigenvalue(level, lambda)
                .expect("in range")
                .mul_complex_left(phase(r))
                .expect("level ≥ 1")
        }
    }
}

fn octonion_pair(r: &mut SeededRng, level: u32) -> Element {
    let (a, b) = sample::orthogonal_equal_norm_imaginary_pair(r, 3).expect("level 3");
    Element::join(&a, &b)
        .expect("same level")
        .embed(level)
        .expect("level ≥ 4")
}

fn zero_divisor(family: Family, level: u32, r: &mut SeededRng) -> Element {
    let z = match family {
        Family::OctonionPair => octonion_pair(r, level),
        Family::Embedded => {
            let low = r.random_range(MIN_LEVEL..level);
            zero_divisor(Family::PairLift, low, r)
                .embed(level)
                .expect("higher level")
        }
        Family::PairLift => {
            // (αz, βz) for a zero-divisor z, or (a, ±i a) for a ⊥ C
            if level > MIN_LEVEL && r.random_bool(0.5) {
                let low = if r.random_bool(0.5) { Family::Top } else { Family::OctonionPair };
                let z = zero_divisor(low, level - 1, r);
                let (alpha, beta) = (sample::complex_scalar(r), sample::complex_scalar(r));
                Element::join(
                    &z.mul_complex_left(alpha).expect("level ≥ 1"),
                    &z.mul_complex_left(beta).expect("level ≥ 1"),
                )
                .expect("same level")
            } else {
                let a = sample::perp_complex::<f64, _>(r, level - 1).expect("level ≥ 3");
                let sign = if r.random_bool(0.5) { 1.0 } else { -1.0 };
                let alpha = sample::complex_scalar(r);
                Element::join(
                    &a.mul_complex_left(alpha).expect("level ≥ 1"),
                    &a.mul_complex_left(alpha * Complex::i().scale(sign)).expect("level ≥ 1"),
                )
                .expect("same level")
            }
        }
        _ => top_zero_divisor(level).expect("level ≥ 4"),
    };
    z.mul_complex_left(phase(r)).expect("level ≥ 1")
}
