//! Seeded random elements.
//!
//! The generator is SplitMix64 (state advanced by `0x9e3779b97f4a7c15`,
//! output mixed by the `0xbf58476d1ce4e5b9` / `0x94d049bb133111eb`
//! finalizer). From seed `0` its first outputs are
//!
//! ```text
//! 0xe220a8397b1dcdaf 0x6e789e6aa1b965f4 0x06c45d188009454f 0xf88bb8a8724c81ec
//! ```
//!
//! Coefficients are standard normal variates drawn from that stream.

use rand::{Rng, RngCore, SeedableRng};
use rand_distr::StandardNormal;

use crate::algebra::{CdElement, ComplexScalar};
use crate::error::{CdError, Result};
use crate::scalar::Scalar;

pub use rand_xoshiro::SplitMix64 as SeededRng;

pub fn seeded(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

/// Seed for an independent stream, keyed by a label and an index, so that
/// trials can be generated in any order (or in parallel) reproducibly.
pub fn stream_seed(seed: u64, label: &str, index: u64) -> u64 {
    // FNV-1a over the label
    let mut h: u64 = 0xcbf29ce484222325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100000001b3);
    }
    let mut rng = seeded(seed ^ h ^ index.wrapping_mul(0x9e3779b97f4a7c15));
    rng.next_u64()
}

pub fn stream(seed: u64, label: &str, index: u64) -> SeededRng {
    seeded(stream_seed(seed, label, index))
}

fn normal<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::c(rng.sample::<f64, _>(StandardNormal))
}

/// Independent standard normal coefficients.
pub fn gaussian<T: Scalar, R: Rng + ?Sized>(rng: &mut R, level: u32) -> CdElement<T> {
    let coeffs: Vec<T> = (0..1usize << level).map(|_| normal(rng)).collect();
    CdElement::from_coeffs(coeffs).expect("power-of-two length")
}

fn nonzero<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    mut draw: impl FnMut(&mut R) -> CdElement<T>,
) -> CdElement<T> {
    loop {
        let x = draw(rng);
        if x.norm() > T::zero() {
            return x;
        }
    }
}

pub fn unit<T: Scalar, R: Rng + ?Sized>(rng: &mut R, level: u32) -> CdElement<T> {
    nonzero(rng, |r| gaussian(r, level))
        .normalized()
        .expect("non-zero")
}

/// Gaussian with the real coefficient removed; `level ≥ 1`.
pub fn imaginary<T: Scalar, R: Rng + ?Sized>(rng: &mut R, level: u32) -> Result<CdElement<T>> {
    if level == 0 {
        return Err(CdError::LevelTooLow {
            op: "imaginary sample",
            level,
            min: 1,
        });
    }
    Ok(nonzero(rng, |r| gaussian(r, level).imag_part()))
}

/// Gaussian orthogonal to `C_n = span{1, i_n}`; `level ≥ 2`.
pub fn perp_complex<T: Scalar, R: Rng + ?Sized>(rng: &mut R, level: u32) -> Result<CdElement<T>> {
    if level < 2 {
        return Err(CdError::LevelTooLow {
            op: "sample orthogonal to C_n",
            level,
            min: 2,
        });
    }
    let mut x = gaussian::<T, R>(rng, level);
    x.coeffs_mut()[0] = T::zero();
    x.coeffs_mut()[1 << (level - 1)] = T::zero();
    Ok(x)
}

pub fn complex_scalar<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> ComplexScalar<T> {
    ComplexScalar::new(normal(rng), normal(rng))
}

/// Orthogonal imaginary `a`, `b` with `‖a‖ = ‖b‖`; `level ≥ 2`.
pub fn orthogonal_equal_norm_imaginary_pair<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    level: u32,
) -> Result<(CdElement<T>, CdElement<T>)> {
    if level < 2 {
        return Err(CdError::LevelTooLow {
            op: "orthogonal imaginary pair",
            level,
            min: 2,
        });
    }
    let a = imaginary::<T, R>(rng, level)?;
    let a_sq = a.norm_sqr();
    loop {
        let b = imaginary::<T, R>(rng, level)?;
        let b = &b - &a.scale(a.dot(&b) / a_sq);
        let bn = b.norm();
        if bn > T::tol(1e-6) * a.norm() {
            let b = b.scale(a.norm() / bn);
            return Ok((a, b));
        }
    }
}
