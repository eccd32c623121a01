use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::algebra::CdElement;
use crate::error::{CdError, Result};
use crate::scalar::Scalar;

/// An element `re + im·i_n` of the complex subalgebra `C_n = span{1, i_n}`.
///
/// The value carries no level; it is placed into a concrete algebra with
/// [`ComplexScalar::to_element`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComplexScalar<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> ComplexScalar<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one())
    }

    /// `cos φ + i sin φ`.
    pub fn from_angle(phi: T) -> Self {
        Self::new(phi.cos(), phi.sin())
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> T {
        self.re * self.re + self.im * self.im
    }

    pub fn norm(self) -> T {
        self.re.hypot(self.im)
    }

    pub fn scale(self, r: T) -> Self {
        Self::new(self.re * r, self.im * r)
    }

    pub fn is_zero(self) -> bool {
        self.re == T::zero() && self.im == T::zero()
    }

    /// The `i_n`-coefficient of `α × β = Im(αβ*)`.
    ///
    /// The cross product of two elements of `C_n` is always a real multiple
    /// of `i_n`; its norm is the absolute value of this number.
    pub fn cross(self, other: Self) -> T {
        self.im * other.re - self.re * other.im
    }

    /// Embeds the value into `A_level` as `re·1 + im·i_level`.
    pub fn to_element(self, level: u32) -> Result<CdElement<T>> {
        if level == 0 {
            return Err(CdError::LevelTooLow {
                op: "complex embedding",
                level,
                min: 1,
            });
        }
        let mut coeffs = vec![T::zero(); 1 << level];
        coeffs[0] = self.re;
        coeffs[1 << (level - 1)] = self.im;
        CdElement::from_coeffs(coeffs)
    }
}

impl<T: Scalar> Add for ComplexScalar<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<T: Scalar> Sub for ComplexScalar<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<T: Scalar> Neg for ComplexScalar<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl<T: Scalar> Mul for ComplexScalar<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}
