//! Arithmetic in the Cayley-Dickson algebras `A_n`.
//!
//! `A_0 = ℝ` and `A_n = A_{n-1} × A_{n-1}` with
//!
//! ```text
//! (a, b)* = (a*, -b)
//! (a, b)(c, d) = (ac - d*b, da + bc*)
//! ```
//!
//! Elements are stored as `2^n` coefficients over the standard basis. The
//! basis is indexed so that `e_k = (e_k, 0)` and `e_{2^(n-1)+k} = (0, e_k)`;
//! in particular `i_n = (0, 1) = e_{2^(n-1)}`, and the octonion basis reads
//! `1, i, j, k, t, it, jt, kt`.

mod complex;
mod parse;

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{CdError, Result};
use crate::scalar::Scalar;

pub use complex::ComplexScalar;
pub use parse::{parse_element, to_expression};

/// An element of `A_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr<T>")]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct CdElement<T> {
    level: u32,
    coeffs: Vec<T>,
}

#[derive(Deserialize)]
struct ElementRepr<T> {
    level: u32,
    coeffs: Vec<T>,
}

impl<T: Scalar> TryFrom<ElementRepr<T>> for CdElement<T> {
    type Error = CdError;

    fn try_from(repr: ElementRepr<T>) -> Result<Self> {
        let element = Self::from_coeffs(repr.coeffs)?;
        if element.level != repr.level {
            return Err(CdError::LevelMismatch {
                left: repr.level,
                right: element.level,
            });
        }
        Ok(element)
    }
}

/// Decomposition `x = β + a` with `β ∈ C_n` and `a ∈ C_n^⊥`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexProjection<T> {
    pub complex: ComplexScalar<T>,
    pub perp: CdElement<T>,
    /// `None` for the zero element.
    pub polar: Option<PolarForm<T>>,
}

/// `x = radius · (unit_perp · cos θ + unit_complex · sin θ)` with
/// `θ ∈ [0, π/2]`.
///
/// A unit part is `None` when the matching component vanishes (θ = π/2 or
/// θ = 0 respectively).
#[derive(Clone, Debug, PartialEq)]
pub struct PolarForm<T> {
    pub radius: T,
    pub theta: T,
    pub unit_perp: Option<CdElement<T>>,
    pub unit_complex: Option<ComplexScalar<T>>,
}

/// `out += sign · conj^xc(x) · conj^yc(y)`, recursing on halves without
/// allocating: conjugation of `(a, b)` is `(a*, -b)`, so a conjugation flag
/// turns into a flag on the first half and a sign on the second.
fn mul_acc<T: Scalar>(x: &[T], xc: bool, y: &[T], yc: bool, sign: T, out: &mut [T]) {
    let n = x.len();
    if n == 1 {
        out[0] += sign * x[0] * y[0];
        return;
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let sb = if xc { -T::one() } else { T::one() };
    let sd = if yc { -T::one() } else { T::one() };
    let (lo, hi) = out.split_at_mut(h);
    // (A, B)(C, D) = (AC - D*B, DA + BC*)
    mul_acc(a, xc, c, yc, sign, lo);
    mul_acc(d, true, b, false, -sign * sd * sb, lo);
    mul_acc(d, false, a, xc, sign * sd, hi);
    mul_acc(b, false, c, !yc, sign * sb, hi);
}

fn level_of_len(len: usize) -> Result<u32> {
    if len == 0 || !len.is_power_of_two() {
        return Err(CdError::BadLength(len));
    }
    Ok(len.trailing_zeros())
}

impl<T: Scalar> CdElement<T> {
    pub fn zero(level: u32) -> Self {
        Self {
            level,
            coeffs: vec![T::zero(); 1 << level],
        }
    }

    pub fn real(level: u32, r: T) -> Self {
        let mut x = Self::zero(level);
        x.coeffs[0] = r;
        x
    }

    pub fn one(level: u32) -> Self {
        Self::real(level, T::one())
    }

    /// The standard basis vector `e_k` of `A_level`.
    pub fn basis(level: u32, k: usize) -> Result<Self> {
        if k >= 1 << level {
            return Err(CdError::IndexOutOfRange { level, index: k });
        }
        let mut x = Self::zero(level);
        x.coeffs[k] = T::one();
        Ok(x)
    }

    /// `i_n = (0, 1)`.
    pub fn imaginary_unit(level: u32) -> Result<Self> {
        if level == 0 {
            return Err(CdError::LevelTooLow {
                op: "i_n",
                level,
                min: 1,
            });
        }
        Self::basis(level, 1 << (level - 1))
    }

    /// Builds an element from its coefficients; the length must be a power of two.
    pub fn from_coeffs(coeffs: Vec<T>) -> Result<Self> {
        let level = level_of_len(coeffs.len())?;
        Ok(Self { level, coeffs })
    }

    pub fn from_f64_slice(coeffs: &[f64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| T::c(c)).collect())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [T] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == T::zero())
    }

    pub fn scale(&self, r: T) -> Self {
        Self {
            level: self.level,
            coeffs: self.coeffs.iter().map(|&c| c * r).collect(),
        }
    }

    /// `x / ‖x‖`.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == T::zero() {
            return Err(CdError::ZeroElement);
        }
        Ok(self.scale(n.recip()))
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(CdError::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(())
    }

    /// Cayley-Dickson product `self · other`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let mut out = Self::zero(self.level);
        mul_acc(
            &self.coeffs,
            false,
            &other.coeffs,
            false,
            T::one(),
            &mut out.coeffs,
        );
        Ok(out)
    }

    pub fn conjugate(&self) -> Self {
        let mut coeffs: Vec<T> = self.coeffs.iter().map(|&c| -c).collect();
        coeffs[0] = self.coeffs[0];
        Self {
            level: self.level,
            coeffs,
        }
    }

    /// The real coefficient `Re(x)` as a scalar.
    pub fn re(&self) -> T {
        self.coeffs[0]
    }

    /// `Re(x) = (x + x*)/2`, as an element.
    pub fn real_part(&self) -> Self {
        Self::real(self.level, self.coeffs[0])
    }

    /// `Im(x) = x - Re(x)`.
    pub fn imag_part(&self) -> Self {
        let mut x = self.clone();
        x.coeffs[0] = T::zero();
        x
    }

    pub fn is_imaginary(&self, tol: T) -> bool {
        self.coeffs[0].abs() <= tol * self.norm().max(T::one())
    }

    /// Euclidean dot product of coefficient vectors, without level checks.
    pub(crate) fn dot(&self, other: &Self) -> T {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a * b)
            .sum()
    }

    /// `⟨x, y⟩_ℝ = Re(x y*)`.
    pub fn inner_real(&self, other: &Self) -> Result<T> {
        self.check_level(other)?;
        Ok(self.try_mul(&other.conjugate())?.re())
    }

    /// `⟨x, y⟩_ℂ`: the orthogonal projection of `x y*` onto `C_n`.
    pub fn inner_hermitian(&self, other: &Self) -> Result<ComplexScalar<T>> {
        self.check_level(other)?;
        if self.level == 0 {
            return Err(CdError::LevelTooLow {
                op: "Hermitian inner product",
                level: 0,
                min: 1,
            });
        }
        let p = self.try_mul(&other.conjugate())?;
        Ok(ComplexScalar::new(p.coeffs[0], p.coeffs[1 << (self.level - 1)]))
    }

    pub fn norm_sqr(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// `x × y = Im(x y*)`.
    pub fn cross(&self, other: &Self) -> Result<Self> {
        Ok(self.try_mul(&other.conjugate())?.imag_part())
    }

    /// `(b, c) ↦ b, c` for `x = (b, c)`.
    pub fn split(&self) -> Result<(Self, Self)> {
        if self.level == 0 {
            return Err(CdError::LevelTooLow {
                op: "split",
                level: 0,
                min: 1,
            });
        }
        let h = self.dim() / 2;
        let lo = Self {
            level: self.level - 1,
            coeffs: self.coeffs[..h].to_vec(),
        };
        let hi = Self {
            level: self.level - 1,
            coeffs: self.coeffs[h..].to_vec(),
        };
        Ok((lo, hi))
    }

    /// `(b, c)` as an element one level up.
    pub fn join(b: &Self, c: &Self) -> Result<Self> {
        b.check_level(c)?;
        let mut coeffs = Vec::with_capacity(2 * b.dim());
        coeffs.extend_from_slice(&b.coeffs);
        coeffs.extend_from_slice(&c.coeffs);
        Ok(Self {
            level: b.level + 1,
            coeffs,
        })
    }

    /// Includes `x ∈ A_m` into `A_level` via `A_m ≅ A_m × 0 × ...`.
    pub fn embed(&self, level: u32) -> Result<Self> {
        if level < self.level {
            return Err(CdError::LevelTooLow {
                op: "embed",
                level,
                min: self.level,
            });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(1 << level, T::zero());
        Ok(Self { level, coeffs })
    }

    /// Orthogonal projection onto `C_n`.
    pub fn complex_part(&self) -> Result<ComplexScalar<T>> {
        if self.level == 0 {
            return Err(CdError::LevelTooLow {
                op: "complex projection",
                level: 0,
                min: 1,
            });
        }
        Ok(ComplexScalar::new(
            self.coeffs[0],
            self.coeffs[1 << (self.level - 1)],
        ))
    }

    /// Orthogonal projection onto `C_n^⊥`.
    pub fn perp_complex_part(&self) -> Result<Self> {
        self.complex_part()?;
        let mut a = self.clone();
        a.coeffs[0] = T::zero();
        a.coeffs[1 << (self.level - 1)] = T::zero();
        Ok(a)
    }

    /// Splits `x = β + a` with `β ∈ C_n`, `a ⊥ C_n`, together with the polar
    /// form `x = ‖x‖ (â cos θ + β̂ sin θ)`, `θ = atan2(‖β‖, ‖a‖) ∈ [0, π/2]`.
    pub fn project_complex(&self) -> Result<ComplexProjection<T>> {
        let complex = self.complex_part()?;
        let perp = self.perp_complex_part()?;
        let radius = self.norm();
        let polar = if radius == T::zero() {
            None
        } else {
            let pn = perp.norm();
            let cn = complex.norm();
            Some(PolarForm {
                radius,
                theta: cn.atan2(pn),
                unit_perp: (pn > T::zero()).then(|| perp.scale(pn.recip())),
                unit_complex: (cn > T::zero()).then(|| complex.scale(cn.recip())),
            })
        };
        Ok(ComplexProjection {
            complex,
            perp,
            polar,
        })
    }

    /// Whether `a · ax = a² x` for every `x`, checked on the standard basis:
    /// `max_k ‖a(a e_k) − a² e_k‖ ≤ tol · ‖a‖²`.
    pub fn is_alternative(&self, tol: T) -> bool {
        let a2 = self * self;
        let bound = tol * self.norm_sqr();
        (0..self.dim()).all(|k| {
            let e = Self::basis(self.level, k).expect("index in range");
            let lhs = self * &(self * &e);
            let rhs = &a2 * &e;
            (&lhs - &rhs).norm() <= bound
        })
    }

    /// Left multiplication by a complex scalar of the same algebra: `α · x`.
    pub fn mul_complex_left(&self, alpha: ComplexScalar<T>) -> Result<Self> {
        alpha.to_element(self.level)?.try_mul(self)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.level, other.level, "level mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max)
    }

    /// Converts coefficients to another scalar type.
    pub fn cast<U: Scalar>(&self) -> CdElement<U> {
        CdElement {
            level: self.level,
            coeffs: self.coeffs.iter().map(|&c| U::c(c.as_f64())).collect(),
        }
    }
}

impl<T: Scalar> Add for &CdElement<T> {
    type Output = CdElement<T>;
    fn add(self, rhs: Self) -> CdElement<T> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<T: Scalar> Sub for &CdElement<T> {
    type Output = CdElement<T>;
    fn sub(self, rhs: Self) -> CdElement<T> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<T: Scalar> Add for CdElement<T> {
    type Output = CdElement<T>;
    fn add(mut self, rhs: Self) -> CdElement<T> {
        self += &rhs;
        self
    }
}

impl<T: Scalar> Sub for CdElement<T> {
    type Output = CdElement<T>;
    fn sub(mut self, rhs: Self) -> CdElement<T> {
        self -= &rhs;
        self
    }
}

impl<T: Scalar> AddAssign<&CdElement<T>> for CdElement<T> {
    fn add_assign(&mut self, rhs: &CdElement<T>) {
        assert_eq!(self.level, rhs.level, "level mismatch in addition");
        for (a, &b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl<T: Scalar> SubAssign<&CdElement<T>> for CdElement<T> {
    fn sub_assign(&mut self, rhs: &CdElement<T>) {
        assert_eq!(self.level, rhs.level, "level mismatch in subtraction");
        for (a, &b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl<T: Scalar> Neg for &CdElement<T> {
    type Output = CdElement<T>;
    fn neg(self) -> CdElement<T> {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Neg for CdElement<T> {
    type Output = CdElement<T>;
    fn neg(self) -> CdElement<T> {
        self.scale(-T::one())
    }
}

/// Product of two elements at the same level.
///
/// Panics on a level mismatch; use [`CdElement::try_mul`] for a checked product.
impl<T: Scalar> Mul for &CdElement<T> {
    type Output = CdElement<T>;
    fn mul(self, rhs: Self) -> CdElement<T> {
        self.try_mul(rhs).expect("level mismatch in multiplication")
    }
}

impl<T: Scalar> Mul<T> for &CdElement<T> {
    type Output = CdElement<T>;
    fn mul(self, rhs: T) -> CdElement<T> {
        self.scale(rhs)
    }
}

impl<T: Scalar> Mul<T> for CdElement<T> {
    type Output = CdElement<T>;
    fn mul(self, rhs: T) -> CdElement<T> {
        self.scale(rhs)
    }
}
