//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// A real floating-point coefficient type: `f32` or `f64`.
///
/// All tolerances in the crate are stated for `f64`; [`Scalar::tol`] widens
/// them to the working precision so the same code paths stay meaningful in
/// single precision.
pub trait Scalar:
    'static
    + Float
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
{
    /// Converts an `f64` constant into `Self`.
    #[inline]
    fn c(value: f64) -> Self {
        Self::from_f64(value).expect("f64 constant representable in scalar type")
    }

    /// Converts a count into `Self`.
    #[inline]
    fn from_count(value: usize) -> Self {
        Self::from_usize(value).expect("count representable in scalar type")
    }

    /// A tolerance no tighter than `base` and no tighter than the working
    /// precision allows.
    #[inline]
    fn tol(base: f64) -> Self {
        let floor = Self::epsilon() * Self::c(1024.0);
        Self::c(base).max(floor)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Default tolerances used throughout the crate.
pub mod tolerance {
    /// Eigenvalues closer than this are clustered into one eigenspace.
    pub const CLUSTER: f64 = 1e-7;
    /// Minimum eigenvalue at or below which an element is a zero-divisor.
    pub const ZERO_DIVISOR: f64 = 1e-8;
    /// Raw solver eigenvalues within this distance of zero are set to zero.
    pub const CLAMP: f64 = 1e-9;
    /// Predicted eigenvalues closer than this are merged.
    pub const MERGE: f64 = 1e-9;
    /// Gram-Schmidt rank cutoff.
    pub const RANK: f64 = 1e-9;
    /// Jacobi stopping rule: off-diagonal Frobenius norm relative to the full norm.
    pub const JACOBI_OFF_DIAGONAL: f64 = 1e-12;
    /// Maximum number of Jacobi sweeps before giving up.
    pub const JACOBI_MAX_SWEEPS: usize = 60;
    /// Relative residual accepted by the cancellation solver.
    pub const SOLVE_RESIDUAL: f64 = 1e-7;
    /// Generic precondition checks (unit norm, orthogonality).
    pub const PRECONDITION: f64 = 1e-9;
}
