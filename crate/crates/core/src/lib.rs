//! Eigentheory of Cayley-Dickson algebras.
//!
//! Elements of `A_n` (dimension `2^n`) are built by repeated doubling of the
//! reals. For non-zero `a` the operator `M_a = L_{a*} L_a / ‖a‖²` is
//! symmetric positive semi-definite; its spectrum controls which products
//! with `a` can cancel and whether `a` is a zero-divisor.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases below
//! fix `f64`, which is what the tolerances are tuned for.

pub mod algebra;
pub mod eigen;
pub mod error;
pub mod linops;
mod orthonormal;
pub mod sample;
pub mod scalar;
pub mod subalgebra;

pub use algebra::{parse_element, to_expression, CdElement, ComplexProjection, ComplexScalar, PolarForm};
pub use eigen::{
    a4_eigenbasis, a4_spectrum, cancel_solve, cancel_solve_with, eig_norm_conditions,
    eigendecompose, extreme_eigenvalues, is_zero_divisor, predict_pair_spectrum,
    predict_top_zero_divisor, realize_eigenvalue, spectrum, top_zero_divisor, verify_eig_norm,
    EigenCluster, EigenComponent, PredictedEigenvalue, PredictionSource, SolveOptions, Spectrum,
    SpectrumPrediction,
};
pub use error::{CdError, ParseError, Result};
pub use linops::{
    m_operator, mixed_m_operator, mult_matrix, symmetric_eigen, trace_pairing, OperatorMatrix,
    Side,
};
pub use scalar::{tolerance, Scalar};
pub use subalgebra::{contains, generated_subalgebra, Subalgebra};

/// Highest level accepted by default (`A_8`, dimension 256).
pub const DEFAULT_MAX_LEVEL: u32 = 8;

pub type Element = CdElement<f64>;
pub type ElementF32 = CdElement<f32>;
pub type Complex = ComplexScalar<f64>;
pub type Operator = OperatorMatrix<f64>;
pub type OperatorF32 = OperatorMatrix<f32>;
pub type SpectrumF64 = Spectrum<f64>;
pub type SubalgebraF64 = Subalgebra<f64>;
