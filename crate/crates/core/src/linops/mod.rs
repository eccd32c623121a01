//! Dense matrices of `L_a`, `R_a` and `M_a = L_{a*} L_a / ‖a‖²`.

mod jacobi;

use serde::{Deserialize, Serialize};

use crate::algebra::{CdElement, ComplexScalar};
use crate::error::{CdError, Result};
use crate::scalar::{tolerance, Scalar};

pub use jacobi::{symmetric_eigen, EigenPair, EigenPairList};

/// Which side the fixed element multiplies from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A dense square matrix, row-major.
///
/// `symmetric` is a promise checked at construction time by the operators
/// that set it; [`symmetric_eigen`] refuses matrices without it.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<T> {
    dim: usize,
    entries: Vec<T>,
    symmetric: bool,
}

/// JSON dump shape: `{"dim": d, "rows": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson<T> {
    pub dim: usize,
    pub rows: Vec<Vec<T>>,
}

impl<T: Scalar> OperatorMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![T::zero(); dim * dim],
            symmetric: true,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.entries[k * dim + k] = T::one();
        }
        m
    }

    /// Diagonal matrix; symmetric by construction.
    pub fn diagonal(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len());
        for (k, &v) in values.iter().enumerate() {
            m.entries[k * values.len() + k] = v;
        }
        m
    }

    /// Builds a matrix from rows, flagging it symmetric if it is so to
    /// within `1e-12 · max|A|`.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(CdError::Precondition("matrix rows must form a square".into()));
        }
        let mut m = Self {
            dim,
            entries: rows.iter().flatten().copied().collect(),
            symmetric: false,
        };
        m.symmetric = m.asymmetry() <= T::tol(1e-12) * m.max_abs();
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn max_abs(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    pub fn frobenius(&self) -> T {
        self.entries.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    /// `max |A - Aᵀ|`.
    pub fn asymmetry(&self) -> T {
        let d = self.dim;
        let mut worst = T::zero();
        for r in 0..d {
            for c in (r + 1)..d {
                worst = worst.max((self.get(r, c) - self.get(c, r)).abs());
            }
        }
        worst
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut t = Self::zeros(d);
        for r in 0..d {
            for c in 0..d {
                t.entries[c * d + r] = self.get(r, c);
            }
        }
        t.symmetric = self.symmetric;
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a == T::zero() {
                    continue;
                }
                let orow = &other.entries[k * d..(k + 1) * d];
                for (o, &b) in out.entries[r * d..(r + 1) * d].iter_mut().zip(orow) {
                    *o += a * b;
                }
            }
        }
        out.symmetric = false;
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.dim, v.len(), "dimension mismatch");
        (0..self.dim)
            .map(|r| self.row(r).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `self · x` on an element's coefficients.
    pub fn apply(&self, x: &CdElement<T>) -> CdElement<T> {
        CdElement::from_coeffs(self.matvec(x.coeffs())).expect("dimension is a power of two")
    }

    pub fn trace(&self) -> T {
        (0..self.dim).map(|k| self.get(k, k)).sum()
    }

    /// `max |A - B|`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    /// `a·self + b·other`; symmetric if both inputs are.
    pub fn linear_combination(&self, a: T, other: &Self, b: T) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&x, &y)| a * x + b * y)
                .collect(),
            symmetric: self.symmetric && other.symmetric,
        }
    }

    pub fn to_json(&self) -> MatrixJson<T> {
        MatrixJson {
            dim: self.dim,
            rows: (0..self.dim).map(|r| self.row(r).to_vec()).collect(),
        }
    }

    fn symmetrized(mut self) -> Self {
        let d = self.dim;
        for r in 0..d {
            for c in (r + 1)..d {
                let avg = (self.entries[r * d + c] + self.entries[c * d + r]) * T::c(0.5);
                self.entries[r * d + c] = avg;
                self.entries[c * d + r] = avg;
            }
        }
        self.symmetric = true;
        self
    }
}

/// Matrix of `L_a` (column `k` is `a·e_k`) or `R_a` (column `k` is `e_k·a`).
pub fn mult_matrix<T: Scalar>(a: &CdElement<T>, side: Side) -> OperatorMatrix<T> {
    let d = a.dim();
    let mut m = OperatorMatrix::zeros(d);
    m.symmetric = false;
    for k in 0..d {
        let e = CdElement::basis(a.level(), k).expect("index in range");
        let col = match side {
            Side::Left => a * &e,
            Side::Right => &e * a,
        };
        for (r, &v) in col.coeffs().iter().enumerate() {
            m.entries[r * d + k] = v;
        }
    }
    m
}

/// `M_a = L_{a*} L_a / ‖a‖²`.
///
/// `L_{a*} = L_aᵀ`, so this is the Gram matrix of the columns of `L_a`.
/// The result is symmetrized exactly and flagged symmetric.
pub fn m_operator<T: Scalar>(a: &CdElement<T>) -> Result<OperatorMatrix<T>> {
    let n2 = a.norm_sqr();
    if n2 == T::zero() {
        return Err(CdError::ZeroElement);
    }
    let l = mult_matrix(a, Side::Left);
    let lt = l.transpose();
    let d = l.dim;
    let mut m = OperatorMatrix::zeros(d);
    let inv = n2.recip();
    for r in 0..d {
        let cr = lt.row(r);
        for c in r..d {
            let cc = lt.row(c);
            let v = cr.iter().zip(cc).map(|(&x, &y)| x * y).sum::<T>() * inv;
            m.entries[r * d + c] = v;
            m.entries[c * d + r] = v;
        }
    }
    Ok(m.symmetrized())
}

/// `M_{a cos θ + β sin θ}` from its closed form `I sin²θ + M_a cos²θ`,
/// for unit `a ⊥ C_n` and unit `β ∈ C_n`.
pub fn mixed_m_operator<T: Scalar>(
    a: &CdElement<T>,
    beta: ComplexScalar<T>,
    theta: T,
) -> Result<OperatorMatrix<T>> {
    let tol = T::tol(tolerance::PRECONDITION);
    if (a.norm() - T::one()).abs() > tol {
        return Err(CdError::Precondition("a must be a unit vector".into()));
    }
    if (beta.norm() - T::one()).abs() > tol {
        return Err(CdError::Precondition("β must be a unit complex scalar".into()));
    }
    if a.complex_part()?.norm() > tol {
        return Err(CdError::Precondition("a must be orthogonal to C_n".into()));
    }
    let (s, c) = theta.sin_cos();
    let ma = m_operator(a)?;
    Ok(OperatorMatrix::identity(a.dim()).linear_combination(s * s, &ma, c * c))
}

/// `tr(L_{x*} L_y)`, computed from the two multiplication matrices.
pub fn trace_pairing<T: Scalar>(x: &CdElement<T>, y: &CdElement<T>) -> Result<T> {
    if x.level() != y.level() {
        return Err(CdError::LevelMismatch {
            left: x.level(),
            right: y.level(),
        });
    }
    let lx = mult_matrix(&x.conjugate(), Side::Left);
    let ly = mult_matrix(y, Side::Left);
    let d = x.dim();
    let mut tr = T::zero();
    for r in 0..d {
        for k in 0..d {
            tr += lx.get(r, k) * ly.get(k, r);
        }
    }
    Ok(tr)
}
