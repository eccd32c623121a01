use thiserror::Error;

/// Syntax error in an element expression, located by character offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CdError {
    #[error("basis index {index} out of range for level {level} (dimension {})", 1usize << level)]
    IndexOutOfRange { level: u32, index: usize },

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("{op} requires level at least {min}, got {level}")]
    LevelTooLow { op: &'static str, level: u32, min: u32 },

    #[error("level {level} exceeds the supported maximum {max}")]
    LevelTooHigh { level: u32, max: u32 },

    #[error("coefficient vector of length {0} is not a power of two")]
    BadLength(usize),

    #[error("operation undefined for the zero element")]
    ZeroElement,

    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("no solution: b is not in the image of L_a (relative residual {residual:e})")]
    NoSolution { residual: f64 },

    #[error("eigenvalue {value} outside the attainable range [0, {max}]")]
    EigenvalueOutOfRange { value: f64, max: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = CdError> = std::result::Result<T, E>;
