use thiserror::Error;

use crate::algebra::GradedVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("operands belong to different presentations")]
    MixedPresentation,

    #[error("degree {degree} is outside 0..={max}")]
    DegreeOutOfRange { degree: i64, max: u32 },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("not a boundary; obstruction {obstruction}")]
    NotABoundary { obstruction: Box<GradedVector> },

    #[error("not a cocycle: {0}")]
    NotACocycle(String),

    #[error("invalid differential on generator {generator}: {reason}")]
    InvalidDifferential { generator: String, reason: String },

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),

    #[error("enumeration needs about {estimate} defining systems, budget is {budget}")]
    BudgetExceeded { estimate: u128, budget: u64 },

    #[error("hypothesis failure: {0}")]
    HypothesisFailure(String),

    #[error("exponent {n} exceeds fiber dimension {k}")]
    ExponentTooLarge { n: u32, k: u32 },

    #[error("engine invariant violated: {0}")]
    EngineInvariant(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("corrupt certificate: {0}")]
    CorruptCertificate(String),

    #[error("unknown class label {0:?}")]
    UnknownLabel(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
