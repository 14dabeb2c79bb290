use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("W must have full row rank {expected}, found rank {found}")]
    RankDeficient { expected: usize, found: usize },
    #[error("bound exceeded: weighted degree {degree} > bound {bound}")]
    BoundExceeded { bound: i64, degree: i64 },
    #[error("window underflow: {0}")]
    WindowUnderflow(String),
    #[error("variable lists differ")]
    VariableMismatch,
    #[error("structure is not defect-free: residual at arity {arity} is nonzero")]
    DefectNonzero { arity: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
