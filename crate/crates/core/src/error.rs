use thiserror::Error;

/// Errors raised by the library. Every operation is exact, so these only
/// report violated preconditions or an exhausted work budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not invertible over Z (det = {det})")]
    NotUnimodular { det: String },
    #[error("determinant must be 1 (got {det})")]
    DetNotOne { det: String },
    #[error("exterior degree {r} out of range for dimension {n}")]
    DegreeOutOfRange { n: usize, r: usize },
    #[error("invalid linearization: {0}")]
    InvalidLinearization(String),
    #[error("invalid quotient spec: {0}")]
    InvalidQuotient(String),
    #[error("input outside oracle bounds: {0}")]
    OracleBounds(String),
    #[error("elements belong to different groups")]
    ParentMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("work budget of {budget} row/column operations exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("internal consistency failure: {0}")]
    Defect(String),
}

pub type Result<T> = std::result::Result<T, Error>;
