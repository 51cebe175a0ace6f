//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("presentation mismatch: expected {expected}, found {found}")]
    PresentationMismatch { expected: String, found: String },

    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("enumeration bound exceeded: {generators} generators, bound {bound}")]
    EnumerationBound { generators: usize, bound: usize },

    #[error("unsupported argument: {0}")]
    Unsupported(String),

    #[error("bad modulus {prime}: {reason}")]
    BadPrime { prime: u64, reason: String },

    #[error("randomized verification requires a scalar presentation, got {0}")]
    NonScalarPresentation(String),

    #[error("invalid representation: relation {relation} fails")]
    InvalidRemrep { relation: String },

    #[error("matrix is not Hadamard: H H^T differs from nI at ({row},{col})")]
    NotHadamard { row: usize, col: usize },

    #[error("invalid variable partition: {0}")]
    InvalidPartition(String),

    #[error("entry pairing at circulant index {index} is not integral after halving")]
    IntegralityViolation { index: usize },

    #[error("circulant row is not Hermitian at index {index}")]
    NonHermitian { index: usize },

    #[error("wrong number of sequence pairs: expected {expected}, found {found}")]
    WrongPairCount { expected: usize, found: usize },

    #[error("sequences are not complementary (shift {shift})")]
    NonComplementary { shift: usize },

    #[error("design does not have all variable types equal")]
    NotEqualType,

    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
