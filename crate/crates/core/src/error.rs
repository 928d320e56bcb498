use crate::matrix::MatrixClass;
use crate::preservers::FamilyViolation;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("vector must have at least one entry")]
    EmptyVector,
    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: f64 },
    #[error("entry {index} is not a finite number")]
    NonFinite { index: usize },
    #[error("p-norm exponent must be at least 1, got {0}")]
    InvalidExponent(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix data has {found} entries, expected {expected}")]
    DataLength { expected: usize, found: usize },
    #[error("matrix is {0:?}, expected doubly substochastic")]
    NotDoublySubstochastic(MatrixClass),
    #[error("certificate was issued for a different matrix")]
    CertificateMismatch,
    #[error("certificate invalid: {0}")]
    InvalidCertificate(&'static str),
    #[error("mixing parameter {0} is outside [0, 1]")]
    InvalidMixing(f64),
    #[error("{relation} does not hold: first violation at index {index}")]
    RelationFails { relation: &'static str, index: usize },
    #[error("brute-force oracle supports dim <= 6, got {0}")]
    OracleTooLarge(usize),
    #[error("injection maps {first} and {second} to the same index")]
    NotInjective { first: usize, second: usize },
    #[error("injection family invalid: {0:?}")]
    InvalidFamily(FamilyViolation),
    #[error("invalid preserver spec: {0}")]
    InvalidSpec(&'static str),
    #[error("index {index} lies outside the truncation of size {size}")]
    OutsideTruncation { index: usize, size: usize },
    #[error("forcing requires a strictly decreasing positive sequence (index {0})")]
    NotStrictlyDecreasing(usize),
    #[error("parameter out of range: {0}")]
    InvalidParameter(&'static str),
}
