use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative twist exponent {0}")]
    NegativeTwist(i64),
    #[error("expected a polynomial, got {0}")]
    NonPolynomial(String),
    #[error("entry outside A: {0}")]
    NotIntegral(String),
    #[error("{w} is not divisible by q-1 = {qm1}")]
    Divisibility { w: u64, qm1: u64 },
    #[error("insufficient precision: need {needed} coefficients, have {have}")]
    InsufficientPrecision { needed: usize, have: usize },
    #[error("reduction exceeded its budget of {0} rewrites")]
    Budget(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("enumeration budget exceeded: {0}")]
    EnumerationBudget(String),
    #[error("suffix {0:?} missing from verdict map")]
    MissingSuffix(Vec<u32>),
    #[error("sweep does not cover {0:?}")]
    CoverageGap(Vec<u32>),
    #[error("invalid tuple: {0}")]
    InvalidTuple(String),
    #[error("point coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
