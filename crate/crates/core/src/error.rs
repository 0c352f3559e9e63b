use thiserror::Error;

use crate::coeffs::Ring;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed ring spec `{0}` (expected ZZ, QQ or GF(p))")]
    MalformedRingSpec(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("inconsistent form: {0}")]
    InconsistentForm(String),
    #[error("{0} is not a field")]
    NotAField(Ring),
    #[error("degree bound {bound} is smaller than required degree {required}")]
    BoundTooSmall { bound: usize, required: usize },
    #[error("degree {requested} exceeds the completion bound {bound} of an incomplete basis")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("word space of dimension {dimension} exceeds the cap {cap}")]
    TooLarge { dimension: u128, cap: usize },
    #[error("homological degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("differential does not square to zero on {0}")]
    SquareNotZero(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// True for errors caused by malformed text input rather than by the
    /// mathematics of a well-formed request.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::MalformedRingSpec(_)
                | Error::NotPrime(_)
                | Error::Parse { .. }
                | Error::UnknownGenerator(_)
                | Error::InvalidName(_)
                | Error::InvalidInput(_)
        )
    }
}
