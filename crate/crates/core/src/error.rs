use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {size} exceeds the configured bound {bound}")]
    BoundExceeded { size: u64, bound: u64 },
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("modulus is not a monic irreducible polynomial: {0}")]
    InvalidModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no discrete logarithm")]
    ZeroLog,
    #[error("operands live in different fields: GF({left}) vs GF({right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("{0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
