use thiserror::Error;

use crate::algebra::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("characteristic {p} too small: need p > {needed}")]
    CharacteristicTooSmall { p: u64, needed: u64 },

    #[error("the zero vector is not a projective point")]
    ZeroPoint,

    #[error("degree-0 polynomial has no partial derivatives")]
    ConstantDerivative,

    #[error("variable index {0} out of range (expected 0, 1 or 2)")]
    BadVariable(usize),

    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),

    #[error("scheme has {points} points but {mults} multiplicities")]
    LengthMismatch { points: usize, mults: usize },

    #[error("all multiplicities are zero")]
    AllZeroMultiplicities,

    #[error("invalid multiplicity vectors: {0}")]
    InvalidVectors(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown example id `{0}`")]
    UnknownExample(String),
}

pub type Result<T> = std::result::Result<T, Error>;
