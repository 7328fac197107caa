use thiserror::Error;

/// Errors raised by the exact algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different number fields: {0}")]
    TowerMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not real under the fixed embedding")]
    NotReal,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("continued fraction words must be nonempty")]
    EmptyWord,
    #[error("the repeating part of a periodic continued fraction must be nonempty")]
    EmptyPeriod,
    #[error("point is not a fixed point of the matrix")]
    NotFixedPoint,
    #[error("matrix is singular")]
    Singular,
    #[error("wrong type: {0}")]
    WrongType(String),
    #[error("some residue limit does not exist")]
    MissingLimit,
    #[error("invalid radicand: {0}")]
    InvalidRadicand(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// A syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
