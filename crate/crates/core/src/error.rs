use thiserror::Error;

/// Errors raised by the polynomial, matrix and series layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable sets order shared names differently: {left:?} vs {right:?}")]
    Ordering { left: Vec<String>, right: Vec<String> },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("term {term} is not divisible by {divisor}")]
    Divisibility { term: String, divisor: String },

    #[error("structure violated: {0}")]
    Structure(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("truncation too small: {0}")]
    Truncation(String),

    #[error("sequence too short: need {needed}, have {have}")]
    Length { needed: usize, have: usize },

    #[error("valuation mismatch: {0}")]
    Valuation(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
