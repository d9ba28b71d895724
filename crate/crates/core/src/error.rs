use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error: a
/// precondition of the requested computation does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid permutation {0:?}: not a bijection of 1..=n")]
    InvalidPermutation(Vec<usize>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} {value} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("element is not a unit: {0}")]
    NotUnit(String),

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("weight difference is not integral: {0}")]
    NonIntegral(String),

    #[error("pair ({w1}, {w2}) is not good")]
    NotGoodPair { w1: String, w2: String },
}

impl Error {
    /// Short machine-readable tag for structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SizeMismatch { .. } => "size_mismatch",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::Parse(_) => "parse",
            Error::Precondition(_) => "precondition",
            Error::BoundExceeded { .. } => "bound_exceeded",
            Error::NotUnit(_) => "not_unit",
            Error::NotInvertible => "not_invertible",
            Error::NonIntegral(_) => "non_integral",
            Error::NotGoodPair { .. } => "not_good_pair",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_size(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::SizeMismatch { expected, found })
    }
}
