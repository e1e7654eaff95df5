use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("incompatible exponent lattices: {left} and {right} differ by a non-integer")]
    LatticeMismatch {
        left: Box<BigRational>,
        right: Box<BigRational>,
    },

    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no relation found up to order {max_order} within weight bound {weight_bound}")]
    NoRelation {
        max_order: usize,
        weight_bound: BigRational,
    },

    #[error("resonance at n = {n}: indicial polynomial vanishes at {exponent}")]
    Resonance { n: usize, exponent: BigRational },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
