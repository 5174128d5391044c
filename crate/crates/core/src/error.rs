use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad prime {p}: the input has negative Gauss valuation at {p}")]
    BadPrime { p: u64 },
    #[error("division by the zero operator")]
    DivisionByZeroOperator,
    #[error("a coefficient has a pole at 0 that the series valuation cannot absorb")]
    PoleAtOrigin,
    #[error("0 is not an ordinary point of the operator")]
    NotOrdinaryPoint,
    #[error("irregular singular point at {0}")]
    IrregularPoint(String),
    #[error("no nonzero approximant exists for these parameters")]
    NoSolution,
    #[error("series known to order {available}, need at least {needed}")]
    InsufficientTruncation { needed: usize, available: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("operator mixes the D and theta derivations")]
    MixedBasis,
    #[error("basis mismatch between operands")]
    BasisMismatch,
    #[error("unknown catalog id {0:?}")]
    UnknownCatalogId(String),
}

pub type Result<T> = std::result::Result<T, Error>;
