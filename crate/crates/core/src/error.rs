use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("difference step w must be nonzero")]
    ZeroStep,

    #[error("alpha must differ from beta")]
    EqualAlphaBeta,

    #[error("series exponent must have a zero constant term")]
    NonzeroConstantTerm,

    #[error("constant term of exponent depends on x (degree {0})")]
    NonConstantExponentTerm(usize),

    #[error("logarithm needs a series with constant term 1")]
    LogConstantTerm,

    #[error("vanishing Pochhammer denominator ({parameter})_{k}")]
    VanishingPochhammer { parameter: String, k: usize },

    #[error("sequence satisfies no {terms}-term recurrence: inconsistent at index {index}")]
    NoRecurrence { terms: usize, index: usize },

    #[error("polynomial at index {0} is not monic of degree {0}")]
    NotMonic(usize),

    #[error("basis element at index {0} does not have degree {0}")]
    BadBasis(usize),

    #[error("degree {degree} exceeds basis of size {size}")]
    DegreeExceedsBasis { degree: usize, size: usize },

    #[error("need N >= {need}, got N = {got}")]
    InsufficientOrder { need: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
