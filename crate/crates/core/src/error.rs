use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("zero polynomial is not a valid input to {0}")]
    ZeroPolynomial(&'static str),

    #[error("constant polynomial is not a valid input to {0}")]
    ConstantPolynomial(&'static str),

    #[error("prime {q} divides the leading coefficient")]
    LeadingCoefficientVanishes { q: u64 },

    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("mismatched degrees: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("group of order {order} exceeds the enumeration budget {budget}")]
    BudgetExceeded { order: u128, budget: u128 },

    #[error("only {found} unramified primes available, at least {needed} required")]
    TooFewPrimes { found: usize, needed: usize },

    #[error("malformed certificate: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Certificate(e.to_string())
    }
}
