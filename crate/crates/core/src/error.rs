use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is not monic (leading coefficient {0})")]
    NotMonic(String),
    #[error("polynomial degree {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("polynomial is not squarefree (discriminant is zero)")]
    NotSquarefree,
    #[error("polynomial is reducible over the rationals")]
    Reducible,
    #[error("cannot take the logarithm of zero")]
    LogOfZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("norm table covers {limit} but {needed} is required")]
    TableTooSmall { limit: f64, needed: f64 },
    #[error("prime {0} exceeds the supported modulus range")]
    PrimeTooLarge(u64),
    #[error("cache digest mismatch: expected {expected}, found {found}")]
    DigestMismatch { expected: String, found: String },
    #[error("malformed cache file: {0}")]
    MalformedCache(String),
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),
    #[error("predicate is false at the upper end T = {0}")]
    PredicateFalseAtUpper(u64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
