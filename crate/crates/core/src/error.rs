use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("{elem} is not a unit in {ring}")]
    NonUnit { ring: String, elem: String },
    #[error("{0} is not a field")]
    NotAField(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid precision {precision} for p = {p}: {reason}")]
    InvalidPrecision { p: u64, precision: u32, reason: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("elements belong to different algebras")]
    ContextMismatch,
    #[error("empty word")]
    EmptyWord,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("semigroup has no identity element")]
    NoIdentity,
    #[error("letters of a bare ordered set cannot be multiplied")]
    NoProduct,
    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),
    #[error("element {0} does not belong to this semigroup")]
    ForeignElement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
