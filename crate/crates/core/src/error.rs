use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group too large: order {order} exceeds cap {cap}")]
    GroupTooLarge { order: u128, cap: usize },
    #[error("invalid group factor {0}: cyclic orders must be >= 1")]
    InvalidFactor(u64),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("sets belong to different groups ({0} vs {1})")]
    GroupMismatch(String, String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("no candidates")]
    NoCandidates,
    #[error("undefined index k={0}: sequences start at k=9")]
    UndefinedIndex(u64),
    #[error("below domain: {0}")]
    BelowDomain(String),
    #[error("Kneser hypothesis violated: {0}")]
    KneserHypothesis(String),
    #[error("bipartition impossible for self-inverse element {0}")]
    SelfInverse(String),
    #[error("zero not allowed in the ground set")]
    ZeroNotAllowed,
    #[error("{element} is not a unit modulo {modulus}")]
    NotAUnit { element: String, modulus: u64 },
    #[error("enumeration too large: {count} candidates (limit {limit})")]
    TooLarge { count: u128, limit: u128 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {msg}")]
    ParseLine { line: usize, msg: String },
}
