use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A sequence spec string could not be parsed.
    #[error("malformed sequence spec: offending token `{token}`")]
    Parse { token: String },

    /// An index fell outside the range where the object is defined.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// Arguments violate the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A precondition of a checker or formula (e.g. "cobweb only") does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("natural join condition violated: last level has size {left}, first level has size {right}")]
    JoinCondition { left: usize, right: usize },

    #[error("enumeration cap {cap} exceeded: {projected} chains projected")]
    CapExceeded { projected: BigUint, cap: u64 },

    #[error("invalid document: {0}")]
    Document(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
