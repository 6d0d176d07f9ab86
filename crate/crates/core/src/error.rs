use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("operation not supported over {ring}: {what}")]
    UnsupportedRing { ring: String, what: String },

    #[error("not invertible (determinant or norm {0})")]
    NotInvertible(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("Cayley-Dickson parameter {0} is not a unit")]
    NonUnitParameter(String),

    #[error("quadratic form is not regular")]
    NotRegular,

    #[error("element does not have norm 1 (norm {0})")]
    NotUnitNorm(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("map is not an algebra isomorphism: {0}")]
    NotIsomorphism(String),

    #[error("triple is not related: {0}")]
    NotRelated(String),

    #[error("element is not in the spin group: {0}")]
    NotSpin(String),

    #[error("search exhausted: {0}")]
    NotFound(String),

    #[error("target pair not reached by the generator set: {0}")]
    NotReached(String),

    #[error("unsupported field size {0}")]
    UnsupportedFieldSize(u64),

    #[error("orbit exceeds the configured ceiling of {0} pairs")]
    CeilingExceeded(u64),
}
