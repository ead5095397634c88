use thiserror::Error;

/// Errors raised by the engine. Every operation is exact, so these are all
/// contract violations rather than numerical failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid coordinate space: {0}")]
    InvalidSpace(String),

    #[error("coordinate spaces differ: [{left}] vs [{right}]")]
    SpaceMismatch { left: String, right: String },

    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),

    #[error("unknown vector field `{0}`")]
    UnknownField(String),

    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("invalid slot permutation: {0}")]
    InvalidPermutation(String),

    #[error("slot {found} exceeds the supported maximum {max}")]
    SlotOutOfRange { max: u32, found: u32 },

    #[error("form is not in the slot-1 degree zero part of the second iterated algebra")]
    NotInLambda01,

    #[error("wrong multidegree: expected {expected}, found {found}")]
    WrongMultiDegree { expected: String, found: String },

    #[error("form is not a pure coefficient")]
    NotACoefficient,

    #[error("division by zero")]
    DivisionByZero,

    #[error("division by a non-constant polynomial")]
    NonConstantDivision,

    #[error("invalid tensor: {0}")]
    InvalidTensor(String),

    #[error("malformed JSON document: {0}")]
    Json(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
