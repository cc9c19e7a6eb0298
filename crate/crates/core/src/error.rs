use thiserror::Error;

/// Errors raised by the geometric primitives and constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("perturbation gap {gap} is not below the smallest nonzero offset {limit}")]
    GapTooLarge { gap: String, limit: String },
    #[error("coordinate {axis} is not an exact grid power: {value}")]
    NotGridAligned { axis: usize, value: String },
    #[error("empty family")]
    EmptyFamily,
    #[error("point is not on the carrier flat")]
    NotOnCarrier,
    #[error("side of half-flat undecided for point {0}")]
    SideUndecided(String),
    #[error("half-flat witnesses disagree: {0}")]
    WitnessDisagreement(String),
    #[error("degenerate flat: {0}")]
    DegenerateFlat(String),
    #[error("partition infeasible: {0}")]
    PartitionInfeasible(String),
    #[error("separation infeasible: {0}")]
    SeparationInfeasible(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
