use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DstError {
    #[error("frame must contain at least one element")]
    EmptyFrame,
    #[error("frame has {0} elements, at most {max} are supported", max = crate::MAX_ELEMENTS)]
    FrameTooLarge(usize),
    #[error("invalid frame element label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate frame element {0:?}")]
    DuplicateElement(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("focal set {0} listed more than once")]
    DuplicateFocalSet(String),
    #[error("negative mass {mass} on focal set {focal}")]
    NegativeMass { focal: String, mass: f64 },
    #[error("mass {mass} on focal set {focal} exceeds 1")]
    MassAboveOne { focal: String, mass: f64 },
    #[error("masses sum to {0}, expected 1")]
    MassSumViolation(f64),
    #[error("non-finite mass on focal set {0}")]
    NonFiniteMass(String),
    #[error("inverse transform is not a mass function (entry {value} at index {index})")]
    InverseNotBba { index: usize, value: f64 },
    #[error("operands are defined over different frames")]
    FrameMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("total conflict: conjunctive mass on the empty set is {0}")]
    TotalConflict(f64),
    #[error("mass on the empty set is {0}; transform undefined")]
    DegenerateEmptyMass(f64),
    #[error("singleton plausibilities sum to zero")]
    ZeroPlausibility,
    #[error("zero vector cannot be normalized")]
    ZeroVector,
}

pub type Result<T> = std::result::Result<T, DstError>;
