use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QsimError {
    #[error("index {index} out of range for {qubits} qubits")]
    IndexOutOfRange { index: usize, qubits: usize },
    #[error("qubit {0} used more than once in one operation")]
    IndexOverlap(usize),
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("outcome has probability {0:e}; cannot postselect")]
    ImpossibleOutcome(f64),
    #[error("{0} controls exceed the decomposition limit of {max}", max = crate::decompose::MAX_CONTROLS)]
    TooManyControls(usize),
    #[error("registers have different qubit counts ({0} vs {1})")]
    QubitCountMismatch(usize, usize),
    #[error("operation cannot be decomposed into basic gates: {0}")]
    NotDecomposable(String),
    #[error("shots must be at least 1")]
    NoShots,
    #[error("qasm line {line}: {message}")]
    Qasm { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, QsimError>;
