use dst_core::DstError;
use qsim::QsimError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BfqcError {
    #[error(transparent)]
    Dst(#[from] DstError),
    #[error(transparent)]
    Qsim(#[from] QsimError),
    #[error("query needs a non-empty focal set")]
    EmptyFocal,
    #[error("Bel is answered by two circuits; use belief_query_circuits")]
    CompositeQuery,
    #[error("matrix dimension {0} is not a power of two")]
    BadDimension(usize),
    #[error("evolved vector vanishes (norm {0:e}); input lies in the kernel")]
    SingularMatrix(f64),
    #[error("postselection probability {0:e} is too small")]
    PostselectionFailed(f64),
    #[error("t0·max|λ| = {0} reaches π; eigenphases would alias")]
    ClockOverflow(f64),
    #[error("invalid evolution config: {0}")]
    InvalidConfig(String),
    #[error("amplitude {index} has negative real part {value}")]
    NegativeAmplitude { index: usize, value: f64 },
}

pub type Result<T> = std::result::Result<T, BfqcError>;
