use bfqc::BfqcError;
use dst_core::DstError;
use qsim::QsimError;
use serde::Serialize;
use thiserror::Error;

/// Command failure, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or invalid input; exit code 1.
    #[error("{message}")]
    Validation { kind: String, message: String },
    /// The operation itself failed (conflict, singularity, …); exit code 2.
    #[error("{message}")]
    Computation { kind: String, message: String },
    /// Exit code 3.
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Serialize)]
struct Diagnostic<'a> {
    error: &'a str,
    category: &'a str,
    message: String,
}

impl CliError {
    pub fn validation(kind: &str, message: impl Into<String>) -> Self {
        Self::Validation { kind: kind.to_string(), message: message.into() }
    }

    pub fn computation(kind: &str, message: impl Into<String>) -> Self {
        Self::Computation { kind: kind.to_string(), message: message.into() }
    }

    pub fn io(path: &std::path::Path, err: &std::io::Error) -> Self {
        Self::Io { path: path.display().to_string(), message: err.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation { .. } => 1,
            Self::Computation { .. } => 2,
            Self::Io { .. } => 3,
        }
    }

    pub fn kind(&self) -> &str {
        match self {
            Self::Validation { kind, .. } | Self::Computation { kind, .. } => kind,
            Self::Io { .. } => "Io",
        }
    }

    fn category(&self) -> &'static str {
        match self {
            Self::Validation { .. } => "validation",
            Self::Computation { .. } => "computation",
            Self::Io { .. } => "io",
        }
    }

    /// One-line JSON diagnostic for stderr.
    pub fn diagnostic(&self) -> String {
        let d = Diagnostic { error: self.kind(), category: self.category(), message: self.to_string() };
        serde_json::to_string(&d).expect("diagnostic serializes")
    }
}

/// Variant name from a `Debug` rendering, e.g. `TotalConflict(1.0)` → `TotalConflict`.
fn variant_name(debug: &str) -> String {
    debug.split(['(', ' ', '{']).next().unwrap_or(debug).to_string()
}

impl From<DstError> for CliError {
    fn from(e: DstError) -> Self {
        let kind = variant_name(&format!("{e:?}"));
        match e {
            DstError::TotalConflict(_)
            | DstError::DegenerateEmptyMass(_)
            | DstError::ZeroPlausibility
            | DstError::ZeroVector
            | DstError::InverseNotBba { .. } => Self::Computation { kind, message: e.to_string() },
            _ => Self::Validation { kind, message: e.to_string() },
        }
    }
}

impl From<QsimError> for CliError {
    fn from(e: QsimError) -> Self {
        Self::Computation { kind: variant_name(&format!("{e:?}")), message: e.to_string() }
    }
}

impl From<BfqcError> for CliError {
    fn from(e: BfqcError) -> Self {
        match e {
            BfqcError::Dst(e) => e.into(),
            BfqcError::Qsim(e) => e.into(),
            BfqcError::InvalidConfig(_) => Self::validation("InvalidConfig", e.to_string()),
            _ => Self::Computation { kind: variant_name(&format!("{e:?}")), message: e.to_string() },
        }
    }
}
