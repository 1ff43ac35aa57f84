use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bfqc-cli",
    version,
    about = "Belief-function operations, classical and on a simulated quantum circuit"
)]
pub struct Cli {
    /// Record the wall time of the operation in the result document.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a BBA file and report its normalization and special-BBA flags.
    Validate { path: PathBuf },
    /// Belief-function transform of one BBA.
    Transform {
        #[arg(long, value_enum)]
        kind: TransformKind,
        #[command(flatten)]
        quantum: QuantumArgs,
        path: PathBuf,
    },
    /// Combine two BBAs over the same frame.
    Combine {
        #[arg(long, value_enum)]
        rule: Rule,
        #[command(flatten)]
        quantum: QuantumArgs,
        m1: PathBuf,
        m2: PathBuf,
    },
    /// Similarity or distance between two BBAs.
    Similarity {
        #[arg(long, value_enum)]
        measure: Measure,
        #[command(flatten)]
        quantum: QuantumArgs,
        m1: PathBuf,
        m2: PathBuf,
    },
    /// Entropy of a BBA in bits.
    Entropy {
        #[arg(long, value_enum)]
        kind: EntropyKind,
        path: PathBuf,
    },
    /// Probability transform onto the singletons.
    Prob {
        #[arg(long, value_enum)]
        method: ProbMethod,
        #[command(flatten)]
        quantum: QuantumArgs,
        path: PathBuf,
    },
    /// Build the amplitude-encoding circuit; emit it and/or sample it.
    Prepare {
        path: PathBuf,
        #[arg(long, value_enum)]
        emit: Option<EmitFormat>,
        /// Destination of the emitted circuit (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Prepared amplitudes, Pl(C) and q(BC) of the three-element worked example.
    DemoExample3 {
        #[arg(long, default_value_t = 1024)]
        shots: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Five-measure similarity trend table as CSV.
    TrendFb {
        /// Destination CSV (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct QuantumArgs {
    #[arg(long, value_enum, default_value_t = Backend::Classical)]
    pub backend: Backend,
    /// Clock register size for the circuit backend.
    #[arg(long, default_value_t = 8)]
    pub clock_qubits: usize,
    /// Sample ancilla readouts with this many shots instead of reading exact probabilities.
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Classical,
    QuantumOracle,
    QuantumCircuit,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Self::Classical => "classical",
            Self::QuantumOracle => "quantum-oracle",
            Self::QuantumCircuit => "quantum-circuit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformKind {
    Bel,
    Pl,
    Q,
    Fbba,
    Betm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Ccr,
    Dcr,
    Dempster,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Measure {
    Jousselme,
    FbInner,
    Fidelity,
    Euclidean,
    InnerBba,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EntropyKind {
    Js,
    Fb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProbMethod {
    Ppt,
    Ptm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmitFormat {
    Qasm,
    CircuitJson,
}
