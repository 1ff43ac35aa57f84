//! Dense state-vector simulation for small registers.
//!
//! Bit `j` of a basis index is qubit `j`, so `|q_{k−1} … q_1 q_0⟩` has
//! index `Σ q_j·2^j`. Gates act in place on the amplitude vector through
//! bit-masked strides; controlled gates touch only the amplitudes whose
//! control bits match.

pub mod circuit;
pub mod decompose;
pub mod error;
pub mod gate;
pub mod linalg;
pub mod measure;
pub mod qasm;
pub mod qft;
pub mod state;

pub type CMatrix = nalgebra::DMatrix<num_complex::Complex64>;
pub use num_complex::Complex64;

pub use circuit::{Circuit, Operation};
pub use decompose::{decompose_circuit, decompose_multicontrolled, is_basic, MAX_CONTROLS};
pub use error::{QsimError, Result};
pub use gate::{Control, ControlSpec, Gate};
pub use linalg::{hermitian_eigen, matrix_exponential, unitary_deviation};
pub use measure::{sample, MeasurementRecord};
pub use qasm::{parse_qasm, to_qasm};
pub use qft::{inverse_qft_circuit, qft_circuit};
pub use state::StateVector;
