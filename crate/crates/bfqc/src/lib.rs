//! Quantum-circuit constructions for belief functions, simulated on
//! `qsim` and checked against the classical results of `dst-core`.
//!
//! A BBA over `n` elements is held by `n` qubits as `|m⟩ = Σ_F √m(F) |F⟩`,
//! where the basis index of `F` is its focal-set bitmask.

pub mod encoding;
pub mod error;
pub mod meob;
pub mod pipelines;
pub mod query;

#[cfg(test)]
mod testutil;

pub use encoding::{
    build_preparation_tree, layer_counts, preparation_circuit, prepare_bba_state, synthesize_preparation_circuit,
    PreparationTree,
};
pub use error::{BfqcError, Result};
pub use meob::{evolve_state, hermitian_embed, meob, Backend, HermitianEmbedding, MeobConfig, MeobOutcome};
pub use pipelines::{belief_functions_qc, ccr_qc, dcr_qc, dempster_qc, fb_inner_product_qc, ppt_qc, ptm_qc, QcOutput};
pub use query::{belief_query_circuit, belief_query_circuits, estimate_belief, BeliefQuery, QueryKind, Readout};
pub use swap_test::{swap_test, swap_test_circuit, SwapTestOutcome};
