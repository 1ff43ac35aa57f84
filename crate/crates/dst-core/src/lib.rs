//! Dense Dempster–Shafer engine over an `n`-element frame.
//!
//! Mass functions, belief vectors and transform matrices are stored densely
//! over the `2^n` subsets, indexed by bitmask: bit `k` of the index is set
//! exactly when element `k` belongs to the subset. Transforms run through
//! `O(n·2^n)` subset/superset sums; the explicit matrices are kept for the
//! quantum pipelines and for cross-checking.

pub mod combine;
pub mod entropy;
pub mod error;
pub mod frame;
pub mod mass;
pub mod matrix;
pub mod prob;
pub mod similarity;
pub mod transform;

#[cfg(test)]
mod testutil;

/// Largest supported frame (dense storage of `2^n` entries).
pub const MAX_ELEMENTS: usize = 20;

pub use combine::{
    combine_conjunctive, combine_dempster, combine_disjunctive, generalization_matrix, normalize_conflict,
    specialization_matrix,
};
pub use entropy::{fb_entropy, fbba, js_entropy, shannon};
pub use error::{DstError, Result};
pub use frame::{FocalIndex, Frame};
pub use mass::{validate_bba, MassFunction};
pub use matrix::{build_matrix, MatrixKind, TransformMatrix};
pub use prob::{bet_m, betp, normalize_plausibilities, pl_p, singleton_plausibilities};
pub use similarity::{classical_fidelity, euclidean_distance, fb_inner_product, inner_bba, jousselme_distance};
pub use transform::{b_from_mass, bel_from_mass, mass_from_q, pl_from_mass, q_from_mass, BeliefKind, BeliefVector};
