//! Conjunctive, disjunctive and Dempster combination.
//!
//! The production path multiplies commonality (resp. implicability)
//! functions pointwise in `O(n·2^n)`. [`by_definition`] keeps the
//! `O(4^n)` focal-set enumeration and the matrix forms `S_m`, `G_m` are
//! available for cross-checking.

use crate::error::{DstError, Result};
use crate::mass::MassFunction;
use crate::matrix::{build_matrix, MatrixKind, TransformMatrix};
use crate::transform::{inv_subset_sums, inv_superset_sums, subset_sums, superset_sums, INVERSE_TOL};

/// Conflict above which Dempster normalization is refused.
pub const TOTAL_CONFLICT_TOL: f64 = 1e-12;

/// Conjunctive rule: `m(F) = Σ_{G∩H=F} m1(G)·m2(H)`; mass on `∅` is kept.
pub fn combine_conjunctive(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    m1.ensure_same_frame(m2)?;
    let mut q1 = m1.masses().to_vec();
    let mut q2 = m2.masses().to_vec();
    superset_sums(&mut q1);
    superset_sums(&mut q2);
    for (a, b) in q1.iter_mut().zip(&q2) {
        *a *= b;
    }
    inv_superset_sums(&mut q1);
    MassFunction::from_computed(m1.frame().clone(), q1, INVERSE_TOL)
}

/// Disjunctive rule: `m(F) = Σ_{G∪H=F} m1(G)·m2(H)`.
pub fn combine_disjunctive(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    m1.ensure_same_frame(m2)?;
    let mut b1 = m1.masses().to_vec();
    let mut b2 = m2.masses().to_vec();
    subset_sums(&mut b1);
    subset_sums(&mut b2);
    for (a, b) in b1.iter_mut().zip(&b2) {
        *a *= b;
    }
    inv_subset_sums(&mut b1);
    MassFunction::from_computed(m1.frame().clone(), b1, INVERSE_TOL)
}

/// Dempster's rule: normalized conjunctive combination.
pub fn combine_dempster(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    normalize_conflict(&combine_conjunctive(m1, m2)?)
}

/// Moves a subnormal BBA to its normal form by dividing out `1 − m(∅)`.
pub fn normalize_conflict(m: &MassFunction) -> Result<MassFunction> {
    let conflict = m.empty_mass();
    if conflict >= 1.0 - TOTAL_CONFLICT_TOL {
        return Err(DstError::TotalConflict(conflict));
    }
    let scale = 1.0 - conflict;
    let mut v: Vec<f64> = m.masses().iter().map(|x| x / scale).collect();
    v[0] = 0.0;
    MassFunction::from_computed(m.frame().clone(), v, INVERSE_TOL)
}

/// Specialization matrix `S_m = M_q⁻¹ · diag(q) · M_q`, so that `S_{m1} · m2 = m1 ∩ m2`.
pub fn specialization_matrix(m: &MassFunction) -> Result<TransformMatrix> {
    let frame = m.frame();
    let q = crate::transform::q_from_mass(m);
    let mq = build_matrix(MatrixKind::Q, frame, None)?;
    let mq_inv = build_matrix(MatrixKind::QInv, frame, None)?;
    let diag = build_matrix(MatrixKind::Diag, frame, Some(q.values()))?;
    mq_inv.mul(&diag)?.mul(&mq)
}

/// Generalization matrix `G_m = M_b⁻¹ · diag(b) · M_b`, so that `G_{m1} · m2 = m1 ∪ m2`.
pub fn generalization_matrix(m: &MassFunction) -> Result<TransformMatrix> {
    let frame = m.frame();
    let b = crate::transform::b_from_mass(m);
    let mb = build_matrix(MatrixKind::B, frame, None)?;
    let mb_inv = build_matrix(MatrixKind::BInv, frame, None)?;
    let diag = build_matrix(MatrixKind::Diag, frame, Some(b.values()))?;
    mb_inv.mul(&diag)?.mul(&mb)
}

/// Direct focal-set enumeration, `O(4^n)`.
pub mod by_definition {
    use super::*;

    fn pairwise(m1: &MassFunction, m2: &MassFunction, op: impl Fn(usize, usize) -> usize) -> Result<MassFunction> {
        m1.ensure_same_frame(m2)?;
        let mut out = vec![0.0; m1.frame().size()];
        for (g, a) in m1.focal_sets() {
            for (h, b) in m2.focal_sets() {
                out[op(g.index(), h.index())] += a * b;
            }
        }
        MassFunction::from_computed(m1.frame().clone(), out, INVERSE_TOL)
    }

    pub fn conjunctive(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
        pairwise(m1, m2, |g, h| g & h)
    }

    pub fn disjunctive(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
        pairwise(m1, m2, |g, h| g | h)
    }
}
