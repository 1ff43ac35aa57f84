//! Belief, plausibility and commonality functions computed with
//! `O(n·2^n)` subset/superset sum transforms over the bitmask lattice.

use crate::error::Result;
use crate::frame::{FocalIndex, Frame};
use crate::mass::MassFunction;

/// Tolerance for negative entries produced by the inverse Möbius transform.
pub const INVERSE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeliefKind {
    Bel,
    Pl,
    Q,
    /// Implicability `b(F) = Bel(F) + m(∅)`.
    B,
    BetM,
    Fbba,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeliefVector {
    frame: Frame,
    kind: BeliefKind,
    values: Vec<f64>,
}

impl BeliefVector {
    pub(crate) fn new(frame: Frame, kind: BeliefKind, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), frame.size());
        Self { frame, kind, values }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn kind(&self) -> BeliefKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, focal: FocalIndex) -> f64 {
        self.values[focal.index()]
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

fn for_each_pair(xs: &mut [f64], mut f: impl FnMut(&mut f64, &mut f64)) {
    assert!(xs.len().is_power_of_two());
    let mut half = 1;
    while half < xs.len() {
        for block in xs.chunks_exact_mut(half * 2) {
            let (lo, hi) = block.split_at_mut(half);
            for (z, o) in lo.iter_mut().zip(hi) {
                f(z, o);
            }
        }
        half <<= 1;
    }
}

/// In place `x[F] ← Σ_{G⊆F} x[G]` (zeta transform).
pub fn subset_sums(xs: &mut [f64]) {
    for_each_pair(xs, |z, o| *o += *z);
}

/// Inverse of [`subset_sums`].
pub fn inv_subset_sums(xs: &mut [f64]) {
    for_each_pair(xs, |z, o| *o -= *z);
}

/// In place `x[F] ← Σ_{F⊆G} x[G]`.
pub fn superset_sums(xs: &mut [f64]) {
    for_each_pair(xs, |z, o| *z += *o);
}

/// Inverse of [`superset_sums`] (alternating-sign Möbius transform).
pub fn inv_superset_sums(xs: &mut [f64]) {
    for_each_pair(xs, |z, o| *z -= *o);
}

/// `b(F) = Σ_{G⊆F} m(G)`, including the empty set.
pub fn b_from_mass(m: &MassFunction) -> BeliefVector {
    let mut v = m.masses().to_vec();
    subset_sums(&mut v);
    BeliefVector::new(m.frame().clone(), BeliefKind::B, v)
}

/// `Bel(F) = Σ_{∅≠G⊆F} m(G)`.
pub fn bel_from_mass(m: &MassFunction) -> BeliefVector {
    let empty = m.empty_mass();
    let mut v = m.masses().to_vec();
    subset_sums(&mut v);
    for x in &mut v {
        *x -= empty;
    }
    v[0] = 0.0;
    BeliefVector::new(m.frame().clone(), BeliefKind::Bel, v)
}

/// `Pl(F) = Σ_{G∩F≠∅} m(G)`, computed as `Σm − b(F̄)`.
pub fn pl_from_mass(m: &MassFunction) -> BeliefVector {
    let mut b = m.masses().to_vec();
    subset_sums(&mut b);
    let total = b[b.len() - 1];
    let full = b.len() - 1;
    let v = (0..b.len()).map(|f| total - b[full ^ f]).collect();
    BeliefVector::new(m.frame().clone(), BeliefKind::Pl, v)
}

/// `q(F) = Σ_{F⊆G} m(G)`.
pub fn q_from_mass(m: &MassFunction) -> BeliefVector {
    let mut v = m.masses().to_vec();
    superset_sums(&mut v);
    BeliefVector::new(m.frame().clone(), BeliefKind::Q, v)
}

/// Recovers masses from a commonality vector: `m(F) = Σ_{F⊆G} (−1)^{|G|−|F|} q(G)`.
pub fn mass_from_q(q: &BeliefVector) -> Result<MassFunction> {
    mass_from_commonality(q.frame(), q.values())
}

pub fn mass_from_commonality(frame: &Frame, q: &[f64]) -> Result<MassFunction> {
    let mut v = q.to_vec();
    inv_superset_sums(&mut v);
    MassFunction::from_computed(frame.clone(), v, INVERSE_TOL)
}

/// Recovers masses from an implicability vector (inverse zeta transform).
pub fn mass_from_implicability(frame: &Frame, b: &[f64]) -> Result<MassFunction> {
    let mut v = b.to_vec();
    inv_subset_sums(&mut v);
    MassFunction::from_computed(frame.clone(), v, INVERSE_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::example3;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    // Direct-definition oracles, O(4^n).
    fn bel_direct(m: &[f64], f: usize) -> f64 {
        (1..m.len()).filter(|&g| g & f == g).map(|g| m[g]).sum()
    }
    fn pl_direct(m: &[f64], f: usize) -> f64 {
        (0..m.len()).filter(|&g| g & f != 0).map(|g| m[g]).sum()
    }
    fn q_direct(m: &[f64], f: usize) -> f64 {
        (0..m.len()).filter(|&g| g & f == f).map(|g| m[g]).sum()
    }

    #[test]
    fn example_three_values() {
        let m = example3();
        let bel = bel_from_mass(&m);
        let pl = pl_from_mass(&m);
        let q = q_from_mass(&m);
        assert!(close(bel.values()[0b011], 1.0 / 3.0));
        assert!(close(bel.values()[0b110], 5.0 / 9.0));
        assert!(close(bel.values()[0b111], 1.0));
        assert!(close(pl.values()[0b100], 2.0 / 3.0));
        assert!(close(pl.values()[0b001], 4.0 / 9.0));
        assert!(close(pl.values()[0b010], 13.0 / 18.0));
        assert!(close(q.values()[0b110], 4.0 / 9.0));
        assert!(close(q.values()[0b001], 4.0 / 9.0));
        assert!(close(q.values()[0], 1.0));
        for f in 0..8 {
            assert!(close(bel.values()[f], bel_direct(m.masses(), f)));
            assert!(close(pl.values()[f], pl_direct(m.masses(), f)));
            assert!(close(q.values()[f], q_direct(m.masses(), f)));
        }
    }

    #[test]
    fn vacuous_functions() {
        let m = MassFunction::vacuous(Frame::numbered(3).unwrap());
        let bel = bel_from_mass(&m);
        let pl = pl_from_mass(&m);
        for f in 0..8 {
            assert_eq!(bel.values()[f], if f == 7 { 1.0 } else { 0.0 });
            assert_eq!(pl.values()[f], if f == 0 { 0.0 } else { 1.0 });
        }
    }

    #[test]
    fn bayesian_bel_is_additive() {
        let frame = Frame::numbered(3).unwrap();
        let m = MassFunction::from_dense(frame, vec![0.0, 0.2, 0.3, 0.0, 0.5, 0.0, 0.0, 0.0]).unwrap();
        let bel = bel_from_mass(&m);
        assert!(close(bel.values()[0b101], 0.7));
        assert!(close(bel.values()[0b110], 0.8));
        let pl = pl_from_mass(&m);
        assert!(bel.values().iter().zip(pl.values()).all(|(a, b)| close(*a, *b)));
    }

    #[test]
    fn subnormal_bel_excludes_empty_mass() {
        let frame = Frame::numbered(2).unwrap();
        let m = MassFunction::from_dense(frame, vec![0.3, 0.2, 0.0, 0.5]).unwrap();
        let bel = bel_from_mass(&m);
        let b = b_from_mass(&m);
        assert!(close(bel.values()[0b01], 0.2));
        assert!(close(b.values()[0b01], 0.5));
        assert_eq!(bel.values()[0], 0.0);
        let back = mass_from_implicability(m.frame(), b.values()).unwrap();
        assert!(back.masses().iter().zip(m.masses()).all(|(a, b)| close(*a, *b)));
    }

    #[test]
    fn inverse_rejects_non_commonality() {
        let frame = Frame::numbered(1).unwrap();
        // q = (1, 2) would give m(∅) = -1.
        let err = mass_from_commonality(&frame, &[1.0, 2.0]).unwrap_err();
        assert!(matches!(err, crate::DstError::InverseNotBba { index: 0, .. }));
    }
}
