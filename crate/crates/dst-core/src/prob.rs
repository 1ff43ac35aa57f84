//! Probability transformations: pignistic (BetP) and normalized plausibility (Pl_P).

use crate::combine::TOTAL_CONFLICT_TOL;
use crate::error::{DstError, Result};
use crate::frame::FocalIndex;
use crate::mass::MassFunction;
use crate::transform::{pl_from_mass, BeliefKind, BeliefVector};

/// `BetP(θ_i) = Σ_{θ_i∈F} m(F) / (|F|·(1 − m(∅)))`.
pub fn betp(m: &MassFunction) -> Result<Vec<f64>> {
    let empty = m.empty_mass();
    if empty >= 1.0 - TOTAL_CONFLICT_TOL {
        return Err(DstError::DegenerateEmptyMass(empty));
    }
    let scale = 1.0 - empty;
    let mut p = vec![0.0; m.n()];
    for (f, v) in m.focal_sets().filter(|(f, _)| !f.is_empty()) {
        let share = v / (f.cardinality() as f64 * scale);
        for (i, pi) in p.iter_mut().enumerate() {
            if f.contains(i) {
                *pi += share;
            }
        }
    }
    Ok(p)
}

/// Pignistic measure extended to the power set, `BetM(F) = Σ_{θ∈F} BetP(θ)`.
pub fn bet_m(m: &MassFunction) -> Result<BeliefVector> {
    let p = betp(m)?;
    let values = (0..m.frame().size())
        .map(|f| {
            let f = FocalIndex::from(f);
            p.iter().enumerate().filter(|(i, _)| f.contains(*i)).map(|(_, v)| v).sum()
        })
        .collect();
    Ok(BeliefVector::new(m.frame().clone(), BeliefKind::BetM, values))
}

/// Singleton plausibilities `Pl(θ_i)`.
pub fn singleton_plausibilities(m: &MassFunction) -> Vec<f64> {
    let pl = pl_from_mass(m);
    (0..m.n()).map(|i| pl.get(FocalIndex::singleton(i))).collect()
}

/// Normalized plausibility `Pl_P(θ_i) = Pl(θ_i) / Σ_j Pl(θ_j)`.
pub fn pl_p(m: &MassFunction) -> Result<Vec<f64>> {
    normalize_plausibilities(&singleton_plausibilities(m))
}

pub fn normalize_plausibilities(pl: &[f64]) -> Result<Vec<f64>> {
    let total: f64 = pl.iter().sum();
    if total <= 0.0 {
        return Err(DstError::ZeroPlausibility);
    }
    Ok(pl.iter().map(|v| v / total).collect())
}
