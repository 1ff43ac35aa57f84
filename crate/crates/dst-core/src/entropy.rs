//! Fractal-based BBA and the entropies built on it. Logs are base 2.

use crate::error::Result;
use crate::mass::MassFunction;
use crate::prob::pl_p;
use crate::transform::{superset_sums, INVERSE_TOL};

/// Fractal-based BBA: every focal mass is shared equally among the
/// `2^|G| − 1` non-empty subsets of its focal set. `m(∅)` passes through.
pub fn fbba(m: &MassFunction) -> Result<MassFunction> {
    let mut w: Vec<f64> = m
        .masses()
        .iter()
        .enumerate()
        .map(|(g, &v)| if g == 0 { 0.0 } else { v / ((1u64 << g.count_ones()) - 1) as f64 })
        .collect();
    superset_sums(&mut w);
    w[0] = m.empty_mass();
    MassFunction::from_computed(m.frame().clone(), w, INVERSE_TOL)
}

/// Shannon entropy in bits with `0·log 0 = 0`.
pub fn shannon(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.log2()).sum::<f64>()
}

/// FB entropy: Shannon entropy of the fractal-based BBA.
pub fn fb_entropy(m: &MassFunction) -> Result<f64> {
    Ok(shannon(fbba(m)?.masses()))
}

/// Generalized Hartley non-specificity `Σ m(F)·log2|F|`.
pub fn generalized_hartley(m: &MassFunction) -> f64 {
    m.focal_sets().filter(|(f, _)| !f.is_empty()).map(|(f, v)| v * (f.cardinality() as f64).log2()).sum()
}

/// JS entropy: discord `H(Pl_P)` plus generalized Hartley non-specificity.
pub fn js_entropy(m: &MassFunction) -> Result<f64> {
    Ok(shannon(&pl_p(m)?) + generalized_hartley(m))
}
