//! Distances and similarities between BBAs.

use crate::entropy::fbba;
use crate::error::{DstError, Result};
use crate::mass::MassFunction;

/// Jaccard kernel `|F∩G| / |F∪G|` with `(∅,∅) ↦ 1`.
pub fn jaccard(f: usize, g: usize) -> f64 {
    if f | g == 0 {
        1.0
    } else {
        (f & g).count_ones() as f64 / (f | g).count_ones() as f64
    }
}

/// `xᵀ·D_E·y` evaluated over the supports of `x` and `y`.
fn jaccard_form(x: &[f64], y: &[f64]) -> f64 {
    let sx: Vec<(usize, f64)> = x.iter().copied().enumerate().filter(|(_, v)| *v != 0.0).collect();
    let sy: Vec<(usize, f64)> = y.iter().copied().enumerate().filter(|(_, v)| *v != 0.0).collect();
    let mut acc = 0.0;
    for &(f, a) in &sx {
        for &(g, b) in &sy {
            acc += a * b * jaccard(f, g);
        }
    }
    acc
}

/// Jousselme distance `sqrt(½ (m1−m2)ᵀ D_E (m1−m2))`.
pub fn jousselme_distance(m1: &MassFunction, m2: &MassFunction) -> Result<f64> {
    m1.ensure_same_frame(m2)?;
    let diff: Vec<f64> = m1.masses().iter().zip(m2.masses()).map(|(a, b)| a - b).collect();
    Ok((0.5 * jaccard_form(&diff, &diff)).max(0.0).sqrt())
}

/// Evidence inner product `m1 · D_E · m2ᵀ`.
pub fn inner_bba(m1: &MassFunction, m2: &MassFunction) -> Result<f64> {
    m1.ensure_same_frame(m2)?;
    Ok(jaccard_form(m1.masses(), m2.masses()))
}

/// Normalized Euclidean distance `sqrt(½ Σ (m1−m2)²)`, in `[0, 1]`.
pub fn euclidean_distance(m1: &MassFunction, m2: &MassFunction) -> Result<f64> {
    m1.ensure_same_frame(m2)?;
    let ss: f64 = m1.masses().iter().zip(m2.masses()).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok((0.5 * ss).sqrt())
}

/// Classical fidelity `Σ sqrt(m1(F)·m2(F))` over the power set.
pub fn classical_fidelity(m1: &MassFunction, m2: &MassFunction) -> Result<f64> {
    m1.ensure_same_frame(m2)?;
    Ok(m1.masses().iter().zip(m2.masses()).map(|(a, b)| (a * b).sqrt()).sum())
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Fractal-based belief inner product: cosine similarity of the two FBBAs.
pub fn fb_inner_product(m1: &MassFunction, m2: &MassFunction) -> Result<f64> {
    m1.ensure_same_frame(m2)?;
    let f1 = fbba(m1)?;
    let f2 = fbba(m2)?;
    let (n1, n2) = (l2(f1.masses()), l2(f2.masses()));
    if n1 == 0.0 || n2 == 0.0 {
        return Err(DstError::ZeroVector);
    }
    let dot: f64 = f1.masses().iter().zip(f2.masses()).map(|(a, b)| a * b).sum();
    Ok(dot / (n1 * n2))
}
