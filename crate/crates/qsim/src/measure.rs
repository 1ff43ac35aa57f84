use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{QsimError, Result};
use crate::state::StateVector;

/// Shot counts keyed by basis index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub shots: u64,
    pub seed: u64,
    pub counts: BTreeMap<usize, u64>,
}

impl MeasurementRecord {
    pub fn count(&self, index: usize) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    pub fn frequency(&self, index: usize) -> f64 {
        self.count(index) as f64 / self.shots as f64
    }

    /// Fraction of shots in which `qubit` read `outcome`.
    pub fn marginal(&self, qubit: usize, outcome: bool) -> f64 {
        let hits: u64 = self.counts.iter().filter(|(i, _)| (*i >> qubit & 1 == 1) == outcome).map(|(_, c)| c).sum();
        hits as f64 / self.shots as f64
    }
}

/// Draws `shots` computational-basis outcomes from `|amps|²` with
/// ChaCha8 seeded by `seed`, by inverse CDF lookup, one draw at a time.
pub fn sample(state: &StateVector, shots: u64, seed: u64) -> Result<MeasurementRecord> {
    if shots == 0 {
        return Err(QsimError::NoShots);
    }
    let mut cdf = Vec::with_capacity(state.dim());
    let mut acc = 0.0;
    for p in state.probabilities() {
        acc += p;
        cdf.push(acc);
    }
    let total = acc;
    let last = cdf.iter().rposition(|&c| c > 0.0).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let u = rng.random::<f64>() * total;
        let idx = cdf.partition_point(|&c| c <= u).min(last);
        *counts.entry(idx).or_insert(0) += 1;
    }
    Ok(MeasurementRecord { shots, seed, counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_state_is_deterministic() {
        let s = StateVector::new_state(3, 5).unwrap();
        let r = sample(&s, 100, 9).unwrap();
        assert_eq!(r.count(5), 100);
        assert_eq!(r.counts.len(), 1);
    }

    #[test]
    fn hadamard_within_three_sigma() {
        let s = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let shots = 1_000_000;
        let r = sample(&s, shots, 2024).unwrap();
        let sigma = (0.25 / shots as f64).sqrt();
        assert!((r.frequency(0) - 0.5).abs() <= 3.0 * sigma);
        assert_eq!(r.counts.values().sum::<u64>(), shots);
    }

    #[test]
    fn same_seed_same_record() {
        let s = StateVector::from_real(&[0.1, 0.5, 0.3, 0.8]).unwrap();
        assert_eq!(sample(&s, 5000, 1).unwrap(), sample(&s, 5000, 1).unwrap());
        assert_ne!(sample(&s, 5000, 1).unwrap(), sample(&s, 5000, 2).unwrap());
    }

    #[test]
    fn zero_shots_rejected() {
        assert_eq!(sample(&StateVector::zero(1), 0, 0), Err(QsimError::NoShots));
    }

    #[test]
    fn marginals() {
        let s = StateVector::new_state(2, 0b10).unwrap();
        let r = sample(&s, 10, 0).unwrap();
        assert_eq!(r.marginal(1, true), 1.0);
        assert_eq!(r.marginal(0, true), 0.0);
    }
}
