//! Amplitude encoding `|m⟩ = Σ_F √m(F) |F⟩` through a binary tree of
//! subtree mass sums.
//!
//! Depth `d` of the tree decides qubit `n−1−d`, most significant first,
//! and the left child is the branch where that bit is 0, so leaves come
//! out in focal-index order. Each internal node carries
//! `θ = arctan √(v_left / v_right)` and becomes one `RY(π − 2θ)` on its
//! qubit, controlled by the bits of the path leading to it. From `|0⟩`
//! that rotation produces `sin θ |0⟩ + cos θ |1⟩`, so every amplitude is
//! a product of non-negative factors.

use std::f64::consts::{FRAC_PI_2, PI};

use dst_core::MassFunction;
use qsim::{Circuit, ControlSpec, Gate, StateVector};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct PreparationTree {
    n: usize,
    /// `values[d][p]`: mass below the node at depth `d` with path `p`.
    values: Vec<Vec<f64>>,
    /// `angles[d][p]` for internal depths `d < n`.
    angles: Vec<Vec<f64>>,
}

/// `arctan √(left / right)`, with `π/2` when all mass is on the left and
/// `0` when the node carries no mass.
fn branch_angle(left: f64, right: f64) -> f64 {
    if left <= 0.0 {
        0.0
    } else if right <= 0.0 {
        FRAC_PI_2
    } else {
        (left / right).sqrt().atan()
    }
}

impl PreparationTree {
    pub fn build(m: &MassFunction) -> Self {
        let n = m.n();
        let mut values = vec![Vec::new(); n + 1];
        values[n] = m.masses().to_vec();
        for d in (0..n).rev() {
            let below = &values[d + 1];
            values[d] = (0..1usize << d).map(|p| below[2 * p] + below[2 * p + 1]).collect();
        }
        let angles = (0..n)
            .map(|d| (0..1usize << d).map(|p| branch_angle(values[d + 1][2 * p], values[d + 1][2 * p + 1])).collect())
            .collect();
        Self { n, values, angles }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, depth: usize, path: usize) -> f64 {
        self.values[depth][path]
    }

    pub fn angle(&self, depth: usize, path: usize) -> f64 {
        self.angles[depth][path]
    }

    pub fn root(&self) -> f64 {
        self.values[0][0]
    }

    pub fn leaves(&self) -> &[f64] {
        &self.values[self.n]
    }

    /// Qubit decided at `depth`.
    pub fn qubit_at(&self, depth: usize) -> usize {
        self.n - 1 - depth
    }
}

pub fn build_preparation_tree(m: &MassFunction) -> PreparationTree {
    PreparationTree::build(m)
}

/// One controlled `RY` per internal node, layer by layer; exactly
/// `2^n − 1` gates with `2^d` of them at depth `d`.
pub fn synthesize_preparation_circuit(tree: &PreparationTree) -> Circuit {
    let n = tree.n;
    let mut c = Circuit::new(n);
    for d in 0..n {
        let target = tree.qubit_at(d);
        let controls: Vec<usize> = (target + 1..n).collect();
        for p in 0..1usize << d {
            let theta = tree.angle(d, p);
            c.gate(Gate::ry(PI - 2.0 * theta), &[target], ControlSpec::pattern(&controls, p))
                .expect("tree indices stay inside the register");
        }
    }
    debug_assert_eq!(c.gate_count(), (1usize << n) - 1);
    c
}

/// Gate count per layer of a preparation circuit (layer `ℓ` targets
/// qubit `n − ℓ`).
pub fn layer_counts(circuit: &Circuit) -> Vec<usize> {
    let n = circuit.qubits();
    let mut counts = vec![0; n];
    for op in circuit.ops() {
        counts[n - 1 - op.targets()[0]] += 1;
    }
    counts
}

/// `|m⟩` with amplitudes `+√m(F)`, obtained by running the preparation
/// circuit on `|0…0⟩`.
pub fn prepare_bba_state(m: &MassFunction) -> Result<StateVector> {
    let circuit = synthesize_preparation_circuit(&build_preparation_tree(m));
    Ok(circuit.simulate()?)
}

pub fn preparation_circuit(m: &MassFunction) -> Circuit {
    synthesize_preparation_circuit(&build_preparation_tree(m))
}
