//! Belief extraction: one multi-controlled X onto an ancilla (qubit `n`)
//! after `|m⟩` turns a belief value into the probability of reading 1.
//!
//! | kind | controls on the data register | Pr(ancilla = 1) |
//! |------|-------------------------------|-----------------|
//! | `b`  | open on every qubit outside F | `Σ_{G⊆F} m(G)`  |
//! | `q`  | closed on every qubit in F    | `Σ_{G⊇F} m(G)`  |
//! | `Pl` | open on every qubit in F, then X on the ancilla | `Σ_{G∩F≠∅} m(G)` |
//!
//! `Bel(F)` is `b(F) − m(∅)`, where `m(∅)` is a `b` query with open
//! controls on every qubit.

use dst_core::{FocalIndex, MassFunction};
use qsim::{sample, Circuit, ControlSpec, Gate};

use crate::encoding::preparation_circuit;
use crate::error::{BfqcError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueryKind {
    Bel,
    Pl,
    Q,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BeliefQuery {
    pub kind: QueryKind,
    pub focal: FocalIndex,
}

impl BeliefQuery {
    pub fn new(kind: QueryKind, focal: FocalIndex) -> Self {
        Self { kind, focal }
    }
}

/// How an ancilla probability is read out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Readout {
    /// Exact probability from the final state vector.
    Statevector,
    /// Relative frequency over `shots` seeded samples.
    Shots { shots: u64, seed: u64 },
}

fn check(query: &BeliefQuery, n: usize) -> Result<()> {
    if query.focal.index() >= 1 << n {
        return Err(BfqcError::Qsim(qsim::QsimError::IndexOutOfRange { index: query.focal.index(), qubits: n }));
    }
    if query.focal.is_empty() && query.kind != QueryKind::B {
        return Err(BfqcError::EmptyFocal);
    }
    Ok(())
}

fn mcx(n: usize, controls: ControlSpec) -> Circuit {
    let mut c = Circuit::new(n + 1);
    c.gate(Gate::X, &[n], controls).expect("controls lie in the data register");
    c
}

fn b_circuit(focal: FocalIndex, n: usize) -> Circuit {
    mcx(n, ControlSpec::open((0..n).filter(|&q| !focal.contains(q))))
}

/// The query gates alone, on `n` data qubits plus the ancilla. `Bel`
/// needs two circuits and is rejected here.
pub fn belief_query_circuit(query: BeliefQuery, n: usize) -> Result<Circuit> {
    check(&query, n)?;
    let members = (0..n).filter(|&q| query.focal.contains(q));
    Ok(match query.kind {
        QueryKind::B => b_circuit(query.focal, n),
        QueryKind::Q => mcx(n, ControlSpec::closed(members)),
        QueryKind::Pl => {
            let mut c = mcx(n, ControlSpec::open(members));
            c.x(n).expect("ancilla exists");
            c
        }
        QueryKind::Bel => return Err(BfqcError::CompositeQuery),
    })
}

/// Weighted circuits whose ancilla-1 probabilities sum to the query value.
pub fn belief_query_circuits(query: BeliefQuery, n: usize) -> Result<Vec<(Circuit, f64)>> {
    check(&query, n)?;
    Ok(match query.kind {
        QueryKind::Bel => vec![(b_circuit(query.focal, n), 1.0), (b_circuit(FocalIndex::EMPTY, n), -1.0)],
        _ => vec![(belief_query_circuit(query, n)?, 1.0)],
    })
}

/// Preparation of `|m⟩` on qubits `0..n` followed by `query`.
pub fn full_query_circuit(m: &MassFunction, query: &Circuit) -> Result<Circuit> {
    let n = m.n();
    let mut c = Circuit::new(n + 1);
    let map: Vec<usize> = (0..n).collect();
    c.append_mapped(&preparation_circuit(m), &map)?;
    c.append(query)?;
    Ok(c)
}

/// Pr(ancilla = 1) of `circuit` on `|0…0⟩`.
pub fn ancilla_probability(circuit: &Circuit, readout: Readout) -> Result<f64> {
    let ancilla = circuit.qubits() - 1;
    let state = circuit.simulate()?;
    Ok(match readout {
        Readout::Statevector => state.probability_of(ancilla, true),
        Readout::Shots { shots, seed } => sample(&state, shots, seed)?.marginal(ancilla, true),
    })
}

/// Estimates a belief value by running the query circuits on `|m⟩`. In
/// shots mode the `i`-th circuit of a composite query uses `seed + i`.
pub fn estimate_belief(m: &MassFunction, query: BeliefQuery, readout: Readout) -> Result<f64> {
    let mut total = 0.0;
    for (i, (qc, weight)) in belief_query_circuits(query, m.n())?.into_iter().enumerate() {
        let full = full_query_circuit(m, &qc)?;
        let r = match readout {
            Readout::Shots { shots, seed } => Readout::Shots { shots, seed: seed.wrapping_add(i as u64) },
            r => r,
        };
        total += weight * ancilla_probability(&full, r)?;
    }
    Ok(total)
}
