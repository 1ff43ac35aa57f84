use serde::{Deserialize, Serialize};

use crate::error::{QsimError, Result};
use crate::gate::{ControlSpec, Gate};
use crate::linalg::unitary_deviation;
use crate::state::{StateVector, UNITARY_TOL};
use crate::CMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Operation {
    Gate {
        gate: Gate,
        targets: Vec<usize>,
        #[serde(default)]
        controls: ControlSpec,
    },
    /// Dense unitary on `qubits`; `qubits[0]` is the least significant bit
    /// of the matrix index.
    Unitary {
        label: String,
        #[serde(with = "matrix_serde")]
        matrix: CMatrix,
        qubits: Vec<usize>,
        #[serde(default)]
        controls: ControlSpec,
    },
}

impl Operation {
    pub fn targets(&self) -> &[usize] {
        match self {
            Operation::Gate { targets, .. } => targets,
            Operation::Unitary { qubits, .. } => qubits,
        }
    }

    pub fn controls(&self) -> &ControlSpec {
        match self {
            Operation::Gate { controls, .. } | Operation::Unitary { controls, .. } => controls,
        }
    }

    /// Bitmask of every qubit the operation touches.
    pub fn support(&self) -> usize {
        let t = self.targets().iter().fold(0, |m, q| m | 1 << q);
        self.controls().qubits().fold(t, |m, q| m | 1 << q)
    }

    pub fn inverse(&self) -> Operation {
        match self {
            Operation::Gate { gate, targets, controls } => {
                Operation::Gate { gate: gate.inverse(), targets: targets.clone(), controls: controls.clone() }
            }
            Operation::Unitary { label, matrix, qubits, controls } => Operation::Unitary {
                label: format!("{label}†"),
                matrix: matrix.adjoint(),
                qubits: qubits.clone(),
                controls: controls.clone(),
            },
        }
    }

    fn remap(&self, map: &[usize]) -> Operation {
        let controls = ControlSpec(
            self.controls().iter().map(|c| crate::gate::Control { qubit: map[c.qubit], closed: c.closed }).collect(),
        );
        match self {
            Operation::Gate { gate, targets, .. } => {
                Operation::Gate { gate: *gate, targets: targets.iter().map(|&q| map[q]).collect(), controls }
            }
            Operation::Unitary { label, matrix, qubits, .. } => Operation::Unitary {
                label: label.clone(),
                matrix: matrix.clone(),
                qubits: qubits.iter().map(|&q| map[q]).collect(),
                controls,
            },
        }
    }

    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        match self {
            Operation::Gate { gate, targets, controls } => state.apply(gate, targets, controls),
            Operation::Unitary { matrix, qubits, controls, .. } => {
                state.apply_unitary_unchecked(matrix, qubits, controls)
            }
        }
    }
}

/// Ordered list of operations on a fixed register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    qubits: usize,
    ops: Vec<Operation>,
}

impl Circuit {
    pub fn new(qubits: usize) -> Self {
        Self { qubits, ops: Vec::new() }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Number of operations (each controlled gate or dense unitary counts once).
    pub fn gate_count(&self) -> usize {
        self.ops.len()
    }

    /// Circuit depth under greedy layering: an operation starts one layer
    /// after the latest operation sharing any of its qubits.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.qubits];
        for op in &self.ops {
            let support = op.support();
            let qs: Vec<usize> = (0..self.qubits).filter(|q| support >> q & 1 == 1).collect();
            let next = qs.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
            for q in qs {
                level[q] = next;
            }
        }
        level.into_iter().max().unwrap_or(0)
    }

    pub fn push(&mut self, op: Operation) -> Result<&mut Self> {
        match &op {
            Operation::Gate { gate, targets, controls } => {
                if targets.len() != gate.arity() {
                    return Err(QsimError::DimensionMismatch { expected: gate.arity(), got: targets.len() });
                }
                controls.validate(targets, self.qubits)?;
            }
            Operation::Unitary { matrix, qubits, controls, .. } => {
                let local = 1usize << qubits.len();
                if matrix.nrows() != local || matrix.ncols() != local {
                    return Err(QsimError::DimensionMismatch { expected: local, got: matrix.nrows() });
                }
                let dev = unitary_deviation(matrix);
                if dev > UNITARY_TOL {
                    return Err(QsimError::NotUnitary(dev));
                }
                controls.validate(qubits, self.qubits)?;
            }
        }
        self.ops.push(op);
        Ok(self)
    }

    pub fn gate(&mut self, gate: Gate, targets: &[usize], controls: ControlSpec) -> Result<&mut Self> {
        self.push(Operation::Gate { gate, targets: targets.to_vec(), controls })
    }

    pub fn unitary(
        &mut self,
        label: impl Into<String>,
        matrix: CMatrix,
        qubits: &[usize],
        controls: ControlSpec,
    ) -> Result<&mut Self> {
        self.push(Operation::Unitary { label: label.into(), matrix, qubits: qubits.to_vec(), controls })
    }

    pub fn x(&mut self, q: usize) -> Result<&mut Self> {
        self.gate(Gate::X, &[q], ControlSpec::none())
    }

    pub fn h(&mut self, q: usize) -> Result<&mut Self> {
        self.gate(Gate::H, &[q], ControlSpec::none())
    }

    pub fn ry(&mut self, theta: f64, q: usize) -> Result<&mut Self> {
        self.gate(Gate::ry(theta), &[q], ControlSpec::none())
    }

    pub fn rz(&mut self, lambda: f64, q: usize) -> Result<&mut Self> {
        self.gate(Gate::rz(lambda), &[q], ControlSpec::none())
    }

    pub fn cx(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.gate(Gate::X, &[target], ControlSpec::closed([control]))
    }

    pub fn swap(&mut self, a: usize, b: usize) -> Result<&mut Self> {
        self.gate(Gate::Swap, &[a, b], ControlSpec::none())
    }

    /// Appends `other`, sending its qubit `i` to `map[i]`.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<&mut Self> {
        if map.len() != other.qubits {
            return Err(QsimError::DimensionMismatch { expected: other.qubits, got: map.len() });
        }
        for op in &other.ops {
            self.push(op.remap(map))?;
        }
        Ok(self)
    }

    /// Appends `other` on the same qubit indices.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        let map: Vec<usize> = (0..other.qubits).collect();
        self.append_mapped(other, &map)
    }

    pub fn inverse(&self) -> Circuit {
        Circuit { qubits: self.qubits, ops: self.ops.iter().rev().map(Operation::inverse).collect() }
    }

    pub fn run(&self, state: &mut StateVector) -> Result<()> {
        if state.qubits() != self.qubits {
            return Err(QsimError::QubitCountMismatch(self.qubits, state.qubits()));
        }
        self.ops.iter().try_for_each(|op| op.apply(state))
    }

    /// Runs the circuit from `|0…0⟩`.
    pub fn simulate(&self) -> Result<StateVector> {
        let mut s = StateVector::zero(self.qubits);
        self.run(&mut s)?;
        Ok(s)
    }

    /// Dense `2^k × 2^k` matrix of the whole circuit (column `j` is the
    /// image of basis state `j`).
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let dim = 1usize << self.qubits;
        let mut out = CMatrix::zeros(dim, dim);
        for j in 0..dim {
            let mut s = StateVector::new_state(self.qubits, j)?;
            self.run(&mut s)?;
            for (i, a) in s.amplitudes().iter().enumerate() {
                out[(i, j)] = *a;
            }
        }
        Ok(out)
    }
}

mod matrix_serde {
    use num_complex::Complex64;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::CMatrix;

    /// Rows of `[re, im]` pairs.
    pub fn serialize<S: Serializer>(m: &CMatrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> =
            (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CMatrix, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom("matrix must be square"));
        }
        Ok(CMatrix::from_fn(n, n, |r, c| Complex64::new(rows[r][c][0], rows[r][c][1])))
    }
}
