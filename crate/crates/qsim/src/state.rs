use num_complex::Complex64;

use crate::error::{QsimError, Result};
use crate::gate::{ControlSpec, Gate, Mat2};
use crate::linalg::unitary_deviation;
use crate::CMatrix;

/// Tolerance on `|‖ψ‖₂ − 1|` for states built from caller amplitudes.
pub const NORM_TOL: f64 = 1e-10;
/// Tolerance on `‖UU† − I‖∞` for dense unitaries.
pub const UNITARY_TOL: f64 = 1e-9;
/// Smallest probability that postselection accepts.
pub const MIN_POSTSELECT_PROB: f64 = 1e-12;

/// Pure state over `k` qubits. Bit `j` of a basis index is qubit `j`
/// (qubit 0 least significant).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
}

/// Index `j` with a zero bit inserted at position `bit`.
#[inline]
fn insert_zero(j: usize, bit: usize) -> usize {
    let low = j & ((1 << bit) - 1);
    (j >> bit) << (bit + 1) | low
}

impl StateVector {
    /// Computational basis state `|basis_index⟩` on `qubits` qubits.
    pub fn new_state(qubits: usize, basis_index: usize) -> Result<Self> {
        let dim = 1usize << qubits;
        if basis_index >= dim {
            return Err(QsimError::IndexOutOfRange { index: basis_index, qubits });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[basis_index] = Complex64::new(1.0, 0.0);
        Ok(Self { qubits, amps })
    }

    pub fn zero(qubits: usize) -> Self {
        Self::new_state(qubits, 0).expect("index 0 is always valid")
    }

    /// Wraps amplitudes that must already be normalized.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let qubits = Self::qubits_for(amps.len())?;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(QsimError::NotNormalized(norm));
        }
        Ok(Self { qubits, amps })
    }

    /// Normalizes `amps` and wraps them.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self> {
        let qubits = Self::qubits_for(amps.len())?;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < MIN_POSTSELECT_PROB {
            return Err(QsimError::NotNormalized(norm));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { qubits, amps })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::normalized(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    fn qubits_for(len: usize) -> Result<usize> {
        if len == 0 || !len.is_power_of_two() {
            return Err(QsimError::DimensionMismatch { expected: len.next_power_of_two().max(1), got: len });
        }
        Ok(len.trailing_zeros() as usize)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.qubits != other.qubits {
            return Err(QsimError::QubitCountMismatch(self.qubits, other.qubits));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨self|other⟩|`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    /// Product state with `self` on the low qubits and `high` above it.
    pub fn tensor(&self, high: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.dim() * high.dim());
        for h in &high.amps {
            amps.extend(self.amps.iter().map(|l| l * h));
        }
        StateVector { qubits: self.qubits + high.qubits, amps }
    }

    /// Probability that `qubit` reads `outcome`.
    pub fn probability_of(&self, qubit: usize, outcome: bool) -> f64 {
        self.amps.iter().enumerate().filter(|(i, _)| (i >> qubit & 1 == 1) == outcome).map(|(_, a)| a.norm_sqr()).sum()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.qubits {
            return Err(QsimError::IndexOutOfRange { index: q, qubits: self.qubits });
        }
        Ok(())
    }

    /// Applies `gate` to `targets` under `controls`.
    pub fn apply(&mut self, gate: &Gate, targets: &[usize], controls: &ControlSpec) -> Result<()> {
        if targets.len() != gate.arity() {
            return Err(QsimError::DimensionMismatch { expected: gate.arity(), got: targets.len() });
        }
        controls.validate(targets, self.qubits)?;
        let (mask, value) = controls.masks();
        match gate.matrix2() {
            Some(m) => self.apply_2x2(&m, targets[0], mask, value),
            None => self.apply_swap(targets[0], targets[1], mask, value),
        }
        Ok(())
    }

    /// Single-target gate with a closed-control mask, the common fast path.
    pub fn apply_single(&mut self, gate: &Gate, target: usize, controls: &ControlSpec) -> Result<()> {
        self.apply(gate, &[target], controls)
    }

    fn apply_2x2(&mut self, m: &[[Complex64; 2]; 2], target: usize, mask: usize, value: usize) {
        let stride = 1 << target;
        for j in 0..self.amps.len() / 2 {
            let i0 = insert_zero(j, target);
            if i0 & mask != value {
                continue;
            }
            let i1 = i0 | stride;
            let (a0, a1) = (self.amps[i0], self.amps[i1]);
            self.amps[i0] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[i1] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    fn apply_swap(&mut self, a: usize, b: usize, mask: usize, value: usize) {
        let flip = 1 << a | 1 << b;
        for i in 0..self.amps.len() {
            if i >> a & 1 == 0 && i >> b & 1 == 1 && i & mask == value {
                self.amps.swap(i, i ^ flip);
            }
        }
    }

    /// Uniformly controlled single-qubit gate: when `register` (with
    /// `register[0]` least significant) reads `k`, `gates[k]` acts on
    /// `target`; `None` leaves that branch alone. Equivalent to one
    /// multi-controlled gate per register value, applied in a single pass.
    pub fn apply_multiplexed(&mut self, register: &[usize], target: usize, gates: &[Option<Mat2>]) -> Result<()> {
        ControlSpec::closed(register.iter().copied()).validate(&[target], self.qubits)?;
        if gates.len() != 1 << register.len() {
            return Err(QsimError::DimensionMismatch { expected: 1 << register.len(), got: gates.len() });
        }
        let stride = 1 << target;
        for j in 0..self.amps.len() / 2 {
            let i0 = insert_zero(j, target);
            let k = register.iter().enumerate().fold(0, |acc, (r, &q)| acc | (i0 >> q & 1) << r);
            if let Some(m) = &gates[k] {
                let i1 = i0 | stride;
                let (a0, a1) = (self.amps[i0], self.amps[i1]);
                self.amps[i0] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i1] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(())
    }

    /// Applies a dense unitary to `qubits` (`qubits[0]` is the least
    /// significant bit of the matrix index) under `controls`.
    pub fn apply_unitary(&mut self, u: &CMatrix, qubits: &[usize], controls: &ControlSpec) -> Result<()> {
        let local = 1usize << qubits.len();
        if u.nrows() != local || u.ncols() != local {
            return Err(QsimError::DimensionMismatch { expected: local, got: u.nrows() });
        }
        let dev = unitary_deviation(u);
        if dev > UNITARY_TOL {
            return Err(QsimError::NotUnitary(dev));
        }
        self.apply_unitary_unchecked(u, qubits, controls)
    }

    pub(crate) fn apply_unitary_unchecked(
        &mut self,
        u: &CMatrix,
        qubits: &[usize],
        controls: &ControlSpec,
    ) -> Result<()> {
        controls.validate(qubits, self.qubits)?;
        let (mask, value) = controls.masks();
        let local = 1usize << qubits.len();
        let offsets: Vec<usize> =
            (0..local).map(|l| qubits.iter().enumerate().fold(0, |acc, (r, &q)| acc | (l >> r & 1) << q)).collect();
        let target_mask = offsets[local - 1];
        let mut gathered = vec![Complex64::new(0.0, 0.0); local];
        for base in 0..self.amps.len() {
            if base & target_mask != 0 || base & mask != value {
                continue;
            }
            for (g, off) in gathered.iter_mut().zip(&offsets) {
                *g = self.amps[base | off];
            }
            for (r, off) in offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (c, g) in gathered.iter().enumerate() {
                    acc += u[(r, c)] * g;
                }
                self.amps[base | off] = acc;
            }
        }
        Ok(())
    }

    /// Projects `qubit` onto `outcome` and renormalizes. Returns the
    /// probability of the outcome before renormalization.
    pub fn postselect(&self, qubit: usize, outcome: bool) -> Result<(StateVector, f64)> {
        self.check_qubit(qubit)?;
        let mut amps = self.amps.clone();
        for (i, a) in amps.iter_mut().enumerate() {
            if (i >> qubit & 1 == 1) != outcome {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        let p: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if p < MIN_POSTSELECT_PROB {
            return Err(QsimError::ImpossibleOutcome(p));
        }
        let s = p.sqrt();
        amps.iter_mut().for_each(|a| *a /= s);
        Ok((StateVector { qubits: self.qubits, amps }, p))
    }

    /// Projects every `(qubit, outcome)` pair, removes those qubits from
    /// the register (remaining qubits keep their relative order) and
    /// renormalizes. Returns the joint probability of the outcomes.
    pub fn postselect_and_drop(&self, fixed: &[(usize, bool)]) -> Result<(StateVector, f64)> {
        let mut mask = 0usize;
        let mut value = 0usize;
        for &(q, o) in fixed {
            self.check_qubit(q)?;
            if mask >> q & 1 == 1 {
                return Err(QsimError::IndexOverlap(q));
            }
            mask |= 1 << q;
            if o {
                value |= 1 << q;
            }
        }
        let keep: Vec<usize> = (0..self.qubits).filter(|q| mask >> q & 1 == 0).collect();
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << keep.len()];
        for (l, a) in amps.iter_mut().enumerate() {
            let global = keep.iter().enumerate().fold(value, |acc, (r, &q)| acc | (l >> r & 1) << q);
            *a = self.amps[global];
        }
        let p: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if p < MIN_POSTSELECT_PROB {
            return Err(QsimError::ImpossibleOutcome(p));
        }
        let s = p.sqrt();
        amps.iter_mut().for_each(|a| *a /= s);
        Ok((StateVector { qubits: keep.len(), amps }, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn assert_amps(s: &StateVector, expected: &[Complex64]) {
        for (a, b) in s.amplitudes().iter().zip(expected) {
            assert!((a - b).norm() < 1e-12, "{:?} vs {:?}", s.amplitudes(), expected);
        }
    }

    #[test]
    fn basis_states() {
        let s = StateVector::new_state(3, 7).unwrap();
        assert_eq!(s.amplitude(7), c(1.0));
        assert_eq!(s.dim(), 8);
        assert_eq!(StateVector::new_state(1, 0).unwrap().amplitude(0), c(1.0));
        assert_eq!(StateVector::new_state(2, 5), Err(QsimError::IndexOutOfRange { index: 5, qubits: 2 }));
    }

    #[test]
    fn single_qubit_gates() {
        let mut s = StateVector::zero(1);
        s.apply_single(&Gate::X, 0, &ControlSpec::none()).unwrap();
        assert_amps(&s, &[c(0.0), c(1.0)]);
        let mut s = StateVector::zero(1);
        s.apply_single(&Gate::H, 0, &ControlSpec::none()).unwrap();
        assert_amps(&s, &[c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]);
    }

    #[test]
    fn cnot_on_10() {
        // |10⟩ means qubit 1 set: index 2.
        let mut s = StateVector::new_state(2, 0b10).unwrap();
        s.apply_single(&Gate::X, 0, &ControlSpec::closed([1])).unwrap();
        assert_amps(&s, &[c(0.0), c(0.0), c(0.0), c(1.0)]);
        let mut s = StateVector::new_state(2, 0b00).unwrap();
        s.apply_single(&Gate::X, 0, &ControlSpec::open([1])).unwrap();
        assert_amps(&s, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
    }

    #[test]
    fn overlap_is_rejected() {
        let mut s = StateVector::zero(2);
        assert_eq!(s.apply_single(&Gate::X, 0, &ControlSpec::closed([0])), Err(QsimError::IndexOverlap(0)));
    }

    #[test]
    fn swap_gate() {
        let mut s = StateVector::new_state(3, 0b001).unwrap();
        s.apply(&Gate::Swap, &[0, 2], &ControlSpec::none()).unwrap();
        assert_eq!(s.amplitude(0b100), c(1.0));
        // Controlled swap does nothing when the control is 0.
        let mut s = StateVector::new_state(3, 0b001).unwrap();
        s.apply(&Gate::Swap, &[0, 1], &ControlSpec::closed([2])).unwrap();
        assert_eq!(s.amplitude(0b001), c(1.0));
    }

    #[test]
    fn dense_unitaries() {
        let mut plus = StateVector::zero(1);
        plus.apply_single(&Gate::H, 0, &ControlSpec::none()).unwrap();
        let before = plus.clone();
        plus.apply_unitary(&CMatrix::identity(2, 2), &[0], &ControlSpec::none()).unwrap();
        assert_eq!(plus, before);
        // exp(i·diag(0, π)) = diag(1, −1).
        let phase = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::from_polar(1.0, 0.0),
            Complex64::from_polar(1.0, std::f64::consts::PI),
        ]));
        plus.apply_unitary(&phase, &[0], &ControlSpec::none()).unwrap();
        assert_amps(&plus, &[c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2)]);
        // Dense X ≡ gate X.
        let mut a = StateVector::from_real(&[0.6, 0.8, 0.0, 0.0]).unwrap();
        let mut b = a.clone();
        a.apply_unitary(&Gate::X.matrix(), &[1], &ControlSpec::closed([0])).unwrap();
        b.apply_single(&Gate::X, 1, &ControlSpec::closed([0])).unwrap();
        assert_amps(&a, b.amplitudes());
    }

    #[test]
    fn dense_unitary_errors() {
        let mut s = StateVector::zero(2);
        let not_unitary = CMatrix::from_element(2, 2, c(1.0));
        assert!(matches!(s.apply_unitary(&not_unitary, &[0], &ControlSpec::none()), Err(QsimError::NotUnitary(_))));
        assert!(matches!(
            s.apply_unitary(&CMatrix::identity(4, 4), &[0], &ControlSpec::none()),
            Err(QsimError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn postselection() {
        let plus = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let (s, p) = plus.postselect(0, true).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        assert_amps(&s, &[c(0.0), c(1.0)]);
        assert!(matches!(StateVector::zero(1).postselect(0, true), Err(QsimError::ImpossibleOutcome(_))));
        let bell = StateVector::from_real(&[1.0, 0.0, 0.0, 1.0]).unwrap();
        let (s, p) = bell.postselect(0, true).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        assert_amps(&s, &[c(0.0), c(0.0), c(0.0), c(1.0)]);
    }

    #[test]
    fn postselect_and_drop_reorders_remaining_qubits() {
        // Amplitude on |q2 q1 q0⟩ = |1 0 1⟩ and |0 1 1⟩.
        let s = StateVector::from_real(&[0.0, 0.0, 0.0, 0.6, 0.0, 0.8, 0.0, 0.0]).unwrap();
        let (r, p) = s.postselect_and_drop(&[(0, true)]).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert_eq!(r.qubits(), 2);
        // Remaining (q1, q2): |q2 q1⟩ = 01 → 0.6, 10 → 0.8.
        assert_amps(&r, &[c(0.0), c(0.6), c(0.8), c(0.0)]);
    }

    #[test]
    fn multiplexed_matches_controlled_sequence() {
        let amps: Vec<Complex64> = (0..16).map(|i| Complex64::new(i as f64 + 1.0, 0.5 * i as f64)).collect();
        let psi = StateVector::normalized(amps).unwrap();
        let gates: Vec<Option<Mat2>> =
            (0..4).map(|k| if k == 2 { None } else { Gate::ry(0.3 * k as f64 + 0.1).matrix2() }).collect();
        let mut fast = psi.clone();
        fast.apply_multiplexed(&[1, 3], 2, &gates).unwrap();
        let mut slow = psi;
        for (k, g) in gates.iter().enumerate() {
            if g.is_some() {
                slow.apply_single(&Gate::ry(0.3 * k as f64 + 0.1), 2, &ControlSpec::pattern(&[1, 3], k)).unwrap();
            }
        }
        assert_amps(&fast, slow.amplitudes());
    }

    #[test]
    fn tensor_layout() {
        let low = StateVector::new_state(1, 1).unwrap();
        let high = StateVector::new_state(2, 2).unwrap();
        let t = low.tensor(&high);
        assert_eq!(t.amplitude(0b101), c(1.0));
    }
}
