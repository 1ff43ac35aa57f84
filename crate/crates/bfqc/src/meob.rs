//! Matrix evolution of a state: `|v⟩ ↦ A|v⟩ / ‖A|v⟩‖` by phase
//! estimation, an eigenvalue-controlled rotation and uncomputation.
//!
//! A matrix that is not Hermitian is embedded as `[[0, A†], [A, 0]]` on
//! one extra (most significant) qubit; the input is padded to `[v; 0]`
//! and the result is read from the block where that qubit is 1.
//!
//! Register layout of the circuit backend, least significant first:
//! input (`s` qubits), clock (`t` qubits), rotation ancilla. Clock value
//! `k` decodes to `λ̃ = 2πk / (2^t·t0)`, read as two's complement so
//! values `k ≥ 2^{t−1}` stand for negative eigenvalues, and drives
//! `RY(2·asin(C·λ̃))` on the ancilla.

use std::f64::consts::PI;

use dst_core::{MassFunction, TransformMatrix};
use qsim::linalg::{hermitian_deviation, hermitian_eigen, real_matrix};
use qsim::{inverse_qft_circuit, CMatrix, Circuit, Complex64, ControlSpec, Gate, QsimError, StateVector};

use crate::encoding::prepare_bba_state;
use crate::error::{BfqcError, Result};

/// Below this deviation a matrix is treated as Hermitian and not embedded.
pub const EMBED_TOL: f64 = 1e-10;
pub const MIN_NORM: f64 = 1e-12;
pub const MIN_SUCCESS: f64 = 1e-12;
pub const MAX_CLOCK_QUBITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Exact linear algebra on the amplitudes.
    #[default]
    Oracle,
    /// Full simulation of phase estimation, rotation and uncomputation.
    Circuit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeobConfig {
    /// Clock register size `t`.
    pub clock_qubits: usize,
    /// Evolution time per unit eigenvalue; defaults to `0.9π / max|λ|`.
    pub t0: Option<f64>,
    /// Rotation constant; defaults to `0.99·t0/π`, which keeps `|C·λ̃| ≤ 0.99`
    /// over the whole clock grid.
    pub c: Option<f64>,
    pub backend: Backend,
    /// Target eigenvalue resolution. When set, `t` becomes the smallest
    /// clock size whose grid spacing `2π / (2^t·t0)` is at most `epsilon`.
    pub epsilon: Option<f64>,
}

impl Default for MeobConfig {
    fn default() -> Self {
        Self { clock_qubits: 8, t0: None, c: None, backend: Backend::Oracle, epsilon: None }
    }
}

impl MeobConfig {
    pub fn oracle() -> Self {
        Self::default()
    }

    pub fn circuit(clock_qubits: usize) -> Self {
        Self { clock_qubits, backend: Backend::Circuit, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEmbedding {
    pub original: CMatrix,
    pub matrix: CMatrix,
    pub embedded: bool,
}

/// Returns `m` unchanged when Hermitian within [`EMBED_TOL`], otherwise
/// `[[0, m†], [m, 0]]`.
pub fn hermitian_embed(m: &CMatrix) -> Result<HermitianEmbedding> {
    let d = m.nrows();
    if d != m.ncols() || d == 0 || !d.is_power_of_two() {
        return Err(BfqcError::BadDimension(d.max(m.ncols())));
    }
    if hermitian_deviation(m) <= EMBED_TOL {
        return Ok(HermitianEmbedding { original: m.clone(), matrix: m.clone(), embedded: false });
    }
    let mut h = CMatrix::zeros(2 * d, 2 * d);
    h.view_mut((0, d), (d, d)).copy_from(&m.adjoint());
    h.view_mut((d, 0), (d, d)).copy_from(m);
    Ok(HermitianEmbedding { original: m.clone(), matrix: h, embedded: true })
}

pub fn to_cmatrix(m: &TransformMatrix) -> CMatrix {
    real_matrix(m.dim(), m.entries())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeobOutcome {
    /// Output on the input register.
    pub state: StateVector,
    /// Probability of the ancilla reading 1.
    pub success_probability: f64,
    /// Weight kept when projecting the clock (and the embedding qubit)
    /// after postselection; 1 for the oracle.
    pub retained: f64,
    /// `|⟨ideal|out⟩|·√retained`; 1 for the oracle.
    pub fidelity: f64,
    pub clock_qubits: usize,
    pub t0: f64,
    pub c: f64,
    pub embedded: bool,
}

/// Parameters fixed before running either backend.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Resolved {
    t: usize,
    t0: f64,
    c: f64,
}

fn resolve(config: &MeobConfig, lambda_max: f64) -> Result<Resolved> {
    let t0 = config.t0.unwrap_or(0.9 * PI / lambda_max);
    if !(t0.is_finite() && t0 > 0.0) {
        return Err(BfqcError::InvalidConfig(format!("t0 must be positive, got {t0}")));
    }
    if t0 * lambda_max >= PI {
        return Err(BfqcError::ClockOverflow(t0 * lambda_max));
    }
    let t = match config.epsilon {
        Some(eps) if eps > 0.0 => {
            let t = (2.0 * PI / (t0 * eps)).log2().ceil().max(1.0) as usize;
            if t > MAX_CLOCK_QUBITS {
                return Err(BfqcError::InvalidConfig(format!("epsilon {eps} needs {t} clock qubits")));
            }
            t
        }
        Some(eps) => return Err(BfqcError::InvalidConfig(format!("epsilon must be positive, got {eps}"))),
        None => config.clock_qubits,
    };
    if !(1..=MAX_CLOCK_QUBITS).contains(&t) {
        return Err(BfqcError::InvalidConfig(format!("clock qubits must lie in 1..={MAX_CLOCK_QUBITS}, got {t}")));
    }
    let c = config.c.unwrap_or(0.99 * t0 / PI);
    if !(c > 0.0 && c * PI / t0 <= 1.0) {
        return Err(BfqcError::InvalidConfig(format!("C = {c} exceeds 1/max|λ̃| = {}", t0 / PI)));
    }
    Ok(Resolved { t, t0, c })
}

/// Eigenvalue decoded from clock value `k` on a `t`-qubit clock.
pub fn decode_eigenvalue(k: usize, t: usize, t0: f64) -> f64 {
    let n = 1usize << t;
    let signed = if k >= n / 2 { k as f64 - n as f64 } else { k as f64 };
    2.0 * PI * signed / (n as f64 * t0)
}

/// `exp(i·H·τ)` for each `τ = t0·2^j`, sharing one eigendecomposition.
fn controlled_powers(h: &CMatrix, t: usize, t0: f64) -> Result<Vec<CMatrix>> {
    let (values, vectors) = hermitian_eigen(h)?;
    Ok((0..t)
        .map(|j| {
            let tau = t0 * (1u64 << j) as f64;
            let phases = CMatrix::from_fn(values.len(), values.len(), |r, c| {
                if r == c {
                    Complex64::from_polar(1.0, values[r] * tau)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            &vectors * phases * vectors.adjoint()
        })
        .collect())
}

/// Hadamards on the clock, controlled powers of `exp(iH·t0)` and the
/// inverse QFT, on an `s + t + 1` qubit register.
pub fn phase_estimation_circuit(h: &CMatrix, s: usize, t: usize, t0: f64) -> Result<Circuit> {
    let mut c = Circuit::new(s + t + 1);
    let input: Vec<usize> = (0..s).collect();
    let clock: Vec<usize> = (s..s + t).collect();
    for &q in &clock {
        c.h(q)?;
    }
    for (j, u) in controlled_powers(h, t, t0)?.into_iter().enumerate() {
        c.unitary(format!("exp(iHt0·2^{j})"), u, &input, ControlSpec::closed([s + j]))?;
    }
    c.append_mapped(&inverse_qft_circuit(t), &clock)?;
    Ok(c)
}

fn rotation_angles(t: usize, t0: f64, c: f64) -> Vec<f64> {
    (0..1usize << t).map(|k| 2.0 * (c * decode_eigenvalue(k, t, t0)).asin()).collect()
}

/// The whole evolution as a gate-level circuit: phase estimation, one
/// multi-controlled `RY` per non-zero clock value, uncomputation.
pub fn meob_circuit(h: &CMatrix, s: usize, t: usize, t0: f64, c: f64) -> Result<Circuit> {
    let pe = phase_estimation_circuit(h, s, t, t0)?;
    let clock: Vec<usize> = (s..s + t).collect();
    let mut circuit = pe.clone();
    for (k, angle) in rotation_angles(t, t0, c).into_iter().enumerate() {
        if angle != 0.0 {
            circuit.gate(Gate::ry(angle), &[s + t], ControlSpec::pattern(&clock, k))?;
        }
    }
    circuit.append(&pe.inverse())?;
    Ok(circuit)
}

fn padded_input(state: &StateVector, embedded: bool) -> StateVector {
    if embedded {
        state.tensor(&StateVector::zero(1))
    } else {
        state.clone()
    }
}

fn mat_vec(a: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    (0..a.nrows()).map(|r| (0..a.ncols()).map(|c| a[(r, c)] * v[c]).sum()).collect()
}

/// Evolves the amplitudes of `state` by `a`.
pub fn evolve_state(state: &StateVector, a: &CMatrix, config: &MeobConfig) -> Result<MeobOutcome> {
    if a.nrows() != state.dim() {
        return Err(QsimError::DimensionMismatch { expected: state.dim(), got: a.nrows() }.into());
    }
    let emb = hermitian_embed(a)?;
    let w = mat_vec(a, state.amplitudes());
    let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm < MIN_NORM {
        return Err(BfqcError::SingularMatrix(norm));
    }
    let ideal = StateVector::normalized(w)?;
    let (values, _) = hermitian_eigen(&emb.matrix)?;
    let lambda_max = values.iter().map(|l| l.abs()).fold(0.0, f64::max);
    let r = resolve(config, lambda_max)?;

    let outcome = |state, success_probability, retained, fidelity| MeobOutcome {
        state,
        success_probability,
        retained,
        fidelity,
        clock_qubits: r.t,
        t0: r.t0,
        c: r.c,
        embedded: emb.embedded,
    };
    match config.backend {
        Backend::Oracle => {
            let success = r.c * r.c * norm * norm;
            if success < MIN_SUCCESS {
                return Err(BfqcError::PostselectionFailed(success));
            }
            Ok(outcome(ideal, success, 1.0, 1.0))
        }
        Backend::Circuit => {
            let input = padded_input(state, emb.embedded);
            let s = input.qubits();
            let (t, anc) = (r.t, s + r.t);
            let mut psi = input.tensor(&StateVector::zero(t + 1));
            let pe = phase_estimation_circuit(&emb.matrix, s, t, r.t0)?;
            pe.run(&mut psi)?;
            let gates: Vec<_> = rotation_angles(t, r.t0, r.c)
                .into_iter()
                .map(|a| if a == 0.0 { None } else { Gate::ry(a).matrix2() })
                .collect();
            let clock: Vec<usize> = (s..s + t).collect();
            psi.apply_multiplexed(&clock, anc, &gates)?;
            pe.inverse().run(&mut psi)?;

            let success = psi.probability_of(anc, true);
            if success < MIN_SUCCESS {
                return Err(BfqcError::PostselectionFailed(success));
            }
            let mut fixed: Vec<(usize, bool)> = clock.iter().map(|&q| (q, false)).collect();
            fixed.push((anc, true));
            if emb.embedded {
                fixed.push((s - 1, true));
            }
            let (out, joint) = psi.postselect_and_drop(&fixed).map_err(|e| match e {
                QsimError::ImpossibleOutcome(p) => BfqcError::PostselectionFailed(p),
                e => e.into(),
            })?;
            let retained = joint / success;
            let fidelity = ideal.fidelity(&out)? * retained.sqrt();
            Ok(outcome(out, success, retained, fidelity))
        }
    }
}

/// `M·m / ‖M·m‖` from `|m⟩` by evolving with `M·diag(√m)`.
pub fn meob(m_matrix: &CMatrix, m: &MassFunction, config: &MeobConfig) -> Result<MeobOutcome> {
    let dim = m.frame().size();
    if m_matrix.nrows() != dim || m_matrix.ncols() != dim {
        return Err(QsimError::DimensionMismatch { expected: dim, got: m_matrix.nrows() }.into());
    }
    let sqrt_m: Vec<f64> = m.masses().iter().map(|x| x.sqrt()).collect();
    let mn = CMatrix::from_fn(dim, dim, |r, c| m_matrix[(r, c)] * sqrt_m[c]);
    evolve_state(&prepare_bba_state(m)?, &mn, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::bba;
    use dst_core::{build_matrix, q_from_mass, Frame, MatrixKind};

    fn real(v: &[f64]) -> CMatrix {
        let n = (v.len() as f64).sqrt() as usize;
        real_matrix(n, v)
    }

    fn assert_state(s: &StateVector, expected: &[f64], tol: f64) {
        let norm = expected.iter().map(|x| x * x).sum::<f64>().sqrt();
        for (a, e) in s.amplitudes().iter().zip(expected) {
            assert!((a - Complex64::new(e / norm, 0.0)).norm() <= tol, "{:?} vs {expected:?}", s.amplitudes());
        }
    }

    #[test]
    fn hermitian_input_is_not_embedded() {
        let e = hermitian_embed(&real(&[1.0, 2.0, 2.0, 3.0])).unwrap();
        assert!(!e.embedded);
        assert_eq!(e.matrix, e.original);
    }

    #[test]
    fn q_matrix_embedding() {
        let mq = to_cmatrix(&build_matrix(MatrixKind::Q, &Frame::numbered(1).unwrap(), None).unwrap());
        let e = hermitian_embed(&mq).unwrap();
        assert!(e.embedded);
        assert_eq!(e.matrix.nrows(), 4);
        assert_eq!(hermitian_deviation(&e.matrix), 0.0);
    }

    #[test]
    fn nilpotent_embedding_spectrum() {
        let e = hermitian_embed(&real(&[0.0, 1.0, 0.0, 0.0])).unwrap();
        let (values, _) = hermitian_eigen(&e.matrix).unwrap();
        let expected = [-1.0, 0.0, 0.0, 1.0];
        assert!(values.iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn bad_dimension() {
        assert_eq!(hermitian_embed(&CMatrix::identity(3, 3)), Err(BfqcError::BadDimension(3)));
    }

    #[test]
    fn identity_keeps_state_with_success_c_squared() {
        let psi = StateVector::from_real(&[0.6, 0.8]).unwrap();
        let out = evolve_state(&psi, &CMatrix::identity(2, 2), &MeobConfig::oracle()).unwrap();
        assert_state(&out.state, &[0.6, 0.8], 1e-12);
        assert!((out.success_probability - out.c * out.c).abs() < 1e-12);
    }

    #[test]
    fn exact_phases_on_circuit_backend() {
        // Phases λ·t0/2π = 1/4 and 1/8 are exact on a 3-qubit clock.
        let psi = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let config = MeobConfig { t0: Some(PI), ..MeobConfig::circuit(3) };
        let out = evolve_state(&psi, &real(&[0.5, 0.0, 0.0, 0.25]), &config).unwrap();
        assert!(out.fidelity >= 1.0 - 1e-9, "fidelity {}", out.fidelity);
        assert_state(&out.state, &[2.0, 1.0], 1e-9);
        let oracle =
            evolve_state(&psi, &real(&[0.5, 0.0, 0.0, 0.25]), &MeobConfig { t0: Some(PI), ..MeobConfig::oracle() })
                .unwrap();
        assert!((out.success_probability - oracle.success_probability).abs() < 1e-9);
    }

    #[test]
    fn gate_level_circuit_matches_fast_rotation() {
        let h = real(&[0.5, 0.0, 0.0, -0.25]);
        let (s, t, t0, c) = (1, 3, PI, 0.9);
        let full = meob_circuit(&h, s, t, t0, c).unwrap();
        let mut slow = StateVector::from_real(&[0.3, 0.7]).unwrap().tensor(&StateVector::zero(t + 1));
        full.run(&mut slow).unwrap();
        let mut fast = StateVector::from_real(&[0.3, 0.7]).unwrap().tensor(&StateVector::zero(t + 1));
        let pe = phase_estimation_circuit(&h, s, t, t0).unwrap();
        pe.run(&mut fast).unwrap();
        let gates: Vec<_> = rotation_angles(t, t0, c).into_iter().map(|a| Gate::ry(a).matrix2()).collect();
        fast.apply_multiplexed(&[1, 2, 3], 4, &gates).unwrap();
        pe.inverse().run(&mut fast).unwrap();
        assert!((fast.fidelity(&slow).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negative_eigenvalues_decode() {
        assert!((decode_eigenvalue(7, 3, PI) + 0.25).abs() < 1e-15);
        assert!((decode_eigenvalue(4, 3, PI) + 1.0).abs() < 1e-15);
        assert!((decode_eigenvalue(3, 3, PI) - 0.75).abs() < 1e-15);
        let psi = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let config = MeobConfig { t0: Some(PI), ..MeobConfig::circuit(3) };
        let out = evolve_state(&psi, &real(&[0.5, 0.0, 0.0, -0.25]), &config).unwrap();
        assert!(out.fidelity >= 1.0 - 1e-9);
        assert!(out.state.amplitude(1).re < 0.0);
    }

    #[test]
    fn commonality_of_two_singletons() {
        let m = bba(2, &[(0b01, 0.5), (0b10, 0.5)]);
        let mq = to_cmatrix(&build_matrix(MatrixKind::Q, m.frame(), None).unwrap());
        let out = meob(&mq, &m, &MeobConfig::oracle()).unwrap();
        assert_state(&out.state, q_from_mass(&m).values(), 1e-12);
        assert_state(&out.state, &[1.0, 0.5, 0.5, 0.0], 1e-12);
    }

    #[test]
    fn embedded_circuit_run() {
        let m = bba(1, &[(0b0, 0.25), (0b1, 0.75)]);
        let mq = to_cmatrix(&build_matrix(MatrixKind::Q, m.frame(), None).unwrap());
        let out = meob(&mq, &m, &MeobConfig::circuit(10)).unwrap();
        assert!(out.embedded);
        assert!(out.fidelity > 0.9, "fidelity {}", out.fidelity);
        let oracle = meob(&mq, &m, &MeobConfig::oracle()).unwrap();
        assert!(oracle.state.fidelity(&out.state).unwrap() > 0.95);
    }

    #[test]
    fn errors() {
        let psi = StateVector::from_real(&[1.0, 0.0]).unwrap();
        let kill = real(&[0.0, 0.0, 0.0, 1.0]);
        assert!(matches!(evolve_state(&psi, &kill, &MeobConfig::oracle()), Err(BfqcError::SingularMatrix(_))));
        let id = CMatrix::identity(2, 2);
        let overflow = MeobConfig { t0: Some(4.0), ..MeobConfig::oracle() };
        assert!(matches!(evolve_state(&psi, &id, &overflow), Err(BfqcError::ClockOverflow(_))));
        for t in [0, 13] {
            let bad = MeobConfig { clock_qubits: t, ..MeobConfig::oracle() };
            assert!(matches!(evolve_state(&psi, &id, &bad), Err(BfqcError::InvalidConfig(_))));
        }
        let big_c = MeobConfig { c: Some(5.0), ..MeobConfig::oracle() };
        assert!(matches!(evolve_state(&psi, &id, &big_c), Err(BfqcError::InvalidConfig(_))));
        let eps = MeobConfig { epsilon: Some(1e-2), ..MeobConfig::oracle() };
        let out = evolve_state(&psi, &id, &eps).unwrap();
        assert!(2.0 * PI / ((1 << out.clock_qubits) as f64 * out.t0) <= 1e-2);
    }
}
