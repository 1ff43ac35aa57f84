//! Rewrites controlled gates into the basic library {X, H, RY, RZ, CNOT}.
//!
//! Open controls are conjugated with X. One control uses the exact
//! two-CNOT construction for a general `U = e^{iγ}·U3(θ, φ, λ)`, with
//! the phase `γ` applied to the control. `k ≥ 2` controls use the
//! Gray-code construction with `V = U^{1/2^{k−1}}`: for every nonempty
//! subset `S` of the controls the parity of `S` is gathered on its
//! highest qubit and `C-V^{±1}` is applied from there.

use num_complex::Complex64;

use crate::circuit::{Circuit, Operation};
use crate::error::{QsimError, Result};
use crate::gate::{ControlSpec, Gate, Mat2};

pub const MAX_CONTROLS: usize = 8;

const ANGLE_EPS: f64 = 1e-15;

/// `U = e^{iγ}·U3(θ, φ, λ)` with `θ ∈ [0, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZyzAngles {
    pub gamma: f64,
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
}

pub fn zyz_angles(u: &Mat2) -> ZyzAngles {
    let c = u[0][0].norm();
    let s = u[1][0].norm();
    let theta = 2.0 * s.atan2(c);
    if c < 1e-12 {
        let gamma = (-u[0][1]).arg();
        ZyzAngles { gamma, theta, phi: u[1][0].arg() - gamma, lambda: 0.0 }
    } else if s < 1e-12 {
        let gamma = u[0][0].arg();
        ZyzAngles { gamma, theta, phi: 0.0, lambda: u[1][1].arg() - gamma }
    } else {
        let gamma = u[0][0].arg();
        ZyzAngles { gamma, theta, phi: u[1][0].arg() - gamma, lambda: (-u[0][1]).arg() - gamma }
    }
}

/// Real power `U^p` of a 2×2 unitary along the principal branch of its
/// SU(2) axis-angle form.
pub fn mat2_power(u: &Mat2, p: f64) -> Mat2 {
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    let gamma = det.arg() / 2.0;
    let unphase = Complex64::from_polar(1.0, -gamma);
    let a = u[0][0] * unphase;
    let b = u[1][0] * unphase;
    // W = exp(iφ n·σ) = cos φ·I + i sin φ (n·σ).
    let (nx, ny, nz) = (b.im, -b.re, a.im);
    let s = (nx * nx + ny * ny + nz * nz).sqrt();
    let phi = s.atan2(a.re);
    let (nx, ny, nz) = if s < 1e-15 { (0.0, 0.0, 1.0) } else { (nx / s, ny / s, nz / s) };
    let (sp, cp) = (p * phi).sin_cos();
    let phase = Complex64::from_polar(1.0, p * gamma);
    let a2 = Complex64::new(cp, sp * nz);
    let b2 = Complex64::new(-sp * ny, sp * nx);
    [[phase * a2, -phase * b2.conj()], [phase * b2, phase * a2.conj()]]
}

struct Emitter {
    out: Circuit,
}

impl Emitter {
    fn op(&mut self, gate: Gate, target: usize, controls: ControlSpec) {
        self.out.gate(gate, &[target], controls).expect("indices validated by caller");
    }

    fn x(&mut self, q: usize) {
        self.op(Gate::X, q, ControlSpec::none());
    }

    fn cx(&mut self, c: usize, t: usize) {
        self.op(Gate::X, t, ControlSpec::closed([c]));
    }

    fn rz(&mut self, angle: f64, q: usize) {
        if angle.abs() > ANGLE_EPS {
            self.op(Gate::rz(angle), q, ControlSpec::none());
        }
    }

    fn ry(&mut self, angle: f64, q: usize) {
        if angle.abs() > ANGLE_EPS {
            self.op(Gate::ry(angle), q, ControlSpec::none());
        }
    }

    /// `U3(θ, φ, λ)` as `RZ(λ)` then `RY(θ)` then `RZ(φ)`.
    fn u3(&mut self, theta: f64, phi: f64, lambda: f64, q: usize) {
        self.rz(lambda, q);
        self.ry(theta, q);
        self.rz(phi, q);
    }

    fn uncontrolled(&mut self, gate: &Gate, q: usize) {
        match *gate {
            Gate::X | Gate::H => self.op(*gate, q, ControlSpec::none()),
            Gate::Ry { theta } => self.ry(theta, q),
            Gate::Rz { lambda } => self.rz(lambda, q),
            Gate::U3 { theta, phi, lambda } => self.u3(theta, phi, lambda, q),
            Gate::Swap => unreachable!("swap handled separately"),
        }
    }

    /// Exact controlled-`U` for a general 2×2 unitary.
    fn controlled_mat2(&mut self, u: &Mat2, c: usize, t: usize) {
        let z = zyz_angles(u);
        self.rz((z.lambda + z.phi) / 2.0 + z.gamma, c);
        self.rz((z.lambda - z.phi) / 2.0, t);
        self.cx(c, t);
        self.u3(-z.theta / 2.0, 0.0, -(z.phi + z.lambda) / 2.0, t);
        self.cx(c, t);
        self.u3(z.theta / 2.0, z.phi, 0.0, t);
    }

    fn single_controlled(&mut self, gate: &Gate, c: usize, t: usize) {
        match *gate {
            Gate::X => self.cx(c, t),
            Gate::Ry { theta } => {
                self.ry(theta / 2.0, t);
                self.cx(c, t);
                self.ry(-theta / 2.0, t);
                self.cx(c, t);
            }
            _ => self.controlled_mat2(&gate.matrix2().expect("single-qubit gate"), c, t),
        }
    }

    /// Closed multi-control of a single-qubit unitary.
    fn multi_controlled(&mut self, u: &Mat2, controls: &[usize], t: usize) {
        let k = controls.len();
        let v = mat2_power(u, 1.0 / (1u64 << (k - 1)) as f64);
        let v_inv = [[v[0][0].conj(), v[1][0].conj()], [v[0][1].conj(), v[1][1].conj()]];
        for subset in 1usize..1 << k {
            let members: Vec<usize> = (0..k).filter(|i| subset >> i & 1 == 1).map(|i| controls[i]).collect();
            let (&top, rest) = members.split_last().expect("nonempty subset");
            for &q in rest {
                self.cx(q, top);
            }
            let m = if members.len() % 2 == 1 { &v } else { &v_inv };
            self.controlled_mat2(m, top, t);
            for &q in rest.iter().rev() {
                self.cx(q, top);
            }
        }
    }

    fn controlled(&mut self, gate: &Gate, closed: &[usize], t: usize) {
        match closed {
            [] => self.uncontrolled(gate, t),
            [c] => self.single_controlled(gate, *c, t),
            _ => self.multi_controlled(&gate.matrix2().expect("single-qubit gate"), closed, t),
        }
    }
}

/// Rewrites `gate` on `targets` under `controls` into basic gates on a
/// `qubits`-wide register.
pub fn decompose_multicontrolled(
    qubits: usize,
    gate: &Gate,
    targets: &[usize],
    controls: &ControlSpec,
) -> Result<Circuit> {
    if controls.len() > MAX_CONTROLS {
        return Err(QsimError::TooManyControls(controls.len()));
    }
    if targets.len() != gate.arity() {
        return Err(QsimError::DimensionMismatch { expected: gate.arity(), got: targets.len() });
    }
    controls.validate(targets, qubits)?;
    let mut e = Emitter { out: Circuit::new(qubits) };
    let open: Vec<usize> = controls.iter().filter(|c| !c.closed).map(|c| c.qubit).collect();
    let closed: Vec<usize> = controls.qubits().collect();
    for &q in &open {
        e.x(q);
    }
    match gate {
        Gate::Swap => {
            let (a, b) = (targets[0], targets[1]);
            let mut inner = closed.clone();
            inner.push(a);
            if inner.len() > MAX_CONTROLS {
                return Err(QsimError::TooManyControls(inner.len()));
            }
            e.cx(b, a);
            e.controlled(&Gate::X, &inner, b);
            e.cx(b, a);
        }
        g => e.controlled(g, &closed, targets[0]),
    }
    for &q in &open {
        e.x(q);
    }
    Ok(e.out)
}

/// Rewrites every operation of `circuit` into basic gates. Dense
/// single-qubit unitaries are decomposed through their ZYZ angles; wider
/// dense unitaries are rejected.
pub fn decompose_circuit(circuit: &Circuit) -> Result<Circuit> {
    let mut out = Circuit::new(circuit.qubits());
    for op in circuit.ops() {
        let part = match op {
            Operation::Gate { gate, targets, controls } => {
                decompose_multicontrolled(circuit.qubits(), gate, targets, controls)?
            }
            Operation::Unitary { label, matrix, qubits, controls } => {
                if qubits.len() != 1 {
                    return Err(QsimError::NotDecomposable(format!("{label} acts on {} qubits", qubits.len())));
                }
                let m = [[matrix[(0, 0)], matrix[(0, 1)]], [matrix[(1, 0)], matrix[(1, 1)]]];
                let z = zyz_angles(&m);
                if controls.is_empty() {
                    decompose_multicontrolled(circuit.qubits(), &Gate::u3(z.theta, z.phi, z.lambda), qubits, controls)?
                } else {
                    decompose_dense_controlled(circuit.qubits(), &m, qubits[0], controls)?
                }
            }
        };
        out.append(&part)?;
    }
    Ok(out)
}

fn decompose_dense_controlled(qubits: usize, u: &Mat2, target: usize, controls: &ControlSpec) -> Result<Circuit> {
    if controls.len() > MAX_CONTROLS {
        return Err(QsimError::TooManyControls(controls.len()));
    }
    controls.validate(&[target], qubits)?;
    let mut e = Emitter { out: Circuit::new(qubits) };
    let open: Vec<usize> = controls.iter().filter(|c| !c.closed).map(|c| c.qubit).collect();
    let closed: Vec<usize> = controls.qubits().collect();
    for &q in &open {
        e.x(q);
    }
    match closed.as_slice() {
        [c] => e.controlled_mat2(u, *c, target),
        _ => e.multi_controlled(u, &closed, target),
    }
    for &q in &open {
        e.x(q);
    }
    Ok(e.out)
}

/// True when every operation is one of X, H, RY, RZ without controls or
/// a single closed-control X.
pub fn is_basic(circuit: &Circuit) -> bool {
    circuit.ops().iter().all(|op| match op {
        Operation::Gate { gate: Gate::X, controls, .. } => {
            controls.is_empty() || (controls.len() == 1 && controls.0[0].closed)
        }
        Operation::Gate { gate: Gate::H | Gate::Ry { .. } | Gate::Rz { .. }, controls, .. } => controls.is_empty(),
        _ => false,
    })
}
