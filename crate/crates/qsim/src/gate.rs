use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QsimError, Result};
use crate::CMatrix;

pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Elementary gates. Angles are radians.
///
/// `RZ(λ)` is the phase form `diag(1, e^{iλ})` (qelib1 `rz`/`u1`), `RY(θ)`
/// is the standard rotation `[[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`
/// and `U3(θ, φ, λ) = RZ(φ)·RY(θ)·RZ(λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Gate {
    X,
    H,
    Ry { theta: f64 },
    Rz { lambda: f64 },
    U3 { theta: f64, phi: f64, lambda: f64 },
    Swap,
}

impl Gate {
    pub fn ry(theta: f64) -> Self {
        Gate::Ry { theta }
    }

    pub fn rz(lambda: f64) -> Self {
        Gate::Rz { lambda }
    }

    pub fn u3(theta: f64, phi: f64, lambda: f64) -> Self {
        Gate::U3 { theta, phi, lambda }
    }

    /// Number of target qubits.
    pub fn arity(&self) -> usize {
        match self {
            Gate::Swap => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::X => "x",
            Gate::H => "h",
            Gate::Ry { .. } => "ry",
            Gate::Rz { .. } => "rz",
            Gate::U3 { .. } => "u3",
            Gate::Swap => "swap",
        }
    }

    /// 2×2 matrix of a single-qubit gate; `None` for `Swap`.
    pub fn matrix2(&self) -> Option<Mat2> {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Some(match *self {
            Gate::X => [[ZERO, ONE], [ONE, ZERO]],
            Gate::H => [[h, h], [h, -h]],
            Gate::Ry { theta } => {
                let (s, c) = (theta / 2.0).sin_cos();
                [[c.into(), (-s).into()], [s.into(), c.into()]]
            }
            Gate::Rz { lambda } => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, lambda)]],
            Gate::U3 { theta, phi, lambda } => {
                let (s, c) = (theta / 2.0).sin_cos();
                [
                    [c.into(), -Complex64::from_polar(s, lambda)],
                    [Complex64::from_polar(s, phi), Complex64::from_polar(c, phi + lambda)],
                ]
            }
            Gate::Swap => return None,
        })
    }

    /// Full matrix (2×2, or 4×4 for `Swap` in the basis `|b a⟩` of targets `[a, b]`).
    pub fn matrix(&self) -> CMatrix {
        match self.matrix2() {
            Some(m) => CMatrix::from_fn(2, 2, |r, c| m[r][c]),
            None => CMatrix::from_fn(4, 4, |r, c| {
                let swapped = (r & 1) << 1 | (r >> 1);
                if swapped == c {
                    ONE
                } else {
                    ZERO
                }
            }),
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Ry { theta } => Gate::Ry { theta: -theta },
            Gate::Rz { lambda } => Gate::Rz { lambda: -lambda },
            Gate::U3 { theta, phi, lambda } => Gate::U3 { theta: -theta, phi: -lambda, lambda: -phi },
            g => g,
        }
    }
}

/// One control qubit; `closed` fires on `|1⟩`, open on `|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Control {
    pub qubit: usize,
    pub closed: bool,
}

impl Control {
    pub fn closed(qubit: usize) -> Self {
        Self { qubit, closed: true }
    }

    pub fn open(qubit: usize) -> Self {
        Self { qubit, closed: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ControlSpec(pub Vec<Control>);

impl ControlSpec {
    pub fn none() -> Self {
        Self(Vec::new())
    }

    pub fn closed(qubits: impl IntoIterator<Item = usize>) -> Self {
        Self(qubits.into_iter().map(Control::closed).collect())
    }

    pub fn open(qubits: impl IntoIterator<Item = usize>) -> Self {
        Self(qubits.into_iter().map(Control::open).collect())
    }

    /// Controls matching the bits of `pattern` over `qubits`: bit `i` of
    /// `pattern` set ⇒ closed control on `qubits[i]`.
    pub fn pattern(qubits: &[usize], pattern: usize) -> Self {
        Self(qubits.iter().enumerate().map(|(i, &q)| Control { qubit: q, closed: pattern >> i & 1 == 1 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Control> {
        self.0.iter()
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|c| c.qubit)
    }

    /// `(mask, value)` such that a basis index `i` fires iff `i & mask == value`.
    pub fn masks(&self) -> (usize, usize) {
        self.0.iter().fold((0, 0), |(m, v), c| (m | 1 << c.qubit, if c.closed { v | 1 << c.qubit } else { v }))
    }

    /// Checks indices against `qubits` and disjointness from `targets`.
    pub fn validate(&self, targets: &[usize], qubits: usize) -> Result<()> {
        let mut seen = 0usize;
        for &q in targets.iter().chain(self.0.iter().map(|c| &c.qubit)) {
            if q >= qubits {
                return Err(QsimError::IndexOutOfRange { index: q, qubits });
            }
            if seen >> q & 1 == 1 {
                return Err(QsimError::IndexOverlap(q));
            }
            seen |= 1 << q;
        }
        Ok(())
    }
}
