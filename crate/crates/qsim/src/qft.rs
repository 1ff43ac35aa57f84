use std::f64::consts::PI;

use crate::circuit::Circuit;
use crate::gate::{ControlSpec, Gate};

/// QFT on `k` qubits, `|x⟩ ↦ 2^{-k/2} Σ_y e^{2πixy/2^k} |y⟩`, built from
/// H, controlled phase gates and a final SWAP reversal.
pub fn qft_circuit(k: usize) -> Circuit {
    let mut c = Circuit::new(k);
    for j in (0..k).rev() {
        c.h(j).expect("qubit in range");
        for m in (0..j).rev() {
            let angle = PI / (1u64 << (j - m)) as f64;
            c.gate(Gate::rz(angle), &[j], ControlSpec::closed([m])).expect("distinct qubits");
        }
    }
    for i in 0..k / 2 {
        c.swap(i, k - 1 - i).expect("distinct qubits");
    }
    c
}

pub fn inverse_qft_circuit(k: usize) -> Circuit {
    qft_circuit(k).inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::StateVector;
    use crate::CMatrix;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_qubit_qft_is_hadamard() {
        let m = qft_circuit(1).to_matrix().unwrap();
        assert!((m - Gate::H.matrix()).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn matches_closed_form() {
        for k in 1..=5 {
            let n = 1usize << k;
            let m = qft_circuit(k).to_matrix().unwrap();
            let expected = CMatrix::from_fn(n, n, |y, x| {
                Complex64::from_polar(1.0 / (n as f64).sqrt(), 2.0 * PI * (x * y) as f64 / n as f64)
            });
            assert!((m - expected).iter().all(|z| z.norm() < 1e-12), "k={k}");
        }
    }

    #[test]
    fn basis_one_on_three_qubits() {
        let mut s = StateVector::new_state(3, 1).unwrap();
        qft_circuit(3).run(&mut s).unwrap();
        for j in 0..8 {
            let e = Complex64::from_polar(1.0 / 8f64.sqrt(), 2.0 * PI * j as f64 / 8.0);
            assert!((s.amplitude(j) - e).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_maps_to_uniform() {
        let s = qft_circuit(4).simulate().unwrap();
        assert!(s.amplitudes().iter().all(|a| (a - Complex64::new(0.25, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn round_trip_on_random_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let amps: Vec<Complex64> =
            (0..32).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let orig = StateVector::normalized(amps).unwrap();
        let mut s = orig.clone();
        qft_circuit(5).run(&mut s).unwrap();
        inverse_qft_circuit(5).run(&mut s).unwrap();
        assert!(s.amplitudes().iter().zip(orig.amplitudes()).all(|(a, b)| (a - b).norm() < 1e-10));
    }
}
