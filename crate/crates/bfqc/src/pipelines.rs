//! Belief-function operations assembled from chained matrix evolutions.
//!
//! Every pipeline starts from `|m⟩`, scales it to `m` with `diag(√m)`,
//! then applies the transform matrices in order. The final amplitudes are
//! non-negative for all the BBA-valued results here, so their magnitudes
//! are read out and rescaled classically.

use dst_core::{
    b_from_mass, build_matrix, normalize_conflict, normalize_plausibilities, q_from_mass, BeliefKind, FocalIndex,
    MassFunction, MatrixKind, TransformMatrix,
};
use qsim::{CMatrix, StateVector};

use crate::encoding::prepare_bba_state;
use crate::error::{BfqcError, Result};
use crate::meob::{evolve_state, to_cmatrix, Backend, MeobConfig};
use crate::query::{estimate_belief, BeliefQuery, QueryKind, Readout};
use crate::swap_test::swap_test;

/// Largest negative real part tolerated in an oracle readout.
pub const SIGN_TOL: f64 = 1e-9;

/// A pipeline result with the product of the stage success probabilities
/// and stage fidelities.
#[derive(Debug, Clone, PartialEq)]
pub struct QcOutput<T> {
    pub value: T,
    pub success_probability: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq)]
struct Chain {
    state: StateVector,
    success: f64,
    fidelity: f64,
}

fn matrix(kind: MatrixKind, m: &MassFunction, v: Option<&[f64]>) -> Result<CMatrix> {
    Ok(to_cmatrix(&build_matrix(kind, m.frame(), v)?))
}

fn diag(v: &[f64]) -> CMatrix {
    to_cmatrix(&TransformMatrix::diagonal(v))
}

fn run_chain(m: &MassFunction, stages: &[CMatrix], config: &MeobConfig) -> Result<Chain> {
    let mut chain = Chain { state: prepare_bba_state(m)?, success: 1.0, fidelity: 1.0 };
    for a in stages {
        let out = evolve_state(&chain.state, a, config)?;
        chain = Chain {
            state: out.state,
            success: chain.success * out.success_probability,
            fidelity: chain.fidelity * out.fidelity,
        };
    }
    Ok(chain)
}

fn sqrt_masses(m: &MassFunction) -> Vec<f64> {
    m.masses().iter().map(|x| x.sqrt()).collect()
}

/// Magnitudes of the amplitudes. The oracle backend also checks that no
/// real part is meaningfully negative.
fn magnitudes(state: &StateVector, backend: Backend) -> Result<Vec<f64>> {
    if backend == Backend::Oracle {
        if let Some((index, a)) = state.amplitudes().iter().enumerate().find(|(_, a)| a.re < -SIGN_TOL) {
            return Err(BfqcError::NegativeAmplitude { index, value: a.re });
        }
    }
    Ok(state.amplitudes().iter().map(|a| a.norm()).collect())
}

fn rescale(v: &[f64]) -> Vec<f64> {
    let total: f64 = v.iter().sum();
    v.iter().map(|x| x / total).collect()
}

/// Conjunctive combination: `diag(√m1)`, `M_q`, `diag(q2)`, `M_q⁻¹`, then
/// rescaling so the recovered masses sum to one.
pub fn ccr_qc(m1: &MassFunction, m2: &MassFunction, config: &MeobConfig) -> Result<QcOutput<MassFunction>> {
    m1.ensure_same_frame(m2)?;
    let q2 = q_from_mass(m2);
    let stages = [
        diag(&sqrt_masses(m1)),
        matrix(MatrixKind::Q, m1, None)?,
        diag(q2.values()),
        matrix(MatrixKind::QInv, m1, None)?,
    ];
    let chain = run_chain(m1, &stages, config)?;
    let masses = rescale(&magnitudes(&chain.state, config.backend)?);
    Ok(QcOutput {
        value: MassFunction::from_dense(m1.frame().clone(), masses)?,
        success_probability: chain.success,
        fidelity: chain.fidelity,
    })
}

/// Disjunctive combination: `diag(√m1)`, `M_b`, `diag(b2)`, `M_b⁻¹`.
pub fn dcr_qc(m1: &MassFunction, m2: &MassFunction, config: &MeobConfig) -> Result<QcOutput<MassFunction>> {
    m1.ensure_same_frame(m2)?;
    let b2 = b_from_mass(m2);
    let stages = [
        diag(&sqrt_masses(m1)),
        matrix(MatrixKind::B, m1, None)?,
        diag(b2.values()),
        matrix(MatrixKind::BInv, m1, None)?,
    ];
    let chain = run_chain(m1, &stages, config)?;
    let masses = rescale(&magnitudes(&chain.state, config.backend)?);
    Ok(QcOutput {
        value: MassFunction::from_dense(m1.frame().clone(), masses)?,
        success_probability: chain.success,
        fidelity: chain.fidelity,
    })
}

/// Dempster's rule as quantum CCR followed by classical normalization.
pub fn dempster_qc(m1: &MassFunction, m2: &MassFunction, config: &MeobConfig) -> Result<QcOutput<MassFunction>> {
    let ccr = ccr_qc(m1, m2, config)?;
    Ok(QcOutput { value: normalize_conflict(&ccr.value)?, ..ccr })
}

/// Normalized belief-function state `v / ‖v‖₂` for `v = M_kind · m`. The
/// scale of `v` is lost, so the result is meant for further quantum
/// processing rather than classical recovery.
pub fn belief_functions_qc(m: &MassFunction, kind: BeliefKind, config: &MeobConfig) -> Result<QcOutput<StateVector>> {
    let mk = match kind {
        BeliefKind::Bel => MatrixKind::Bel,
        BeliefKind::Pl => MatrixKind::Pl,
        BeliefKind::Q => MatrixKind::Q,
        BeliefKind::B => MatrixKind::B,
        BeliefKind::BetM => MatrixKind::Bet,
        BeliefKind::Fbba => MatrixKind::Fractal,
    };
    let chain = run_chain(m, &[diag(&sqrt_masses(m)), matrix(mk, m, None)?], config)?;
    Ok(QcOutput { value: chain.state, success_probability: chain.success, fidelity: chain.fidelity })
}

/// Pignistic probability from `M_Bet · m` restricted to singletons.
pub fn ppt_qc(m: &MassFunction, config: &MeobConfig) -> Result<QcOutput<Vec<f64>>> {
    if m.empty_mass() > 0.0 {
        return Err(dst_core::DstError::DegenerateEmptyMass(m.empty_mass()).into());
    }
    let chain = run_chain(m, &[diag(&sqrt_masses(m)), matrix(MatrixKind::Bet, m, None)?], config)?;
    let mags = magnitudes(&chain.state, config.backend)?;
    let singletons: Vec<f64> = (0..m.n()).map(|i| mags[FocalIndex::singleton(i).index()]).collect();
    Ok(QcOutput { value: rescale(&singletons), success_probability: chain.success, fidelity: chain.fidelity })
}

/// Plausibility probability from one Pl query per singleton.
pub fn ptm_qc(m: &MassFunction, readout: Readout) -> Result<Vec<f64>> {
    let pl = (0..m.n())
        .map(|i| {
            let r = match readout {
                Readout::Shots { shots, seed } => Readout::Shots { shots, seed: seed.wrapping_add(2 * i as u64) },
                r => r,
            };
            estimate_belief(m, BeliefQuery::new(QueryKind::Pl, FocalIndex::singleton(i)), r)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(normalize_plausibilities(&pl)?)
}

/// Fractal-based inner product: both BBAs are evolved to their FBBA
/// states and compared with a swap test, which yields the squared
/// overlap; its square root is returned.
pub fn fb_inner_product_qc(
    m1: &MassFunction,
    m2: &MassFunction,
    config: &MeobConfig,
    readout: Readout,
) -> Result<QcOutput<f64>> {
    m1.ensure_same_frame(m2)?;
    let fractal = matrix(MatrixKind::Fractal, m1, None)?;
    let c1 = run_chain(m1, &[diag(&sqrt_masses(m1)), fractal.clone()], config)?;
    let c2 = run_chain(m2, &[diag(&sqrt_masses(m2)), fractal], config)?;
    let st = swap_test(&c1.state, &c2.state, readout)?;
    Ok(QcOutput {
        value: st.estimate.max(0.0).sqrt(),
        success_probability: c1.success * c2.success,
        fidelity: c1.fidelity * c2.fidelity,
    })
}
