use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use bfqc::{
    belief_functions_qc, ccr_qc, dcr_qc, dempster_qc, estimate_belief, fb_inner_product_qc, ppt_qc,
    preparation_circuit, prepare_bba_state, ptm_qc, swap_test, BeliefQuery, MeobConfig, QueryKind, Readout,
};
use dst_core::{
    bel_from_mass, bet_m, betp, classical_fidelity, combine_conjunctive, combine_dempster, combine_disjunctive,
    euclidean_distance, fb_entropy, fb_inner_product, fbba, inner_bba, jousselme_distance, js_entropy, pl_from_mass,
    pl_p, q_from_mass, BeliefKind, FocalIndex, Frame, MassFunction,
};
use qsim::{sample, to_qasm};

use crate::args::{
    Backend, Cli, Command, EmitFormat, EntropyKind, Measure, ProbMethod, QuantumArgs, Rule, TransformKind,
};
use crate::document::{fmt_real, read_input, subset_labels, CountEntry, Input, Payload, ResultDocument};
use crate::error::CliError;
use crate::trend::{trend_csv, trend_rows};

pub const NORMALIZED_ONLY: &str =
    "normalized-only: values are v/||v||_2 for the transform vector v; its overall scale is not recoverable from the quantum state";

/// Runs one command and returns what it prints on stdout.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let start = Instant::now();
    let finish = |doc: ResultDocument| -> Result<String, CliError> {
        let mut doc = doc.finalize()?;
        if cli.timing {
            doc.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        Ok(doc.to_json())
    };
    match &cli.command {
        Command::Validate { path } => validate(path),
        Command::Transform { kind, quantum, path } => finish(transform(*kind, quantum, &read_input(path)?)?),
        Command::Combine { rule, quantum, m1, m2 } => {
            finish(combine(*rule, quantum, &read_input(m1)?, &read_input(m2)?)?)
        }
        Command::Similarity { measure, quantum, m1, m2 } => {
            finish(similarity(*measure, quantum, &read_input(m1)?, &read_input(m2)?)?)
        }
        Command::Entropy { kind, path } => finish(entropy(*kind, &read_input(path)?)?),
        Command::Prob { method, quantum, path } => finish(prob(*method, quantum, &read_input(path)?)?),
        Command::Prepare { path, emit, out, shots, seed } => {
            let input = read_input(path)?;
            if emit.is_some() && out.is_none() && shots.is_some() {
                return Err(CliError::validation(
                    "ConflictingOutput",
                    "--emit with --shots needs --out for the circuit",
                ));
            }
            let mut stdout = String::new();
            if let Some(format) = emit {
                let text = emit_circuit(&input.mass, *format)?;
                match out {
                    Some(p) => write_file(p, &text)?,
                    None => stdout.push_str(&text),
                }
            }
            if shots.is_some() || emit.is_none() {
                stdout.push_str(&finish(prepare(&input, *shots, *seed)?)?);
            }
            Ok(stdout)
        }
        Command::DemoExample3 { shots, seed } => demo_example3(*shots, *seed),
        Command::TrendFb { out } => {
            let text = trend_csv(&trend_rows()?)?;
            match out {
                Some(p) => {
                    write_file(p, &text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, &e))
}

fn meob_config(q: &QuantumArgs) -> MeobConfig {
    match q.backend {
        Backend::QuantumCircuit => MeobConfig::circuit(q.clock_qubits),
        _ => MeobConfig::oracle(),
    }
}

fn readout(q: &QuantumArgs) -> Readout {
    match q.shots {
        Some(shots) => Readout::Shots { shots, seed: q.seed },
        None => Readout::Statevector,
    }
}

fn unsupported(what: &str, backend: Backend) -> CliError {
    CliError::validation("UnsupportedBackend", format!("{what} has no {} route", backend.name()))
}

pub fn validate(path: &Path) -> Result<String, CliError> {
    let m = read_input(path)?.mass;
    let sum: f64 = m.masses().iter().sum();
    let mut flags = vec![if m.is_normal() { "normal" } else { "subnormal" }];
    for (set, name) in [(m.is_bayesian(), "bayesian"), (m.is_consonant(), "consonant"), (m.is_vacuous(), "vacuous")] {
        if set {
            flags.push(name);
        }
    }
    let count = m.focal_count();
    let plural = if count == 1 { "" } else { "s" };
    Ok(format!("valid, {count} focal set{plural}, {}\nsum: {}\n", flags.join(", "), fmt_real(sum)))
}

fn vector(frame: &Frame, values: Vec<f64>) -> Payload {
    Payload::Vector { labels: subset_labels(frame), values }
}

fn element_vector(frame: &Frame, values: Vec<f64>) -> Payload {
    Payload::Vector { labels: frame.names().to_vec(), values }
}

pub fn transform(kind: TransformKind, q: &QuantumArgs, input: &Input) -> Result<ResultDocument, CliError> {
    let m = &input.mass;
    let op = format!("transform-{kind:?}").to_lowercase();
    if q.backend == Backend::Classical {
        let values = match kind {
            TransformKind::Bel => bel_from_mass(m).into_values(),
            TransformKind::Pl => pl_from_mass(m).into_values(),
            TransformKind::Q => q_from_mass(m).into_values(),
            TransformKind::Fbba => fbba(m)?.masses().to_vec(),
            TransformKind::Betm => bet_m(m)?.into_values(),
        };
        return Ok(ResultDocument::new(&op, &[input], q.backend.name(), vector(m.frame(), values)));
    }
    let belief = match kind {
        TransformKind::Bel => BeliefKind::Bel,
        TransformKind::Pl => BeliefKind::Pl,
        TransformKind::Q => BeliefKind::Q,
        TransformKind::Fbba => BeliefKind::Fbba,
        TransformKind::Betm => {
            if m.empty_mass() > 0.0 {
                return Err(dst_core::DstError::DegenerateEmptyMass(m.empty_mass()).into());
            }
            BeliefKind::BetM
        }
    };
    let out = belief_functions_qc(m, belief, &meob_config(q))?;
    let mags: Vec<f64> = out.value.amplitudes().iter().map(|a| a.norm()).collect();
    let doc = match kind {
        // An FBBA sums to one and BetM(Θ) = 1, so both rescale exactly.
        TransformKind::Fbba => {
            let total: f64 = mags.iter().sum();
            ResultDocument::new(
                &op,
                &[input],
                q.backend.name(),
                vector(m.frame(), mags.iter().map(|x| x / total).collect()),
            )
        }
        TransformKind::Betm => {
            let top = mags[m.frame().full().index()];
            ResultDocument::new(
                &op,
                &[input],
                q.backend.name(),
                vector(m.frame(), mags.iter().map(|x| x / top).collect()),
            )
        }
        _ => ResultDocument::new(&op, &[input], q.backend.name(), vector(m.frame(), mags)).with_note(NORMALIZED_ONLY),
    };
    Ok(doc.with_diagnostics(out.success_probability, out.fidelity))
}

pub fn combine(rule: Rule, q: &QuantumArgs, a: &Input, b: &Input) -> Result<ResultDocument, CliError> {
    let (m1, m2) = (&a.mass, &b.mass);
    let op = format!("combine-{rule:?}").to_lowercase();
    if q.backend == Backend::Classical {
        let m = match rule {
            Rule::Ccr => combine_conjunctive(m1, m2)?,
            Rule::Dcr => combine_disjunctive(m1, m2)?,
            Rule::Dempster => combine_dempster(m1, m2)?,
        };
        return Ok(ResultDocument::new(&op, &[a, b], q.backend.name(), Payload::bba(&m)));
    }
    let config = meob_config(q);
    let out = match rule {
        Rule::Ccr => ccr_qc(m1, m2, &config)?,
        Rule::Dcr => dcr_qc(m1, m2, &config)?,
        Rule::Dempster => dempster_qc(m1, m2, &config)?,
    };
    Ok(ResultDocument::new(&op, &[a, b], q.backend.name(), Payload::bba(&out.value))
        .with_diagnostics(out.success_probability, out.fidelity))
}

pub fn similarity(measure: Measure, q: &QuantumArgs, a: &Input, b: &Input) -> Result<ResultDocument, CliError> {
    let (m1, m2) = (&a.mass, &b.mass);
    let name = match measure {
        Measure::Jousselme => "jousselme_distance",
        Measure::FbInner => "fb_inner_product",
        Measure::Fidelity => "fidelity",
        Measure::Euclidean => "euclidean_distance",
        Measure::InnerBba => "inner_bba",
    };
    let op = format!("similarity-{name}");
    let scalar = |value: f64| Payload::Scalar { name: name.to_string(), value };
    if q.backend == Backend::Classical {
        let value = match measure {
            Measure::Jousselme => jousselme_distance(m1, m2)?,
            Measure::FbInner => fb_inner_product(m1, m2)?,
            Measure::Fidelity => classical_fidelity(m1, m2)?,
            Measure::Euclidean => euclidean_distance(m1, m2)?,
            Measure::InnerBba => inner_bba(m1, m2)?,
        };
        return Ok(ResultDocument::new(&op, &[a, b], q.backend.name(), scalar(value)));
    }
    match measure {
        Measure::FbInner => {
            let out = fb_inner_product_qc(m1, m2, &meob_config(q), readout(q))?;
            Ok(ResultDocument::new(&op, &[a, b], q.backend.name(), scalar(out.value))
                .sampled(q.shots, q.seed)
                .with_diagnostics(out.success_probability, out.fidelity))
        }
        // ⟨m1|m2⟩ = Σ √(m1·m2) for the non-negative encodings.
        Measure::Fidelity => {
            m1.ensure_same_frame(m2)?;
            let st = swap_test(&prepare_bba_state(m1)?, &prepare_bba_state(m2)?, readout(q))?;
            Ok(ResultDocument::new(&op, &[a, b], q.backend.name(), scalar(st.estimate.max(0.0).sqrt()))
                .sampled(q.shots, q.seed))
        }
        _ => Err(unsupported(name, q.backend)),
    }
}

pub fn entropy(kind: EntropyKind, input: &Input) -> Result<ResultDocument, CliError> {
    let (name, value) = match kind {
        EntropyKind::Js => ("js_entropy_bits", js_entropy(&input.mass)?),
        EntropyKind::Fb => ("fb_entropy_bits", fb_entropy(&input.mass)?),
    };
    let op = format!("entropy-{kind:?}").to_lowercase();
    Ok(ResultDocument::new(&op, &[input], "classical", Payload::Scalar { name: name.to_string(), value }))
}

pub fn prob(method: ProbMethod, q: &QuantumArgs, input: &Input) -> Result<ResultDocument, CliError> {
    let m = &input.mass;
    let op = format!("prob-{method:?}").to_lowercase();
    let doc = match (method, q.backend) {
        (ProbMethod::Ppt, Backend::Classical) => {
            ResultDocument::new(&op, &[input], q.backend.name(), element_vector(m.frame(), betp(m)?))
        }
        (ProbMethod::Ptm, Backend::Classical) => {
            ResultDocument::new(&op, &[input], q.backend.name(), element_vector(m.frame(), pl_p(m)?))
        }
        (ProbMethod::Ppt, _) => {
            let out = ppt_qc(m, &meob_config(q))?;
            ResultDocument::new(&op, &[input], q.backend.name(), element_vector(m.frame(), out.value))
                .with_diagnostics(out.success_probability, out.fidelity)
        }
        // Plausibility queries are circuits on either quantum backend.
        (ProbMethod::Ptm, _) => {
            ResultDocument::new(&op, &[input], q.backend.name(), element_vector(m.frame(), ptm_qc(m, readout(q))?))
                .sampled(q.shots, q.seed)
        }
    };
    Ok(doc)
}

pub fn emit_circuit(m: &MassFunction, format: EmitFormat) -> Result<String, CliError> {
    let circuit = preparation_circuit(m);
    Ok(match format {
        EmitFormat::Qasm => to_qasm(&circuit)?,
        EmitFormat::CircuitJson => {
            let mut s = serde_json::to_string_pretty(&circuit).expect("circuit serializes");
            s.push('\n');
            s
        }
    })
}

pub fn prepare(input: &Input, shots: Option<u64>, seed: u64) -> Result<ResultDocument, CliError> {
    let m = &input.mass;
    let state = prepare_bba_state(m)?;
    let labels = subset_labels(m.frame());
    let counts = match shots {
        Some(n) => sample(&state, n, seed)?
            .counts
            .into_iter()
            .map(|(index, count)| CountEntry { index, focal: labels[index].clone(), count })
            .collect(),
        None => Vec::new(),
    };
    let payload = Payload::Measurement { labels, probabilities: state.probabilities(), counts };
    let backend = if shots.is_some() { "shots" } else { "statevector" };
    Ok(ResultDocument::new("prepare", &[input], backend, payload).sampled(shots, seed))
}

/// The three-element worked example: `m(A) = 1/18`, `m(B) = 1/6`,
/// `m(AB) = 1/9`, `m(C) = 1/6`, `m(AC) = 1/18`, `m(BC) = 2/9`, `m(ABC) = 2/9`.
pub fn example3() -> MassFunction {
    let frame = Frame::new(["A", "B", "C"]).expect("valid frame");
    let masses = vec![0.0, 1.0 / 18.0, 1.0 / 6.0, 1.0 / 9.0, 1.0 / 6.0, 1.0 / 18.0, 2.0 / 9.0, 2.0 / 9.0];
    MassFunction::from_dense(frame, masses).expect("valid masses")
}

pub fn demo_example3(shots: u64, seed: u64) -> Result<String, CliError> {
    let m = example3();
    let state = prepare_bba_state(&m)?;
    let mut out = String::new();
    let _ = writeln!(out, "prepared amplitudes over frame A, B, C");
    let _ = writeln!(out, "{:<6} {:>16} {:>16} {:>16}", "focal", "mass", "amplitude", "probability");
    for (i, a) in state.amplitudes().iter().enumerate() {
        let focal = m.frame().display(FocalIndex(i as u32));
        let _ = writeln!(
            out,
            "{focal:<6} {:>16} {:>16} {:>16}",
            fmt_real(m.masses()[i]),
            fmt_real(a.re),
            fmt_real(a.norm_sqr())
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{:<6} {:>16} {:>16} {:>12} {:>16} {:>12} {:>12}",
        "query", "exact", "statevector", "delta", "sampled", "delta", "3 sigma"
    );
    let queries = [("Pl(C)", QueryKind::Pl, 0b100, 2.0 / 3.0), ("q(BC)", QueryKind::Q, 0b110, 4.0 / 9.0)];
    for (i, (name, kind, focal, exact)) in queries.into_iter().enumerate() {
        let query = BeliefQuery::new(kind, FocalIndex(focal));
        let sv = estimate_belief(&m, query, Readout::Statevector)?;
        let sampled = estimate_belief(&m, query, Readout::Shots { shots, seed: seed.wrapping_add(i as u64) })?;
        let sigma3 = 3.0 * (exact * (1.0 - exact) / shots as f64).sqrt();
        let _ = writeln!(
            out,
            "{name:<6} {:>16} {:>16} {:>12} {:>16} {:>12} {:>12}",
            fmt_real(exact),
            fmt_real(sv),
            fmt_real(sv - exact),
            fmt_real(sampled),
            fmt_real(sampled - exact),
            fmt_real(sigma3)
        );
    }
    let _ = writeln!(out, "\nshots: {shots}, seed: {seed}");
    Ok(out)
}
