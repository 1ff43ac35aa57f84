//! JSON input and output documents.
//!
//! Reals in a [`ResultDocument`] are rounded to 12 significant digits, and
//! nothing time-dependent is written unless `--timing` asks for it, so
//! identical inputs give byte-identical output.

use std::path::Path;

use dst_core::{validate_bba, FocalIndex, Frame, MassFunction};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const SCHEMA: &str = "bfqc-result/1";

/// Masses at or below this magnitude are left out of BBA payloads; they
/// are invisible at 12 significant digits of a unit total.
pub const DISPLAY_FLOOR: f64 = 5e-13;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FocalMass {
    pub focal: Vec<String>,
    pub mass: f64,
}

/// A BBA as read from disk: the frame's element labels and the focal sets
/// with their masses. Unlisted subsets carry no mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BbaDocument {
    pub frame: Vec<String>,
    pub masses: Vec<FocalMass>,
}

impl BbaDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::validation("ParseError", e.to_string()))
    }

    pub fn to_mass(&self) -> Result<MassFunction, CliError> {
        let frame = Frame::new(self.frame.iter().cloned())?;
        Ok(validate_bba(&frame, self.masses.iter().map(|e| (e.focal.clone(), e.mass)))?)
    }

    pub fn from_mass(m: &MassFunction) -> Self {
        let frame = m.frame();
        let masses = m
            .masses()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.abs() > DISPLAY_FLOOR)
            .map(|(i, &v)| FocalMass {
                focal: frame.labels(FocalIndex(i as u32)).into_iter().map(String::from).collect(),
                mass: v,
            })
            .collect();
        Self { frame: frame.names().to_vec(), masses }
    }
}

/// A parsed input file together with its raw bytes, which feed the digest.
#[derive(Debug, Clone)]
pub struct Input {
    pub mass: MassFunction,
    pub bytes: Vec<u8>,
}

pub fn read_input(path: &Path) -> Result<Input, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, &e))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::validation("ParseError", e.to_string()))?;
    let mass = BbaDocument::parse(text)?.to_mass()?;
    Ok(Input { mass, bytes })
}

/// SHA-256 over the length-prefixed input files, hex encoded.
pub fn inputs_digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// A real with 12 significant digits and no trailing zeros.
pub fn fmt_real(x: f64) -> String {
    let r = round12(x);
    if r == 0.0 {
        "0".to_string()
    } else if r.abs() < 1e-4 || r.abs() >= 1e12 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// Display label of every subset of `frame`, in index order.
pub fn subset_labels(frame: &Frame) -> Vec<String> {
    (0..frame.size()).map(|i| frame.display(FocalIndex(i as u32))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountEntry {
    pub index: usize,
    pub focal: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Scalar {
        name: String,
        value: f64,
    },
    Vector {
        labels: Vec<String>,
        values: Vec<f64>,
    },
    Bba {
        frame: Vec<String>,
        masses: Vec<FocalMass>,
    },
    Table {
        columns: Vec<String>,
        rows: Vec<Vec<f64>>,
    },
    Measurement {
        labels: Vec<String>,
        probabilities: Vec<f64>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        counts: Vec<CountEntry>,
    },
}

impl Payload {
    pub fn bba(m: &MassFunction) -> Self {
        let doc = BbaDocument::from_mass(m);
        Self::Bba { frame: doc.frame, masses: doc.masses }
    }

    fn reals_mut(&mut self) -> Vec<&mut f64> {
        match self {
            Self::Scalar { value, .. } => vec![value],
            Self::Vector { values, .. } => values.iter_mut().collect(),
            Self::Bba { masses, .. } => masses.iter_mut().map(|e| &mut e.mass).collect(),
            Self::Table { rows, .. } => rows.iter_mut().flatten().collect(),
            Self::Measurement { probabilities, .. } => probabilities.iter_mut().collect(),
        }
    }
}

/// Success probability and fidelity of a quantum pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub success_probability: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema: String,
    pub operation: String,
    pub inputs_digest: String,
    pub backend: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Diagnostics>,
    pub payload: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl ResultDocument {
    pub fn new(operation: &str, inputs: &[&Input], backend: &str, payload: Payload) -> Self {
        let bytes: Vec<&[u8]> = inputs.iter().map(|i| i.bytes.as_slice()).collect();
        Self {
            schema: SCHEMA.to_string(),
            operation: operation.to_string(),
            inputs_digest: inputs_digest(&bytes),
            backend: backend.to_string(),
            shots: None,
            seed: None,
            notes: Vec::new(),
            diagnostics: None,
            payload,
            wall_time_ms: None,
        }
    }

    pub fn sampled(mut self, shots: Option<u64>, seed: u64) -> Self {
        if shots.is_some() {
            self.shots = shots;
            self.seed = Some(seed);
        }
        self
    }

    pub fn with_diagnostics(mut self, success_probability: f64, fidelity: f64) -> Self {
        self.diagnostics = Some(Diagnostics { success_probability, fidelity });
        self
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.notes.push(note.to_string());
        self
    }

    /// Checks that every real is finite and rounds it to 12 significant digits.
    pub fn finalize(mut self) -> Result<Self, CliError> {
        let mut reals = self.payload.reals_mut();
        if let Some(d) = self.diagnostics.as_mut() {
            reals.push(&mut d.success_probability);
            reals.push(&mut d.fidelity);
        }
        for x in reals {
            if !x.is_finite() {
                return Err(CliError::computation("NonFinite", format!("non-finite value {x} in result")));
            }
            *x = round12(*x);
        }
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result serializes");
        s.push('\n');
        s
    }
}
