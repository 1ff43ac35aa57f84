//! Explicit `2^n × 2^n` matrices of the belief-function calculus.
//!
//! Rows and columns are indexed by [`FocalIndex`](crate::FocalIndex) bits.
//! The fast transforms in [`transform`](crate::transform) are checked
//! against these matrices, and the quantum pipelines evolve states by them.

use crate::error::{DstError, Result};
use crate::frame::Frame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    /// `1` iff `∅ ≠ G ⊆ F` (Bel excludes the empty focal set).
    Bel,
    /// `1` iff `F ∩ G ≠ ∅`.
    Pl,
    /// `1` iff `F ⊆ G`.
    Q,
    /// Inverse of [`MatrixKind::Q`].
    QInv,
    /// `1` iff `G ⊆ F`, empty set included.
    B,
    /// Inverse of [`MatrixKind::B`].
    BInv,
    /// Fractal transform: `1` at `(∅,∅)`, `1/(2^|G|−1)` iff `∅ ≠ F ⊆ G`.
    Fractal,
    /// Pignistic matrix `Cred · D`.
    Bet,
    /// `|F ∩ G|`.
    Cred,
    /// Diagonal `1/|F|`, with `0` for the empty set.
    D,
    /// Jaccard kernel `|F∩G| / |F∪G|`, `1` at `(∅,∅)`.
    Jaccard,
    /// `diag(v)` for a caller-supplied vector.
    Diag,
}

/// Dense row-major real matrix tagged with the construction that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformMatrix {
    kind: Option<MatrixKind>,
    dim: usize,
    entries: Vec<f64>,
}

fn card(x: usize) -> u32 {
    x.count_ones()
}

impl TransformMatrix {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Self { kind: None, dim, entries }
    }

    pub fn from_rows(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(DstError::DimensionMismatch { expected: dim * dim, got: entries.len() });
        }
        Ok(Self { kind: None, dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { 1.0 } else { 0.0 })
    }

    pub fn diagonal(v: &[f64]) -> Self {
        let mut m = Self::from_fn(v.len(), |r, c| if r == c { v[r] } else { 0.0 });
        m.kind = Some(MatrixKind::Diag);
        m
    }

    fn tagged(mut self, kind: MatrixKind) -> Self {
        self.kind = Some(kind);
        self
    }

    pub fn kind(&self) -> Option<MatrixKind> {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.dim + c]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim {
            return Err(DstError::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        Ok((0..self.dim).map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn mul(&self, other: &TransformMatrix) -> Result<TransformMatrix> {
        if other.dim != self.dim {
            return Err(DstError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == 0.0 {
                    continue;
                }
                let row = other.row(k);
                for (o, b) in out[r * n..(r + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { kind: None, dim: n, entries: out })
    }

    pub fn transpose(&self) -> TransformMatrix {
        Self::from_fn(self.dim, |r, c| self.get(c, r))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.dim).all(|r| (r + 1..self.dim).all(|c| (self.get(r, c) - self.get(c, r)).abs() <= tol))
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_abs_diff(&self, other: &TransformMatrix) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Inverse of a unit upper-triangular matrix by back-substitution.
    fn unit_upper_inverse(&self) -> TransformMatrix {
        let n = self.dim;
        let mut inv = vec![0.0; n * n];
        for col in 0..n {
            // Solve U x = e_col from the bottom row up.
            for r in (0..n).rev() {
                let mut acc = if r == col { 1.0 } else { 0.0 };
                for k in r + 1..n {
                    let u = self.get(r, k);
                    if u != 0.0 {
                        acc -= u * inv[k * n + col];
                    }
                }
                inv[r * n + col] = acc;
            }
        }
        Self { kind: None, dim: n, entries: inv }
    }

    /// Inverse of a unit lower-triangular matrix by forward substitution.
    fn unit_lower_inverse(&self) -> TransformMatrix {
        self.transpose().unit_upper_inverse().transpose()
    }
}

/// Builds the explicit matrix of `kind` over `frame`. `v` is required for
/// [`MatrixKind::Diag`] and ignored otherwise.
pub fn build_matrix(kind: MatrixKind, frame: &Frame, v: Option<&[f64]>) -> Result<TransformMatrix> {
    let dim = frame.size();
    let m = match kind {
        MatrixKind::Bel => TransformMatrix::from_fn(dim, |f, g| (g != 0 && g & f == g) as u8 as f64),
        MatrixKind::Pl => TransformMatrix::from_fn(dim, |f, g| (f & g != 0) as u8 as f64),
        MatrixKind::Q => TransformMatrix::from_fn(dim, |f, g| (f & g == f) as u8 as f64),
        MatrixKind::QInv => build_matrix(MatrixKind::Q, frame, None)?.unit_upper_inverse(),
        MatrixKind::B => TransformMatrix::from_fn(dim, |f, g| (g & f == g) as u8 as f64),
        MatrixKind::BInv => build_matrix(MatrixKind::B, frame, None)?.unit_lower_inverse(),
        MatrixKind::Fractal => TransformMatrix::from_fn(dim, |f, g| match (f, g) {
            (0, 0) => 1.0,
            (0, _) | (_, 0) => 0.0,
            _ if f & g == f => 1.0 / ((1u64 << card(g)) - 1) as f64,
            _ => 0.0,
        }),
        MatrixKind::Cred => TransformMatrix::from_fn(dim, |f, g| card(f & g) as f64),
        MatrixKind::D => {
            TransformMatrix::from_fn(dim, |f, g| if f == g && f != 0 { 1.0 / card(f) as f64 } else { 0.0 })
        }
        MatrixKind::Bet => {
            let cred = build_matrix(MatrixKind::Cred, frame, None)?;
            let d = build_matrix(MatrixKind::D, frame, None)?;
            cred.mul(&d)?
        }
        MatrixKind::Jaccard => {
            TransformMatrix::from_fn(dim, |f, g| if f | g == 0 { 1.0 } else { card(f & g) as f64 / card(f | g) as f64 })
        }
        MatrixKind::Diag => {
            let v = v.ok_or(DstError::DimensionMismatch { expected: dim, got: 0 })?;
            if v.len() != dim {
                return Err(DstError::DimensionMismatch { expected: dim, got: v.len() });
            }
            TransformMatrix::diagonal(v)
        }
    };
    Ok(m.tagged(kind))
}
