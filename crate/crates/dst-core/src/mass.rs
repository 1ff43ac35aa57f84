use crate::error::{DstError, Result};
use crate::frame::{FocalIndex, Frame};

/// Tolerance on `|Σ m − 1|` for user-supplied masses.
pub const INGEST_SUM_TOL: f64 = 1e-9;

/// Basic belief assignment stored densely over the power set, indexed by
/// [`FocalIndex`] bits.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    masses: Vec<f64>,
}

impl MassFunction {
    /// Builds a mass function from a dense vector of `2^n` masses.
    pub fn from_dense(frame: Frame, masses: Vec<f64>) -> Result<Self> {
        if masses.len() != frame.size() {
            return Err(DstError::DimensionMismatch { expected: frame.size(), got: masses.len() });
        }
        for (i, &v) in masses.iter().enumerate() {
            let focal = || frame.display(FocalIndex::from(i));
            if !v.is_finite() {
                return Err(DstError::NonFiniteMass(focal()));
            }
            if v < 0.0 {
                return Err(DstError::NegativeMass { focal: focal(), mass: v });
            }
            if v > 1.0 + INGEST_SUM_TOL {
                return Err(DstError::MassAboveOne { focal: focal(), mass: v });
            }
        }
        let sum: f64 = masses.iter().sum();
        if (sum - 1.0).abs() > INGEST_SUM_TOL {
            return Err(DstError::MassSumViolation(sum));
        }
        Ok(Self { frame, masses })
    }

    /// Wraps the output of an internal computation, clamping round-off
    /// negatives no larger than `tol` to zero.
    pub(crate) fn from_computed(frame: Frame, mut masses: Vec<f64>, tol: f64) -> Result<Self> {
        for (index, v) in masses.iter_mut().enumerate() {
            if *v < -tol {
                return Err(DstError::InverseNotBba { index, value: *v });
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        Self::from_dense(frame, masses)
    }

    pub fn vacuous(frame: Frame) -> Self {
        let mut masses = vec![0.0; frame.size()];
        *masses.last_mut().unwrap() = 1.0;
        Self { frame, masses }
    }

    /// Categorical BBA with all mass on `focal`.
    pub fn certain(frame: Frame, focal: FocalIndex) -> Self {
        let mut masses = vec![0.0; frame.size()];
        masses[focal.index()] = 1.0;
        Self { frame, masses }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn mass(&self, focal: FocalIndex) -> f64 {
        self.masses[focal.index()]
    }

    pub fn empty_mass(&self) -> f64 {
        self.masses[0]
    }

    pub fn focal_sets(&self) -> impl Iterator<Item = (FocalIndex, f64)> + '_ {
        self.masses.iter().enumerate().filter(|(_, &v)| v > 0.0).map(|(i, &v)| (FocalIndex::from(i), v))
    }

    pub fn focal_count(&self) -> usize {
        self.focal_sets().count()
    }

    pub fn ensure_same_frame(&self, other: &MassFunction) -> Result<()> {
        if self.frame == other.frame {
            Ok(())
        } else {
            Err(DstError::FrameMismatch)
        }
    }

    pub fn is_subnormal(&self) -> bool {
        self.masses[0] > 0.0
    }

    pub fn is_normal(&self) -> bool {
        !self.is_subnormal()
    }

    pub fn is_bayesian(&self) -> bool {
        self.focal_sets().all(|(f, _)| f.cardinality() == 1)
    }

    pub fn is_vacuous(&self) -> bool {
        (self.masses[self.masses.len() - 1] - 1.0).abs() <= INGEST_SUM_TOL
    }

    /// Focal sets form a chain under inclusion.
    pub fn is_consonant(&self) -> bool {
        let mut focal: Vec<FocalIndex> = self.focal_sets().map(|(f, _)| f).collect();
        focal.sort_by_key(|f| f.cardinality());
        focal.windows(2).all(|w| w[0].is_subset_of(w[1]))
    }
}

/// Builds a dense [`MassFunction`] from `(labels, mass)` entries. Subsets not
/// listed get mass 0.
pub fn validate_bba<I, L, S>(frame: &Frame, entries: I) -> Result<MassFunction>
where
    I: IntoIterator<Item = (L, f64)>,
    L: AsRef<[S]>,
    S: AsRef<str>,
{
    let mut masses = vec![0.0; frame.size()];
    let mut seen = vec![false; frame.size()];
    for (labels, mass) in entries {
        let focal = frame.focal(labels.as_ref())?;
        if std::mem::replace(&mut seen[focal.index()], true) {
            return Err(DstError::DuplicateFocalSet(frame.display(focal)));
        }
        masses[focal.index()] = mass;
    }
    MassFunction::from_dense(frame.clone(), masses)
}
