use std::fmt;

use crate::error::{DstError, Result};
use crate::MAX_ELEMENTS;

/// Ordered, labelled frame of discernment.
///
/// Element `k` (zero-based) owns bit `k` of every [`FocalIndex`] over this
/// frame, so `{θ1}` is index 1, `{θ2}` is index 2 and `Θ` is `2^n - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    names: Vec<String>,
}

impl Frame {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(DstError::EmptyFrame);
        }
        if names.len() > MAX_ELEMENTS {
            return Err(DstError::FrameTooLarge(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.trim().is_empty() {
                return Err(DstError::InvalidLabel(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(DstError::DuplicateElement(name.clone()));
            }
        }
        Ok(Self { names })
    }

    /// Frame with labels `θ1 … θn`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|k| format!("θ{k}")))
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    /// Number of subsets, `2^n`.
    pub fn size(&self) -> usize {
        1 << self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_index(&self, label: &str) -> Result<usize> {
        self.names.iter().position(|n| n == label).ok_or_else(|| DstError::UnknownElement(label.to_string()))
    }

    pub fn focal<S: AsRef<str>>(&self, labels: &[S]) -> Result<FocalIndex> {
        let mut bits = 0u32;
        for label in labels {
            bits |= 1 << self.element_index(label.as_ref())?;
        }
        Ok(FocalIndex(bits))
    }

    pub fn full(&self) -> FocalIndex {
        FocalIndex((self.size() - 1) as u32)
    }

    pub fn labels(&self, focal: FocalIndex) -> Vec<&str> {
        self.names.iter().enumerate().filter(|(k, _)| focal.contains(*k)).map(|(_, n)| n.as_str()).collect()
    }

    /// Compact display form: `∅`, `A`, `{A,B}` style labels joined without separators
    /// when every label is a single character, comma separated otherwise.
    pub fn display(&self, focal: FocalIndex) -> String {
        if focal.is_empty() {
            return "∅".to_string();
        }
        let labels = self.labels(focal);
        if labels.iter().all(|l| l.chars().count() == 1) {
            labels.concat()
        } else {
            format!("{{{}}}", labels.join(","))
        }
    }
}

/// Subset of a frame encoded as a bitmask (bit `k` ⇔ element `k` present).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FocalIndex(pub u32);

impl FocalIndex {
    pub const EMPTY: FocalIndex = FocalIndex(0);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn singleton(element: usize) -> Self {
        FocalIndex(1 << element)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn cardinality(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, element: usize) -> bool {
        self.0 >> element & 1 == 1
    }

    pub fn is_subset_of(self, other: FocalIndex) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn intersect(self, other: FocalIndex) -> Self {
        FocalIndex(self.0 & other.0)
    }

    pub fn union(self, other: FocalIndex) -> Self {
        FocalIndex(self.0 | other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        FocalIndex(!self.0 & ((1u32 << n) - 1))
    }
}

impl fmt::Display for FocalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

impl From<usize> for FocalIndex {
    fn from(i: usize) -> Self {
        FocalIndex(i as u32)
    }
}
