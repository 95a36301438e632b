use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A multiset of offset-adjusted citation counts.
///
/// Every count is at least 1; `offset_applied` records what was added to the
/// raw citation counts when the sample was ingested.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitationSample {
    counts: Vec<u64>,
    offset_applied: u64,
    label: String,
}

impl CitationSample {
    /// Builds a sample of already offset-adjusted counts.
    pub fn new(counts: Vec<u64>, offset_applied: u64, label: impl Into<String>) -> Result<Self> {
        if let Some(pos) = counts.iter().position(|&c| c == 0) {
            return Err(Error::Domain(format!("0 (element {pos})")));
        }
        Ok(Self {
            counts,
            offset_applied,
            label: label.into(),
        })
    }

    /// Shorthand for a sample with the default offset of 1 recorded.
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        Self::new(counts, 1, "")
    }

    pub(crate) fn from_counts_unchecked(counts: Vec<u64>, offset_applied: u64, label: String) -> Self {
        debug_assert!(counts.iter().all(|&c| c >= 1));
        Self {
            counts,
            offset_applied,
            label,
        }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn offset_applied(&self) -> u64 {
        self.offset_applied
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn max(&self) -> Option<u64> {
        self.counts.iter().copied().max()
    }

    pub fn mean(&self) -> Option<f64> {
        if self.counts.is_empty() {
            return None;
        }
        Some(self.counts.iter().map(|&c| c as f64).sum::<f64>() / self.counts.len() as f64)
    }

    /// Concatenates two samples, keeping this sample's label and offset.
    pub fn concat(&self, other: &CitationSample) -> CitationSample {
        let mut counts = self.counts.clone();
        counts.extend_from_slice(&other.counts);
        Self::from_counts_unchecked(counts, self.offset_applied, self.label.clone())
    }

    /// True when every count has the same value.
    pub fn is_constant(&self) -> bool {
        match self.counts.first() {
            Some(&first) => self.counts.iter().all(|&c| c == first),
            None => false,
        }
    }

    /// Distinct values with their multiplicities, sorted by value.
    pub fn histogram(&self) -> Histogram {
        let mut sorted = self.counts.clone();
        sorted.sort_unstable();
        let mut values = Vec::new();
        let mut freqs = Vec::new();
        for c in sorted {
            if values.last() == Some(&c) {
                *freqs.last_mut().unwrap() += 1;
            } else {
                values.push(c);
                freqs.push(1);
            }
        }
        Histogram {
            values,
            freqs,
            total: self.counts.len() as u64,
        }
    }

    pub(crate) fn require_non_empty(&self) -> Result<()> {
        if self.counts.is_empty() {
            Err(Error::EmptySample)
        } else {
            Ok(())
        }
    }
}

/// Sorted distinct values of a sample and how often each occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub values: Vec<u64>,
    pub freqs: Vec<u64>,
    pub total: u64,
}

impl Histogram {
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.values.iter().copied().zip(self.freqs.iter().copied())
    }

    /// Empirical CDF at each distinct value.
    pub fn cumulative(&self) -> Vec<f64> {
        let n = self.total as f64;
        let mut acc = 0u64;
        self.freqs
            .iter()
            .map(|&f| {
                acc += f;
                acc as f64 / n
            })
            .collect()
    }

    /// Empirical CDF at an arbitrary point.
    pub fn ecdf(&self, x: u64) -> f64 {
        let idx = self.values.partition_point(|&v| v <= x);
        let below: u64 = self.freqs[..idx].iter().sum();
        below as f64 / self.total as f64
    }

    /// Smallest atom whose empirical CDF reaches `level`.
    pub fn quantile_atom(&self, level: f64) -> Option<u64> {
        let cum = self.cumulative();
        cum.iter()
            .position(|&c| c >= level)
            .map(|i| self.values[i])
    }
}
