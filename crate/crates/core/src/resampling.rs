//! Bootstrap resampling and order-statistic confidence intervals.

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::CitationSample;
use crate::seed;

/// With fewer reps the 2.5% tail holds no order statistic of its own.
pub const MIN_REPS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResampleSize {
    SameSize,
    Fixed(usize),
}

impl ResampleSize {
    pub fn resolve(self, source_len: usize) -> usize {
        match self {
            ResampleSize::SameSize => source_len,
            ResampleSize::Fixed(n) => n,
        }
    }
}

/// Median and 95% order-statistic interval of a replicated statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudySummary {
    pub statistic_name: String,
    pub median: f64,
    pub lo95: f64,
    pub hi95: f64,
    pub reps: usize,
    /// Reps whose statistic could not be computed; excluded from the interval.
    pub failed: usize,
    /// Successful values in rep order.
    pub raw: Vec<f64>,
}

/// `ceil(0.025 m)` in integer arithmetic; 25 for `m = 1000`.
pub fn tail_rank(m: usize) -> usize {
    (m * 25).div_ceil(1000).max(1)
}

impl StudySummary {
    /// Summarises per-rep outcomes; `None` marks a failed rep.
    pub fn from_outcomes(statistic_name: impl Into<String>, outcomes: Vec<Option<f64>>) -> Result<Self> {
        let reps = outcomes.len();
        let raw: Vec<f64> = outcomes.into_iter().flatten().collect();
        let failed = reps - raw.len();
        if raw.is_empty() {
            return Err(Error::AllStatisticsFailed(reps));
        }
        let mut sorted = raw.clone();
        sorted.sort_by(f64::total_cmp);
        let m = sorted.len();
        let k = tail_rank(m);
        let median = if m % 2 == 1 {
            sorted[m / 2]
        } else {
            0.5 * (sorted[m / 2 - 1] + sorted[m / 2])
        };
        Ok(Self {
            statistic_name: statistic_name.into(),
            median,
            lo95: sorted[k - 1],
            hi95: sorted[m - k],
            reps,
            failed,
            raw,
        })
    }
}

/// `size` draws with replacement from `sample`.
pub fn resample(sample: &CitationSample, size: usize, seed: u64) -> Result<CitationSample> {
    sample.require_non_empty()?;
    let counts = sample.counts();
    let mut rng = seed::rng(seed);
    let drawn = (0..size)
        .map(|_| counts[rng.random_range(0..counts.len())])
        .collect();
    Ok(CitationSample::from_counts_unchecked(
        drawn,
        sample.offset_applied(),
        format!("{} (bootstrap)", sample.label()),
    ))
}

/// Runs `statistic` on `reps` bootstrap resamples.
///
/// Rep `i` resamples with a seed derived from `(seed, i)`; reps run in
/// parallel but the summary is identical for any thread count.
pub fn bootstrap_study<F>(
    sample: &CitationSample,
    reps: usize,
    size: ResampleSize,
    statistic_name: &str,
    statistic: F,
    seed: u64,
) -> Result<StudySummary>
where
    F: Fn(&CitationSample) -> Result<f64> + Sync,
{
    if reps < MIN_REPS {
        return Err(Error::TooFewReps { reps, min: MIN_REPS });
    }
    sample.require_non_empty()?;
    let size = size.resolve(sample.len());
    let outcomes: Vec<Option<f64>> = (0..reps)
        .into_par_iter()
        .map(|i| {
            let resampled = resample(sample, size, seed::derive(seed, seed::tag::BOOTSTRAP, i as u64)).ok()?;
            statistic(&resampled).ok().filter(|v| v.is_finite())
        })
        .collect();
    StudySummary::from_outcomes(statistic_name, outcomes)
}
