//! Bootstrap intervals for the fitted lognormal scale parameter, per subject.

use serde::{Deserialize, Serialize};

use crate::distributions::Family;
use crate::error::Result;
use crate::fitting::{fit, FitConfig};
use crate::io::report::{fmt_opt, ReportRow};
use crate::resampling::{bootstrap_study, ResampleSize, StudySummary};
use crate::sample::CitationSample;
use crate::seed;

/// Resample size used for the scale comparison unless overridden.
pub const DEFAULT_SCALE_SIZE: ResampleSize = ResampleSize::Fixed(500);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleRow {
    pub subject: String,
    pub n: usize,
    pub lo95: Option<f64>,
    pub median: Option<f64>,
    pub hi95: Option<f64>,
    pub reps: usize,
    pub failed: usize,
    pub note: Option<String>,
}

impl ScaleRow {
    pub fn is_degenerate(&self) -> bool {
        self.note.as_deref().is_some_and(|n| n.starts_with("Degenerate"))
    }

    fn from_summary(sample: &CitationSample, summary: &StudySummary) -> Self {
        Self {
            subject: sample.label().to_string(),
            n: sample.len(),
            lo95: Some(summary.lo95),
            median: Some(summary.median),
            hi95: Some(summary.hi95),
            reps: summary.reps,
            failed: summary.failed,
            note: None,
        }
    }
}

impl ReportRow for ScaleRow {
    const COLUMNS: &'static [&'static str] = &["Subject", "N", "Lower 95% limit", "Median σ", "Upper 95% limit", "Reps", "Failed"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.subject.clone(),
            self.n.to_string(),
            fmt_opt(self.lo95),
            fmt_opt(self.median),
            fmt_opt(self.hi95),
            self.reps.to_string(),
            self.failed.to_string(),
        ]
    }

    fn notes(&self) -> Vec<String> {
        self.note.iter().map(|n| format!("{}: {n}", self.subject)).collect()
    }
}

/// Fitted lognormal σ of one sample. Collapsed fits report σ as fitted.
pub fn lognormal_sigma(sample: &CitationSample, config: &FitConfig) -> Result<f64> {
    Ok(fit(Family::Lognormal, sample, config)?.model.param_pair().1)
}

/// Bootstraps the fitted lognormal σ of each subject.
///
/// A constant sample cannot be fitted and yields a zero-width `Degenerate`
/// row; any other failure is noted on that subject's row only.
pub fn scale_ci_study(
    samples: &[CitationSample],
    reps: usize,
    size: ResampleSize,
    seed: u64,
    config: &FitConfig,
) -> Result<Vec<ScaleRow>> {
    let mut rows = Vec::with_capacity(samples.len());
    for (i, sample) in samples.iter().enumerate() {
        sample.require_non_empty()?;
        let subject_seed = seed::derive(seed, seed::tag::SUBJECT, i as u64);
        if sample.is_constant() {
            rows.push(ScaleRow {
                subject: sample.label().to_string(),
                n: sample.len(),
                lo95: None,
                median: None,
                hi95: None,
                reps,
                failed: reps,
                note: Some(format!("Degenerate: all counts equal {}", sample.counts()[0])),
            });
            continue;
        }
        let study = bootstrap_study(sample, reps, size, "lognormal_sigma", |s| lognormal_sigma(s, config), subject_seed);
        rows.push(match study {
            Ok(summary) => ScaleRow::from_summary(sample, &summary),
            Err(e) => ScaleRow {
                subject: sample.label().to_string(),
                n: sample.len(),
                lo95: None,
                median: None,
                hi95: None,
                reps,
                failed: reps,
                note: Some(format!("study failed: {e}")),
            },
        });
    }
    Ok(rows)
}
