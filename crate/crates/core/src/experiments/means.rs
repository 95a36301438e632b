use serde::{Deserialize, Serialize};

use super::fixture::SubjectFixture;
use crate::io::report::{fmt_sig, ReportRow};

/// Per-subject closed-form means and their averages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanCrosscheck {
    pub ln_mean_avg: f64,
    pub hook_mean_avg: f64,
    pub rows: Vec<MeansRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeansRow {
    pub subject: String,
    pub ln_mean: f64,
    pub hook_mean: f64,
}

impl ReportRow for MeansRow {
    const COLUMNS: &'static [&'static str] = &["Subject", "Lognormal mean", "Hooked mean"];

    fn cells(&self) -> Vec<String> {
        vec![self.subject.clone(), fmt_sig(self.ln_mean), fmt_sig(self.hook_mean)]
    }
}

/// Averages `exp(mu + sigma^2/2)` and `b/(alpha - 1)` over the fixture rows.
pub fn mean_crosscheck(fixture: &[SubjectFixture]) -> MeanCrosscheck {
    let rows: Vec<MeansRow> = fixture
        .iter()
        .map(|s| MeansRow {
            subject: s.name.to_string(),
            ln_mean: (s.ln_mu + s.ln_sigma * s.ln_sigma / 2.0).exp(),
            hook_mean: s.hook_b / (s.hook_alpha - 1.0),
        })
        .collect();
    let n = rows.len().max(1) as f64;
    MeanCrosscheck {
        ln_mean_avg: rows.iter().map(|r| r.ln_mean).sum::<f64>() / n,
        hook_mean_avg: rows.iter().map(|r| r.hook_mean).sum::<f64>() / n,
        rows,
    }
}

impl MeanCrosscheck {
    /// Per-subject rows followed by an "Average" row.
    pub fn table(&self) -> Vec<MeansRow> {
        let mut rows = self.rows.clone();
        rows.push(MeansRow {
            subject: "Average".into(),
            ln_mean: self.ln_mean_avg,
            hook_mean: self.hook_mean_avg,
        });
        rows
    }
}
