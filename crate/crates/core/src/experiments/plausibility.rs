//! One KS plausibility row per subject: both fits, both Monte-Carlo p-values.

use serde::{Deserialize, Serialize};

use crate::distributions::Family;
use crate::error::{Error, Result};
use crate::fitting::{FitConfig, FitStatus};
use crate::gof::{ks_p_value, GofResult, RefitMode};
use crate::io::report::{fmt_opt, ReportRow};
use crate::sample::CitationSample;
use crate::seed;

/// Significance level below which a family is rejected.
pub const PLAUSIBILITY_LEVEL: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlausibilityRow {
    pub subject: String,
    pub n: usize,
    pub ln_mu: Option<f64>,
    pub ln_sigma: Option<f64>,
    pub ln_ks: Option<f64>,
    pub ln_p: Option<f64>,
    pub hook_alpha: Option<f64>,
    pub hook_b: Option<f64>,
    pub hook_ks: Option<f64>,
    pub hook_p: Option<f64>,
    /// `H`, `L`, `H,L` or empty.
    pub plausible: String,
    pub notes: Vec<String>,
}

impl ReportRow for PlausibilityRow {
    const COLUMNS: &'static [&'static str] = &[
        "Subject",
        "N",
        "Ln μ",
        "Ln σ",
        "Ln KS",
        "Ln KS p",
        "Hook α",
        "Hook B",
        "Hook KS",
        "Hook KS p",
        "Plausible",
    ];

    fn cells(&self) -> Vec<String> {
        vec![
            self.subject.clone(),
            self.n.to_string(),
            fmt_opt(self.ln_mu),
            fmt_opt(self.ln_sigma),
            fmt_opt(self.ln_ks),
            fmt_opt(self.ln_p),
            fmt_opt(self.hook_alpha),
            fmt_opt(self.hook_b),
            fmt_opt(self.hook_ks),
            fmt_opt(self.hook_p),
            self.plausible.clone(),
        ]
    }

    fn notes(&self) -> Vec<String> {
        self.notes.iter().map(|n| format!("{}: {n}", self.subject)).collect()
    }
}

impl PlausibilityRow {
    pub fn is_degenerate(&self) -> bool {
        self.notes.iter().any(|n| n.starts_with("Degenerate"))
    }

    pub fn lognormal_plausible(&self) -> bool {
        self.plausible.contains('L')
    }

    pub fn hooked_plausible(&self) -> bool {
        self.plausible.contains('H')
    }
}

/// Fits both families to `sample` and tests each with `n_sim` Monte-Carlo
/// simulations from its fitted model.
///
/// Fit failures become row notes rather than errors; only an empty sample or
/// `n_sim = 0` is rejected.
pub fn plausibility_row(sample: &CitationSample, n_sim: usize, seed: u64, config: &FitConfig) -> Result<PlausibilityRow> {
    sample.require_non_empty()?;
    if n_sim == 0 {
        return Err(Error::Parameter("n_sim must be positive".into()));
    }
    let mut row = PlausibilityRow {
        subject: sample.label().to_string(),
        n: sample.len(),
        ln_mu: None,
        ln_sigma: None,
        ln_ks: None,
        ln_p: None,
        hook_alpha: None,
        hook_b: None,
        hook_ks: None,
        hook_p: None,
        plausible: String::new(),
        notes: Vec::new(),
    };
    if sample.is_constant() {
        row.notes.push(format!(
            "Degenerate: all counts equal {}, no distribution fitted",
            sample.counts()[0]
        ));
        return Ok(row);
    }

    let mut flags = Vec::new();
    for (k, family) in [Family::Hooked, Family::Lognormal].into_iter().enumerate() {
        let family_seed = seed::derive(seed, seed::tag::FAMILY, k as u64);
        let outcome = ks_p_value(family, sample, n_sim, family_seed, RefitMode::FixedParams, config);
        match outcome {
            Ok(g) => {
                record(&mut row, family, &g);
                if g.fit_status != FitStatus::Converged {
                    row.notes.push(format!("{family} fit {}", g.fit_status));
                }
                if g.is_plausible(PLAUSIBILITY_LEVEL) {
                    flags.push(match family {
                        Family::Hooked => "H",
                        Family::Lognormal => "L",
                    });
                }
            }
            Err(e) => row.notes.push(format!("{family} fit failed: {e}")),
        }
    }
    row.plausible = flags.join(",");
    Ok(row)
}

fn record(row: &mut PlausibilityRow, family: Family, g: &GofResult) {
    let (first, second) = g.model.param_pair();
    match family {
        Family::Lognormal => {
            row.ln_mu = Some(first);
            row.ln_sigma = Some(second);
            row.ln_ks = Some(g.ks_stat);
            row.ln_p = Some(g.p_value);
        }
        Family::Hooked => {
            row.hook_alpha = Some(first);
            row.hook_b = Some(second);
            row.hook_ks = Some(g.ks_stat);
            row.hook_p = Some(g.p_value);
        }
    }
}

/// Rows for several subjects; subject `i` uses a seed derived from `(seed, i)`.
pub fn plausibility_table(samples: &[CitationSample], n_sim: usize, seed: u64, config: &FitConfig) -> Result<Vec<PlausibilityRow>> {
    samples
        .iter()
        .enumerate()
        .map(|(i, s)| plausibility_row(s, n_sim, seed::derive(seed, seed::tag::SUBJECT, i as u64), config))
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::ModelSpec;

    #[test]
    fn constant_sample_is_degenerate() {
        let s = CitationSample::new(vec![3, 3, 3], 1, "flat").unwrap();
        let row = plausibility_row(&s, 19, 1, &FitConfig::default()).unwrap();
        assert!(row.is_degenerate());
        assert!(row.ln_p.is_none() && row.hook_p.is_none());
        assert_eq!(row.plausible, "");
        assert_eq!(row.cells()[5], "NA");
    }

    #[test]
    fn schema_matches_table_columns() {
        assert_eq!(PlausibilityRow::COLUMNS.len(), 11);
        assert_eq!(PlausibilityRow::COLUMNS[0], "Subject");
        assert_eq!(PlausibilityRow::COLUMNS[10], "Plausible");
    }

    #[test]
    fn lognormal_data_row() {
        let m = ModelSpec::lognormal(2.08, 1.11).unwrap();
        let s = m.sample(1043, 5);
        let row = plausibility_row(&s, 99, 5, &FitConfig::default()).unwrap();
        assert!((row.ln_mu.unwrap() - 2.08).abs() < 0.15);
        assert!(row.lognormal_plausible());
        assert_eq!(row.cells().len(), PlausibilityRow::COLUMNS.len());
    }
}
