//! Replicated Vuong comparisons of the hooked and lognormal fits, on
//! bootstrap resamples or on data simulated from a generator.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compare::{tally_significance, vuong, Favored, Tally, VuongResult};
use crate::distributions::{Family, ModelSpec};
use crate::error::{Error, Result};
use crate::fitting::{fit, FitConfig};
use crate::io::report::{fmt_sig, ReportRow};
use crate::resampling::{resample, ResampleSize, StudySummary, MIN_REPS};
use crate::sample::CitationSample;
use crate::seed;

/// Fits both families and compares them with the hooked fit as model A, so a
/// positive z favours the hooked power law.
///
/// `None` when either fit errors or stops without converging.
pub fn compare_fits(sample: &CitationSample, config: &FitConfig) -> Option<VuongResult> {
    let hooked = fit(Family::Hooked, sample, config).ok().filter(|f| f.is_converged())?;
    let lognormal = fit(Family::Lognormal, sample, config).ok().filter(|f| f.is_converged())?;
    vuong(&hooked.model, &lognormal.model, sample).ok()
}

/// z summary plus significance counts; `tally.total() + failed == reps`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VuongStudy {
    pub sample_size: usize,
    pub reps: usize,
    pub failed: usize,
    /// `a_wins` counts the hooked law, `b_wins` the lognormal.
    pub tally: Tally,
    /// `None` when every rep failed.
    pub summary: Option<StudySummary>,
}

impl VuongStudy {
    fn from_results(sample_size: usize, results: Vec<Option<VuongResult>>) -> Self {
        let reps = results.len();
        let tally = tally_significance(results.iter().flatten());
        let failed = reps - tally.total();
        let summary = StudySummary::from_outcomes("vuong_z", results.iter().map(|r| r.as_ref().map(|v| v.z)).collect()).ok();
        Self {
            sample_size,
            reps,
            failed,
            tally,
            summary,
        }
    }

    pub fn hooked_wins(&self) -> usize {
        self.tally.a_wins
    }

    pub fn lognormal_wins(&self) -> usize {
        self.tally.b_wins
    }

    /// Reps where either family was significantly better.
    pub fn decisive(&self) -> usize {
        self.tally.a_wins + self.tally.b_wins
    }

    pub fn row(&self, subject: impl Into<String>) -> VuongStudyRow {
        VuongStudyRow {
            subject: subject.into(),
            sample_size: self.sample_size,
            lo95: self.summary.as_ref().map(|s| s.lo95),
            median: self.summary.as_ref().map(|s| s.median),
            hi95: self.summary.as_ref().map(|s| s.hi95),
            hooked_wins: self.tally.a_wins,
            lognormal_wins: self.tally.b_wins,
            neither: self.tally.neither,
            failed: self.failed,
        }
    }
}

/// Fits and compares both families on `reps` bootstrap resamples of `sample`.
pub fn bootstrap_vuong_study(
    sample: &CitationSample,
    reps: usize,
    size: ResampleSize,
    seed: u64,
    config: &FitConfig,
) -> Result<VuongStudy> {
    if reps < MIN_REPS {
        return Err(Error::TooFewReps { reps, min: MIN_REPS });
    }
    sample.require_non_empty()?;
    let n = size.resolve(sample.len());
    let results = (0..reps)
        .into_par_iter()
        .map(|i| {
            let resampled = resample(sample, n, seed::derive(seed, seed::tag::BOOTSTRAP, i as u64)).ok()?;
            compare_fits(&resampled, config)
        })
        .collect();
    Ok(VuongStudy::from_results(n, results))
}

/// Fits and compares both families on `reps` samples of size `n` drawn from
/// `generator`.
pub fn simulation_study(generator: &ModelSpec, n: usize, reps: usize, seed: u64, config: &FitConfig) -> Result<VuongStudy> {
    if n == 0 || reps == 0 {
        return Err(Error::Parameter("sample size and reps must be positive".into()));
    }
    let results = (0..reps)
        .into_par_iter()
        .map(|i| {
            let sim = generator.sample(n, seed::derive(seed, seed::tag::SIMULATION, i as u64));
            compare_fits(&sim, config)
        })
        .collect();
    Ok(VuongStudy::from_results(n, results))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VuongStudyRow {
    pub subject: String,
    pub sample_size: usize,
    pub lo95: Option<f64>,
    pub median: Option<f64>,
    pub hi95: Option<f64>,
    pub hooked_wins: usize,
    pub lognormal_wins: usize,
    pub neither: usize,
    pub failed: usize,
}

impl ReportRow for VuongStudyRow {
    const COLUMNS: &'static [&'static str] = &[
        "Subject",
        "Sample size (articles)",
        "Lower 95% limit",
        "Median Vuong",
        "Upper 95% limit",
        "Hooked a sig. better fit",
        "Discr. Logn. a sig. better fit",
        "Failed",
    ];

    fn cells(&self) -> Vec<String> {
        let na = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), fmt_sig);
        vec![
            self.subject.clone(),
            self.sample_size.to_string(),
            na(self.lo95),
            na(self.median),
            na(self.hi95),
            self.hooked_wins.to_string(),
            self.lognormal_wins.to_string(),
            self.failed.to_string(),
        ]
    }

    fn notes(&self) -> Vec<String> {
        if self.failed > 0 {
            vec![format!(
                "{}: {} reps did not fit both families and are excluded from the interval",
                self.subject, self.failed
            )]
        } else {
            Vec::new()
        }
    }
}

/// Direction of a single comparison with the hooked law as model A.
pub fn favoured_family(result: &VuongResult) -> Option<Family> {
    match result.favored {
        Favored::ModelA => Some(Family::Hooked),
        Favored::ModelB => Some(Family::Lognormal),
        Favored::Neither => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn too_few_bootstrap_reps() {
        let s = ModelSpec::lognormal(2.0, 1.0).unwrap().sample(200, 1);
        assert!(matches!(
            bootstrap_vuong_study(&s, 39, ResampleSize::SameSize, 1, &FitConfig::default()),
            Err(Error::TooFewReps { reps: 39, min: 40 })
        ));
    }

    #[test]
    fn accounting_identity() {
        let g = ModelSpec::lognormal(2.81, 1.05).unwrap();
        let study = simulation_study(&g, 400, 12, 3, &FitConfig::default()).unwrap();
        assert_eq!(study.tally.total() + study.failed, study.reps);
        assert_eq!(study.summary.as_ref().unwrap().raw.len(), study.reps - study.failed);
        assert_eq!(study.row("x").cells().len(), VuongStudyRow::COLUMNS.len());
    }

    #[test]
    fn lognormal_generator_has_non_positive_median() {
        let g = ModelSpec::lognormal(2.81, 1.05).unwrap();
        let study = simulation_study(&g, 3000, 10, 11, &FitConfig::default()).unwrap();
        assert!(study.summary.as_ref().unwrap().median <= 0.0);
        assert_eq!(study.hooked_wins(), 0);
    }
}
