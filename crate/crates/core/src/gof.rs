//! Discrete Kolmogorov-Smirnov statistic, Monte-Carlo p-values and the
//! bottom/middle/top comparison of empirical and fitted CDFs.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{CountDistribution, Family, ModelSpec};
use crate::error::{Error, Result};
use crate::fitting::{fit, FitConfig, FitStatus};
use crate::sample::{CitationSample, Histogram};
use crate::seed;

/// Default threshold for calling two CDF values different.
pub const DEFAULT_EPSILON: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum RefitMode {
    /// Simulated samples are compared with the one fitted model.
    #[default]
    FixedParams,
    /// Each simulated sample is refitted before computing its statistic.
    Refit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofResult {
    pub ks_stat: f64,
    pub p_value: f64,
    /// Simulations that produced a statistic.
    pub n_sim: usize,
    /// Simulations with `D >= ks_stat`.
    pub exceedances: usize,
    /// Simulations dropped because their refit failed.
    pub failed_sims: usize,
    pub refit_mode: RefitMode,
    pub model: ModelSpec,
    pub fit_status: FitStatus,
}

impl GofResult {
    pub fn is_plausible(&self, level: f64) -> bool {
        self.p_value > level
    }
}

/// `(r + 1)/(n_sim + 1)`; never zero.
pub fn monte_carlo_p_value(exceedances: usize, n_sim: usize) -> f64 {
    (exceedances as f64 + 1.0) / (n_sim as f64 + 1.0)
}

/// Largest `|F(x) - F_n(x)|` over `x = 1..=max(sample)`.
pub fn ks_statistic<M: CountDistribution + ?Sized>(model: &M, sample: &CitationSample) -> Result<f64> {
    sample.require_non_empty()?;
    Ok(histogram_ks(model, &sample.histogram()))
}

/// Between consecutive atoms the empirical CDF is flat and the model CDF is
/// non-decreasing, so each gap only needs its two end points.
pub(crate) fn histogram_ks<M: CountDistribution + ?Sized>(model: &M, hist: &Histogram) -> f64 {
    let n = hist.total as f64;
    let mut d: f64 = 0.0;
    let mut below = 0u64;
    let mut prev_atom = 0u64;
    for (value, freq) in hist.iter() {
        let flat = below as f64 / n;
        if value > prev_atom + 1 {
            d = d.max((model.cdf(prev_atom + 1) - flat).abs());
            d = d.max((model.cdf(value - 1) - flat).abs());
        }
        below += freq;
        d = d.max((model.cdf(value) - below as f64 / n).abs());
        prev_atom = value;
    }
    d.min(1.0)
}

/// Monte-Carlo p-value of the KS statistic of `sample` against a fixed model.
///
/// Simulation `i` uses a seed derived from `(seed, i)`, so the result does not
/// depend on the number of worker threads.
pub fn ks_p_value_fixed(model: &ModelSpec, sample: &CitationSample, n_sim: usize, seed: u64) -> Result<GofResult> {
    sample.require_non_empty()?;
    if n_sim == 0 {
        return Err(Error::Parameter("n_sim must be positive".into()));
    }
    let observed = ks_statistic(model, sample)?;
    let n = sample.len();
    let exceedances = (0..n_sim)
        .into_par_iter()
        .filter(|&i| {
            let sim = model.sample(n, seed::derive(seed, seed::tag::MONTE_CARLO, i as u64));
            histogram_ks(model, &sim.histogram()) >= observed
        })
        .count();
    Ok(GofResult {
        ks_stat: observed,
        p_value: monte_carlo_p_value(exceedances, n_sim),
        n_sim,
        exceedances,
        failed_sims: 0,
        refit_mode: RefitMode::FixedParams,
        model: model.clone(),
        fit_status: FitStatus::Converged,
    })
}

/// Fits `family` to `sample` and estimates the p-value of its KS statistic by
/// simulating `n_sim` samples of the same size from the fitted model.
///
/// A non-converged fit is still tested; its status is carried in the result.
pub fn ks_p_value(
    family: Family,
    sample: &CitationSample,
    n_sim: usize,
    seed: u64,
    refit: RefitMode,
    config: &FitConfig,
) -> Result<GofResult> {
    let fitted = fit(family, sample, config)?;
    match refit {
        RefitMode::FixedParams => {
            let mut result = ks_p_value_fixed(&fitted.model, sample, n_sim, seed)?;
            result.fit_status = fitted.status;
            Ok(result)
        }
        RefitMode::Refit => {
            if n_sim == 0 {
                return Err(Error::Parameter("n_sim must be positive".into()));
            }
            let observed = ks_statistic(&fitted.model, sample)?;
            let n = sample.len();
            let stats: Vec<Option<f64>> = (0..n_sim)
                .into_par_iter()
                .map(|i| {
                    let sim = fitted
                        .model
                        .sample(n, seed::derive(seed, seed::tag::MONTE_CARLO, i as u64));
                    let refitted = fit(family, &sim, config).ok()?;
                    Some(histogram_ks(&refitted.model, &sim.histogram()))
                })
                .collect();
            let valid = stats.iter().flatten().count();
            let exceedances = stats.iter().flatten().filter(|&&d| d >= observed).count();
            Ok(GofResult {
                ks_stat: observed,
                p_value: monte_carlo_p_value(exceedances, valid),
                n_sim: valid,
                exceedances,
                failed_sims: n_sim - valid,
                refit_mode: RefitMode::Refit,
                model: fitted.model,
                fit_status: fitted.status,
            })
        }
    }
}

/// Sign of `empirical - model` at one evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeClass {
    Plus,
    Equal,
    Minus,
}

impl ShapeClass {
    pub fn classify(delta: f64, epsilon: f64) -> Self {
        if delta > epsilon {
            ShapeClass::Plus
        } else if delta < -epsilon {
            ShapeClass::Minus
        } else {
            ShapeClass::Equal
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ShapeClass::Plus => "+",
            ShapeClass::Equal => "=",
            ShapeClass::Minus => "-",
        }
    }
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Empirical minus model CDF at the bottom (x = 1), the empirical median and
/// the empirical 99th-percentile atom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeReport {
    pub bottom: ShapeClass,
    pub middle: ShapeClass,
    pub top: ShapeClass,
    pub epsilon: f64,
    /// Evaluation points `(bottom, middle, top)`.
    pub points: [u64; 3],
    /// Empirical minus model CDF at each point.
    pub deltas: [f64; 3],
}

/// Level whose first atom marks the top of the distribution.
pub const TOP_LEVEL: f64 = 0.99;

pub fn shape_classify<M: CountDistribution + ?Sized>(
    model: &M,
    sample: &CitationSample,
    epsilon: f64,
) -> Result<ShapeReport> {
    sample.require_non_empty()?;
    if !(epsilon > 0.0) {
        return Err(Error::Parameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let hist = sample.histogram();
    let median = hist.quantile_atom(0.5).expect("non-empty");
    let top = hist.quantile_atom(TOP_LEVEL).expect("non-empty");
    let points = [1, median, top];
    let deltas = points.map(|x| hist.ecdf(x) - model.cdf(x));
    let [bottom, middle, top] = deltas.map(|d| ShapeClass::classify(d, epsilon));
    Ok(ShapeReport {
        bottom,
        middle,
        top,
        epsilon,
        points,
        deltas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A model whose CDF is the empirical CDF of a fixed sample.
    struct EmpiricalMock(Histogram);

    impl CountDistribution for EmpiricalMock {
        fn cdf(&self, x: u64) -> f64 {
            self.0.ecdf(x)
        }
    }

    fn sample(counts: &[u64]) -> CitationSample {
        CitationSample::from_counts(counts.to_vec()).unwrap()
    }

    /// Brute force over every atom up to the maximum.
    fn ks_brute(model: &ModelSpec, s: &CitationSample) -> f64 {
        let h = s.histogram();
        (1..=s.max().unwrap())
            .map(|x| (model.cdf(x).unwrap() - h.ecdf(x)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn ks_zero_for_identical_cdfs() {
        let s = sample(&[1, 1, 1]);
        let mock = EmpiricalMock(s.histogram());
        assert_eq!(ks_statistic(&mock, &s).unwrap(), 0.0);
    }

    #[test]
    fn ks_two_point_example() {
        let m = ModelSpec::hooked(2.0, 1.0).unwrap();
        let d = ks_statistic(&m, &sample(&[1, 2])).unwrap();
        let zeta = std::f64::consts::PI.powi(2) / 6.0 - 1.0;
        assert!((d - (1.0 - (0.25 + 1.0 / 9.0) / zeta)).abs() < 1e-12);
        assert!((d - 0.4401).abs() < 1e-4);
    }

    #[test]
    fn ks_gap_endpoints_match_brute_force() {
        let m = ModelSpec::lognormal(1.5, 1.2).unwrap();
        let s = sample(&[1, 4, 4, 9, 30, 31, 200]);
        assert!((ks_statistic(&m, &s).unwrap() - ks_brute(&m, &s)).abs() < 1e-15);
        let s = sample(&[7, 12]);
        assert!((ks_statistic(&m, &s).unwrap() - ks_brute(&m, &s)).abs() < 1e-15);
    }

    #[test]
    fn ks_invariant_under_duplication() {
        let m = ModelSpec::lognormal(1.0, 1.0).unwrap();
        let s = sample(&[1, 2, 2, 5, 8]);
        let doubled = s.concat(&s).concat(&s);
        assert_eq!(ks_statistic(&m, &s).unwrap(), ks_statistic(&m, &doubled).unwrap());
    }

    #[test]
    fn p_value_formula() {
        assert_eq!(monte_carlo_p_value(49, 999), 0.05);
        assert_eq!(monte_carlo_p_value(0, 9), 0.1);
        assert_eq!(monte_carlo_p_value(9, 9), 1.0);
    }

    #[test]
    fn fixed_p_value_is_reproducible_and_in_range() {
        let m = ModelSpec::lognormal(2.0, 1.0).unwrap();
        let s = m.sample(300, 5);
        let a = ks_p_value_fixed(&m, &s, 99, 17).unwrap();
        let b = ks_p_value_fixed(&m, &s, 99, 17).unwrap();
        assert_eq!(a, b);
        assert!(a.p_value > 0.0 && a.p_value <= 1.0);
        assert_eq!(a.p_value, monte_carlo_p_value(a.exceedances, a.n_sim));
    }

    #[test]
    fn refit_mode_runs_and_flags_mode() {
        let s = ModelSpec::lognormal(2.0, 1.0).unwrap().sample(200, 3);
        let r = ks_p_value(Family::Lognormal, &s, 19, 1, RefitMode::Refit, &FitConfig::default()).unwrap();
        assert_eq!(r.refit_mode, RefitMode::Refit);
        assert_eq!(r.n_sim + r.failed_sims, 19);
        assert!(r.p_value > 0.0 && r.p_value <= 1.0);
    }

    #[test]
    fn shape_examples() {
        let s = sample(&[1, 2]);
        let mock = EmpiricalMock(s.histogram());
        let r = shape_classify(&mock, &s, 0.01).unwrap();
        assert_eq!((r.bottom, r.middle, r.top), (ShapeClass::Equal, ShapeClass::Equal, ShapeClass::Equal));

        let m = ModelSpec::hooked(2.0, 1.0).unwrap();
        let r = shape_classify(&m, &s, 0.01).unwrap();
        assert_eq!((r.bottom, r.middle, r.top), (ShapeClass::Plus, ShapeClass::Plus, ShapeClass::Plus));
        assert!((r.deltas[0] - 0.1124).abs() < 1e-4);
        assert!((r.deltas[2] - 0.4401).abs() < 1e-4);
        assert!(shape_classify(&m, &s, 0.0).is_err());
        assert!(matches!(shape_classify(&m, &sample(&[]), 0.01), Err(Error::EmptySample)));
    }
}
