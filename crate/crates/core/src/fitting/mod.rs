//! Maximum-likelihood fitting of either family.
//!
//! Both searches run a simplex over unconstrained coordinates:
//! `(mu, ln sigma)` for the lognormal and `(ln(alpha - 1), ln b)` for the
//! hooked power law. The hooked likelihood has a long ridge along which
//! `alpha` and `b` grow together while the shape barely changes; the search
//! is boxed by caps on both and a fit that ends on a cap is reported as
//! non-converged together with the best point found.

pub mod simplex;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distributions::{DiscretisedLognormal, Family, HookedPowerLaw, ModelSpec};
use crate::error::{Error, Result};
use crate::sample::{CitationSample, Histogram};
use simplex::{minimize, SimplexOptions};

/// Fitted lognormal scales below this are reported as degenerate.
const SIGMA_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub max_evaluations: usize,
    /// Relative log-likelihood tolerance.
    pub ftol: f64,
    /// Simplex diameter tolerance in the transformed coordinates.
    pub xtol: f64,
    /// Ridge guard on the hooked scale parameter.
    pub b_cap: f64,
    /// Ridge guard on the hooked shape parameter.
    pub alpha_cap: f64,
    pub initial_step: f64,
    pub restarts: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            max_evaluations: 10_000,
            ftol: 1e-8,
            xtol: 1e-6,
            b_cap: 1e7,
            alpha_cap: 1e6,
            initial_step: 0.5,
            restarts: 4,
        }
    }
}

impl FitConfig {
    fn simplex(&self) -> SimplexOptions {
        SimplexOptions {
            max_evaluations: self.max_evaluations,
            ftol: self.ftol,
            xtol: self.xtol,
            initial_step: self.initial_step,
            restarts: self.restarts,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FitStatus {
    Converged,
    NonConverged,
    Degenerate,
}

impl fmt::Display for FitStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitStatus::Converged => "converged",
            FitStatus::NonConverged => "non-converged",
            FitStatus::Degenerate => "degenerate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: ModelSpec,
    pub log_likelihood: f64,
    pub status: FitStatus,
    pub evaluations: usize,
    pub message: String,
}

impl FitResult {
    pub fn is_converged(&self) -> bool {
        self.status == FitStatus::Converged
    }
}

/// `sum_i ln pmf(model, c_i)`.
pub fn log_likelihood(model: &ModelSpec, sample: &CitationSample) -> Result<f64> {
    sample.require_non_empty()?;
    Ok(histogram_log_likelihood(model, &sample.histogram()))
}

pub(crate) fn histogram_log_likelihood(model: &ModelSpec, hist: &Histogram) -> f64 {
    hist.iter()
        .map(|(value, freq)| freq as f64 * model.ln_pmf_unchecked(value))
        .sum()
}

fn lognormal_log_likelihood(mu: f64, sigma: f64, hist: &Histogram) -> f64 {
    match DiscretisedLognormal::new(mu, sigma) {
        Ok(d) => hist
            .iter()
            .map(|(v, f)| f as f64 * d.ln_pmf_unchecked(v))
            .sum(),
        Err(_) => f64::NEG_INFINITY,
    }
}

fn hooked_log_likelihood(alpha: f64, b: f64, hist: &Histogram) -> f64 {
    match HookedPowerLaw::new(alpha, b) {
        Ok(d) => hist
            .iter()
            .map(|(v, f)| f as f64 * d.ln_pmf_unchecked(v))
            .sum(),
        Err(_) => f64::NEG_INFINITY,
    }
}

/// Maximum-likelihood fit of `family` to `sample`.
pub fn fit(family: Family, sample: &CitationSample, config: &FitConfig) -> Result<FitResult> {
    sample.require_non_empty()?;
    if sample.is_constant() {
        return Err(Error::DegenerateData(sample.counts()[0]));
    }
    let hist = sample.histogram();
    match family {
        Family::Lognormal => fit_lognormal(sample, &hist, config),
        Family::Hooked => fit_hooked(sample, &hist, config),
    }
}

fn fit_lognormal(sample: &CitationSample, hist: &Histogram, config: &FitConfig) -> Result<FitResult> {
    let n = sample.len() as f64;
    let logs: Vec<f64> = sample.counts().iter().map(|&c| (c as f64).ln()).collect();
    let mu0 = logs.iter().sum::<f64>() / n;
    let var0 = logs.iter().map(|l| (l - mu0).powi(2)).sum::<f64>() / (n - 1.0);
    let start = [mu0, 0.5 * var0.ln()];

    let objective = |p: &[f64; 2]| -lognormal_log_likelihood(p[0], p[1].exp(), hist);
    let out = minimize(objective, start, &config.simplex());
    let (mu, sigma) = (out.best[0], out.best[1].exp());
    let model = ModelSpec::lognormal(mu, sigma)
        .map_err(|e| Error::FitFailed(format!("lognormal search left the parameter space: {e}")))?;

    let (status, message) = if sigma < SIGMA_FLOOR {
        (FitStatus::Degenerate, format!("scale collapsed to {sigma:e}"))
    } else if !out.converged {
        (FitStatus::NonConverged, "evaluation budget exhausted".to_string())
    } else {
        (FitStatus::Converged, String::new())
    };
    finish(model, -out.value, status, out.evaluations, message)
}

fn fit_hooked(sample: &CitationSample, hist: &Histogram, config: &FitConfig) -> Result<FitResult> {
    let alpha0: f64 = 3.0;
    let b0 = sample.mean().unwrap_or(1.0);
    let start = [(alpha0 - 1.0).ln(), b0.ln()];
    let max_shape = (config.alpha_cap - 1.0).ln();
    let max_scale = config.b_cap.ln();
    let boxed = |p: &[f64; 2]| [p[0].min(max_shape), p[1].min(max_scale)];

    let objective = |p: &[f64; 2]| {
        let q = boxed(p);
        -hooked_log_likelihood(1.0 + q[0].exp(), q[1].exp(), hist)
    };
    let out = minimize(objective, start, &config.simplex());
    let q = boxed(&out.best);
    let (alpha, b) = (1.0 + q[0].exp(), q[1].exp());
    let model = ModelSpec::hooked(alpha, b)
        .map_err(|e| Error::FitFailed(format!("hooked search left the parameter space: {e}")))?;

    let on_ridge_guard = q[1] >= max_scale || q[0] >= max_shape;
    let (status, message) = if on_ridge_guard {
        (
            FitStatus::NonConverged,
            format!("ridge guard: alpha={alpha:.4}, b={b:.4e} reached a cap"),
        )
    } else if !out.converged {
        (FitStatus::NonConverged, "evaluation budget exhausted".to_string())
    } else {
        (FitStatus::Converged, String::new())
    };
    finish(model, -out.value, status, out.evaluations, message)
}

fn finish(
    model: ModelSpec,
    log_likelihood: f64,
    status: FitStatus,
    evaluations: usize,
    message: String,
) -> Result<FitResult> {
    if !log_likelihood.is_finite() {
        return Err(Error::FitFailed(format!(
            "no finite log-likelihood found for {} family",
            model.family()
        )));
    }
    Ok(FitResult {
        model,
        log_likelihood,
        status,
        evaluations,
        message,
    })
}
