//! Samples from finite mixtures, and the fit-degradation study that compares
//! a mixture with a single-component sample.

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{Family, ModelSpec};
use crate::error::{Error, Result};
use crate::fitting::{fit, FitConfig};
use crate::gof::ks_statistic;
use crate::sample::CitationSample;
use crate::seed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    components: Vec<(ModelSpec, f64)>,
}

impl MixtureSpec {
    /// Normalises the weights to sum to one. Weights must be finite and
    /// positive; a single component is allowed.
    pub fn new(components: Vec<(ModelSpec, f64)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidWeights("a mixture needs at least one component".into()));
        }
        if let Some((_, w)) = components.iter().find(|(_, w)| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidWeights(format!("weight {w} is not positive")));
        }
        let total: f64 = components.iter().map(|(_, w)| w).sum();
        let components = components.into_iter().map(|(m, w)| (m, w / total)).collect();
        Ok(Self { components })
    }

    /// Two components with weights `w` and `1 - w`.
    pub fn pair(first: ModelSpec, second: ModelSpec, w: f64) -> Result<Self> {
        if !(w > 0.0 && w < 1.0) {
            return Err(Error::InvalidWeights(format!("weight {w} is outside (0, 1)")));
        }
        Self::new(vec![(first, w), (second, 1.0 - w)])
    }

    pub fn components(&self) -> &[(ModelSpec, f64)] {
        &self.components
    }

    fn pick(&self, u: f64) -> &ModelSpec {
        let mut acc = 0.0;
        for (model, w) in &self.components {
            acc += w;
            if u < acc {
                return model;
            }
        }
        &self.components[self.components.len() - 1].0
    }

    fn label(&self) -> String {
        let first = &self.components[0].0;
        if self.components.iter().all(|(m, _)| m == first) {
            format!("simulated {first}")
        } else {
            let parts: Vec<String> = self.components.iter().map(|(m, w)| format!("{w:.3}×{m}")).collect();
            format!("simulated mixture {}", parts.join(" + "))
        }
    }
}

/// `n` draws from the mixture.
///
/// Values come from the same stream `ModelSpec::sample` would use for `seed`
/// and component choices from a separate derived stream, so a mixture of
/// identical components reproduces the plain sampler exactly.
pub fn mixture_sample(spec: &MixtureSpec, n: usize, seed: u64) -> CitationSample {
    let mut values = seed::rng(seed);
    let mut choices = seed::rng(seed::derive(seed, seed::tag::MIXTURE_SELECT, 0));
    let counts = (0..n)
        .map(|_| spec.pick(choices.random::<f64>()).draw(&mut values))
        .collect();
    CitationSample::from_counts_unchecked(counts, 1, spec.label())
}

/// KS statistics of the fitted lognormal on a mixture and on a pure sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureTrial {
    pub mixture_ks: f64,
    pub pure_ks: f64,
}

impl MixtureTrial {
    pub fn mixture_fits_worse(&self) -> bool {
        self.mixture_ks > self.pure_ks
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureStudy {
    pub family: Family,
    pub n: usize,
    pub trials: Vec<Option<MixtureTrial>>,
}

impl MixtureStudy {
    pub fn worse_count(&self) -> usize {
        self.trials.iter().flatten().filter(|t| t.mixture_fits_worse()).count()
    }

    pub fn failed(&self) -> usize {
        self.trials.iter().filter(|t| t.is_none()).count()
    }
}

fn fitted_ks(family: Family, sample: &CitationSample, config: &FitConfig) -> Option<f64> {
    let fitted = fit(family, sample, config).ok()?;
    ks_statistic(&fitted.model, sample).ok()
}

/// For each of `trials` seeds, fits `family` to a mixture sample and to a
/// sample from `pure`, both of size `n`, and records both KS statistics.
pub fn mixture_study(
    mixture: &MixtureSpec,
    pure: &ModelSpec,
    family: Family,
    n: usize,
    trials: usize,
    seed: u64,
    config: &FitConfig,
) -> Result<MixtureStudy> {
    if n == 0 || trials == 0 {
        return Err(Error::Parameter("sample size and trials must be positive".into()));
    }
    let trials = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = seed::derive(seed, seed::tag::SIMULATION, i as u64);
            let mixed = mixture_sample(mixture, n, s);
            let plain = pure.sample(n, seed::derive(s, seed::tag::SIMULATION, 1));
            Some(MixtureTrial {
                mixture_ks: fitted_ks(family, &mixed, config)?,
                pure_ks: fitted_ks(family, &plain, config)?,
            })
        })
        .collect();
    Ok(MixtureStudy { family, n, trials })
}
