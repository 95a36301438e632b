//! Vuong's test for non-nested models.
//!
//! Both families have two parameters, so no information-criterion
//! correction is applied to the log-likelihood ratio.

use serde::{Deserialize, Serialize};

use crate::distributions::{normal, ModelSpec};
use crate::error::{Error, Result};
use crate::sample::CitationSample;

/// Two-sided 5% critical value used for the significance tallies.
pub const DEFAULT_THRESHOLD: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Favored {
    ModelA,
    ModelB,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VuongResult {
    /// Positive values favour model A.
    pub z: f64,
    pub p_two_sided: f64,
    pub favored: Favored,
    pub n: usize,
}

impl VuongResult {
    fn from_z(z: f64, n: usize, threshold: f64) -> Self {
        let favored = if z > threshold {
            Favored::ModelA
        } else if z < -threshold {
            Favored::ModelB
        } else {
            Favored::Neither
        };
        Self {
            z,
            p_two_sided: normal::two_sided_p(z),
            favored,
            n,
        }
    }
}

/// Vuong z from pointwise log-likelihood differences `d_i = ln f_A - ln f_B`.
pub fn vuong_from_differences(d: &[f64], threshold: f64) -> Result<VuongResult> {
    weighted_vuong(d.iter().map(|&x| (x, 1)), threshold)
}

fn weighted_vuong(terms: impl Iterator<Item = (f64, u64)> + Clone, threshold: f64) -> Result<VuongResult> {
    let n: u64 = terms.clone().map(|(_, w)| w).sum();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    if n < 2 {
        return Err(Error::Parameter("the Vuong test needs at least two observations".into()));
    }
    let nf = n as f64;
    let mean = terms.clone().map(|(d, w)| d * w as f64).sum::<f64>() / nf;
    let var = terms.map(|(d, w)| w as f64 * (d - mean).powi(2)).sum::<f64>() / (nf - 1.0);
    let sd = var.sqrt();
    if sd == 0.0 || !sd.is_finite() {
        return Err(Error::IdenticalModels);
    }
    Ok(VuongResult::from_z(mean * nf.sqrt() / sd, n as usize, threshold))
}

/// Vuong test of `model_a` against `model_b` on `sample`, at `|z| > 1.96`.
pub fn vuong(model_a: &ModelSpec, model_b: &ModelSpec, sample: &CitationSample) -> Result<VuongResult> {
    vuong_with_threshold(model_a, model_b, sample, DEFAULT_THRESHOLD)
}

pub fn vuong_with_threshold(
    model_a: &ModelSpec,
    model_b: &ModelSpec,
    sample: &CitationSample,
    threshold: f64,
) -> Result<VuongResult> {
    sample.require_non_empty()?;
    let hist = sample.histogram();
    let diffs: Vec<(f64, u64)> = hist
        .iter()
        .map(|(v, f)| (model_a.ln_pmf_unchecked(v) - model_b.ln_pmf_unchecked(v), f))
        .collect();
    if diffs.iter().any(|(d, _)| !d.is_finite()) {
        return Err(Error::Parameter("a model assigns zero probability to an observed count".into()));
    }
    weighted_vuong(diffs.iter().copied(), threshold)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub a_wins: usize,
    pub b_wins: usize,
    pub neither: usize,
}

impl Tally {
    pub fn total(&self) -> usize {
        self.a_wins + self.b_wins + self.neither
    }
}

pub fn tally_significance<'a>(results: impl IntoIterator<Item = &'a VuongResult>) -> Tally {
    results.into_iter().fold(Tally::default(), |mut t, r| {
        match r.favored {
            Favored::ModelA => t.a_wins += 1,
            Favored::ModelB => t.b_wins += 1,
            Favored::Neither => t.neither += 1,
        }
        t
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_hand_computation() {
        // mean 0.2, sd (n-1) = 0.1*sqrt(2), z = 0.2*sqrt(2)/(0.1*sqrt(2)) = 2
        let r = vuong_from_differences(&[0.1, 0.3], DEFAULT_THRESHOLD).unwrap();
        assert!((r.z - 2.0).abs() < 1e-12);
        assert_eq!(r.favored, Favored::ModelA);
        assert_eq!(r.n, 2);
    }

    #[test]
    fn identical_models_error() {
        let m = ModelSpec::lognormal(2.0, 1.0).unwrap();
        let s = CitationSample::from_counts(vec![1, 2, 3, 9]).unwrap();
        assert!(matches!(vuong(&m, &m.clone(), &s), Err(Error::IdenticalModels)));
        assert!(matches!(
            vuong(&m, &m, &CitationSample::from_counts(vec![]).unwrap()),
            Err(Error::EmptySample)
        ));
    }

    #[test]
    fn swapping_models_negates_z() {
        let a = ModelSpec::lognormal(2.0, 1.0).unwrap();
        let b = ModelSpec::hooked(3.0, 15.0).unwrap();
        let s = a.sample(500, 2);
        let ab = vuong(&a, &b, &s).unwrap();
        let ba = vuong(&b, &a, &s).unwrap();
        assert_eq!(ab.z, -ba.z);
        assert_eq!(ab.p_two_sided, ba.p_two_sided);
    }

    #[test]
    fn tally_examples() {
        assert_eq!(tally_significance(&[]), Tally::default());
        let rs: Vec<VuongResult> = [2.5, -2.5, 0.0]
            .iter()
            .map(|&z| VuongResult::from_z(z, 10, DEFAULT_THRESHOLD))
            .collect();
        let t = tally_significance(&rs);
        assert_eq!((t.a_wins, t.b_wins, t.neither), (1, 1, 1));
        assert_eq!(t.total(), 3);
    }
}
