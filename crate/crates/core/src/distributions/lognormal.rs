use std::fmt;
use std::sync::Arc;

use super::cache::CdfTable;
use super::normal;
use crate::error::{Error, Result};

/// Lognormal density integrated over `(x - 0.5, x + 0.5]` for `x = 1, 2, ...`,
/// renormalised by the mass on `(0.5, inf)`.
#[derive(Debug, Clone)]
pub struct DiscretisedLognormal {
    mu: f64,
    sigma: f64,
    /// ln of the normaliser `Z = P(T > 0.5)` for the underlying lognormal `T`.
    ln_norm: f64,
    pub(crate) table: Arc<CdfTable>,
}

impl DiscretisedLognormal {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::Parameter(format!("mu must be finite, got {mu}")));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::Parameter(format!("sigma must be positive and finite, got {sigma}")));
        }
        let ln_norm = normal::ln_sf((0.5f64.ln() - mu) / sigma);
        if !ln_norm.is_finite() {
            return Err(Error::Parameter(format!(
                "no mass above 0.5 for mu={mu}, sigma={sigma}"
            )));
        }
        Ok(Self {
            mu,
            sigma,
            ln_norm,
            table: Arc::default(),
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// The normaliser `Z = P(T > 0.5)`.
    pub fn normalizer(&self) -> f64 {
        self.ln_norm.exp()
    }

    #[inline]
    fn z(&self, t: f64) -> f64 {
        (t.ln() - self.mu) / self.sigma
    }

    pub(crate) fn ln_pmf_unchecked(&self, x: u64) -> f64 {
        let x = x as f64;
        normal::ln_interval(self.z(x - 0.5), self.z(x + 0.5)) - self.ln_norm
    }

    pub(crate) fn cdf_unchecked(&self, x: u64) -> f64 {
        let ln_mass = normal::ln_interval(self.z(0.5), self.z(x as f64 + 0.5));
        (ln_mass - self.ln_norm).exp().min(1.0)
    }

    pub(crate) fn sf_unchecked(&self, x: u64) -> f64 {
        (normal::ln_sf(self.z(x as f64 + 0.5)) - self.ln_norm).exp().min(1.0)
    }

    /// Mean and standard deviation of the continuous lognormal.
    pub fn continuous_moments(&self) -> (f64, f64) {
        let s2 = self.sigma * self.sigma;
        let mean = (self.mu + s2 / 2.0).exp();
        let sd = (s2.exp_m1() * (2.0 * self.mu + s2).exp()).sqrt();
        (mean, sd)
    }
}

impl PartialEq for DiscretisedLognormal {
    fn eq(&self, other: &Self) -> bool {
        self.mu == other.mu && self.sigma == other.sigma
    }
}

impl fmt::Display for DiscretisedLognormal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiscretisedLognormal(mu={}, sigma={})", self.mu, self.sigma)
    }
}
