//! The two discrete families on the support `{1, 2, 3, ...}`: evaluation,
//! inverse-transform sampling and continuous-analogue moments.

mod cache;
mod hooked;
mod lognormal;
pub mod normal;

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

pub use hooked::HookedPowerLaw;
pub use lognormal::DiscretisedLognormal;

use crate::error::{Error, Result};
use crate::sample::CitationSample;
use crate::seed;
use cache::{CdfTable, Lookup};

/// Quantiles saturate here; beyond 2^53 counts are no longer exact in `f64`.
pub const MAX_COUNT: u64 = 1 << 53;

/// Anything with a CDF on the positive integers.
///
/// Goodness-of-fit code only needs `cdf`, which lets tests plug in mock
/// models.
pub trait CountDistribution {
    /// `P(X <= x)` for `x >= 1`.
    fn cdf(&self, x: u64) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Lognormal,
    Hooked,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::Lognormal, Family::Hooked];

    pub fn short_name(self) -> &'static str {
        match self {
            Family::Lognormal => "Ln",
            Family::Hooked => "Hook",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Lognormal => "lognormal",
            Family::Hooked => "hooked",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lognormal" | "ln" | "discretised-lognormal" => Ok(Family::Lognormal),
            "hooked" | "hook" | "hooked-power-law" => Ok(Family::Hooked),
            other => Err(Error::Parameter(format!("unknown family '{other}'"))),
        }
    }
}

/// Continuous-analogue mean and standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean: f64,
    pub sd: f64,
}

/// A fully parameterised member of either family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ModelParams", try_from = "ModelParams")]
pub enum ModelSpec {
    Lognormal(DiscretisedLognormal),
    Hooked(HookedPowerLaw),
}

/// Serialised form of a [`ModelSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ModelParams {
    Lognormal { mu: f64, sigma: f64 },
    Hooked { alpha: f64, b: f64 },
}

impl From<ModelSpec> for ModelParams {
    fn from(m: ModelSpec) -> Self {
        m.params()
    }
}

impl TryFrom<ModelParams> for ModelSpec {
    type Error = Error;

    fn try_from(p: ModelParams) -> Result<Self> {
        match p {
            ModelParams::Lognormal { mu, sigma } => ModelSpec::lognormal(mu, sigma),
            ModelParams::Hooked { alpha, b } => ModelSpec::hooked(alpha, b),
        }
    }
}

fn check_support(x: u64) -> Result<()> {
    if x == 0 {
        Err(Error::Domain(x.to_string()))
    } else {
        Ok(())
    }
}

impl ModelSpec {
    pub fn lognormal(mu: f64, sigma: f64) -> Result<Self> {
        DiscretisedLognormal::new(mu, sigma).map(ModelSpec::Lognormal)
    }

    pub fn hooked(alpha: f64, b: f64) -> Result<Self> {
        HookedPowerLaw::new(alpha, b).map(ModelSpec::Hooked)
    }

    /// Builds a model from the two natural parameters of `family`
    /// (`mu, sigma` or `alpha, b`).
    pub fn from_family(family: Family, first: f64, second: f64) -> Result<Self> {
        match family {
            Family::Lognormal => Self::lognormal(first, second),
            Family::Hooked => Self::hooked(first, second),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            ModelSpec::Lognormal(_) => Family::Lognormal,
            ModelSpec::Hooked(_) => Family::Hooked,
        }
    }

    pub fn params(&self) -> ModelParams {
        match self {
            ModelSpec::Lognormal(d) => ModelParams::Lognormal {
                mu: d.mu(),
                sigma: d.sigma(),
            },
            ModelSpec::Hooked(d) => ModelParams::Hooked {
                alpha: d.alpha(),
                b: d.b(),
            },
        }
    }

    /// The two parameters as a pair, in `(mu, sigma)` or `(alpha, b)` order.
    pub fn param_pair(&self) -> (f64, f64) {
        match self.params() {
            ModelParams::Lognormal { mu, sigma } => (mu, sigma),
            ModelParams::Hooked { alpha, b } => (alpha, b),
        }
    }

    pub(crate) fn ln_pmf_unchecked(&self, x: u64) -> f64 {
        match self {
            ModelSpec::Lognormal(d) => d.ln_pmf_unchecked(x),
            ModelSpec::Hooked(d) => d.ln_pmf_unchecked(x),
        }
    }

    pub fn ln_pmf(&self, x: u64) -> Result<f64> {
        check_support(x)?;
        Ok(self.ln_pmf_unchecked(x))
    }

    /// `P(X = x)`.
    pub fn pmf(&self, x: u64) -> Result<f64> {
        self.ln_pmf(x).map(f64::exp)
    }

    /// `P(X <= x)`.
    pub fn cdf(&self, x: u64) -> Result<f64> {
        check_support(x)?;
        Ok(self.cdf_unchecked(x))
    }

    pub(crate) fn cdf_unchecked(&self, x: u64) -> f64 {
        match self {
            ModelSpec::Lognormal(d) => d.cdf_unchecked(x),
            ModelSpec::Hooked(d) => d.cdf_unchecked(x),
        }
    }

    /// `P(X > x)`, accurate far into the tail.
    pub fn sf(&self, x: u64) -> Result<f64> {
        check_support(x)?;
        Ok(self.sf_unchecked(x))
    }

    fn sf_unchecked(&self, x: u64) -> f64 {
        match self {
            ModelSpec::Lognormal(d) => d.sf_unchecked(x),
            ModelSpec::Hooked(d) => d.sf_unchecked(x),
        }
    }

    fn table(&self) -> &CdfTable {
        match self {
            ModelSpec::Lognormal(d) => &d.table,
            ModelSpec::Hooked(d) => &d.table,
        }
    }

    /// `min { x >= 1 : cdf(x) >= u }` for `u` in `[0, 1)`.
    pub fn quantile(&self, u: f64) -> Result<u64> {
        if !(0.0..1.0).contains(&u) {
            return Err(Error::Domain(format!("quantile level {u} (must lie in [0, 1))")));
        }
        Ok(self.quantile_unchecked(u))
    }

    pub(crate) fn quantile_unchecked(&self, u: f64) -> u64 {
        match self.table().lookup(u, |x| self.cdf_unchecked(x)) {
            Lookup::Found(x) => x,
            Lookup::Beyond(len) => self.tail_quantile(1.0 - u, len),
        }
    }

    /// Smallest `x > known_below` with `sf(x) <= tail`, by doubling then
    /// bisection.
    fn tail_quantile(&self, tail: f64, known_below: u64) -> u64 {
        let mut lo = known_below;
        let mut hi = known_below;
        loop {
            hi = hi.saturating_mul(2).min(MAX_COUNT);
            if self.sf_unchecked(hi) <= tail {
                break;
            }
            if hi == MAX_COUNT {
                return MAX_COUNT;
            }
            lo = hi;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.sf_unchecked(mid) <= tail {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// One draw per uniform from `rng`.
    pub fn draw(&self, rng: &mut seed::Rng) -> u64 {
        self.quantile_unchecked(rng.random::<f64>())
    }

    /// `n` independent draws by inverse transform, reproducible from `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> CitationSample {
        let mut rng = seed::rng(seed);
        let counts = (0..n).map(|_| self.draw(&mut rng)).collect();
        CitationSample::from_counts_unchecked(counts, 1, format!("simulated {self}"))
    }

    /// Mean of the continuous analogue: `exp(mu + sigma^2/2)` or `b/(alpha - 1)`.
    pub fn continuous_mean(&self) -> f64 {
        match self {
            ModelSpec::Lognormal(d) => d.continuous_moments().0,
            ModelSpec::Hooked(d) => d.continuous_moments().0,
        }
    }

    /// Continuous-analogue mean and standard deviation; these approximate the
    /// moments of the discrete distribution.
    ///
    /// The Lomax standard deviation only exists for `alpha > 2`.
    pub fn continuous_moments(&self) -> Result<Moments> {
        match self {
            ModelSpec::Lognormal(d) => {
                let (mean, sd) = d.continuous_moments();
                Ok(Moments { mean, sd })
            }
            ModelSpec::Hooked(d) => match d.continuous_moments() {
                (mean, Some(sd)) => Ok(Moments { mean, sd }),
                (_, None) => Err(Error::MomentUndefined(format!(
                    "alpha = {} <= 2 gives infinite variance",
                    d.alpha()
                ))),
            },
        }
    }
}

impl CountDistribution for ModelSpec {
    fn cdf(&self, x: u64) -> f64 {
        self.cdf_unchecked(x.max(1))
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Lognormal(d) => d.fmt(f),
            ModelSpec::Hooked(d) => d.fmt(f),
        }
    }
}
