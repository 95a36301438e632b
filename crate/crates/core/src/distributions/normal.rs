//! Standard normal tail functions built on `erfc`.
//!
//! Masses of the discretised lognormal are differences of normal CDF values,
//! often far out in a tail, so everything here works with upper-tail
//! probabilities and their logarithms instead of `1 - cdf`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Above this point `Q(z)` is close to underflow and the asymptotic series is
/// used for its logarithm.
const ASYMPTOTIC_FROM: f64 = 30.0;

/// Upper tail probability `Q(z) = P(Z > z)`.
pub fn sf(z: f64) -> f64 {
    0.5 * libm::erfc(z * FRAC_1_SQRT_2)
}

/// `Phi(z) = P(Z <= z)`.
pub fn cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// `ln Q(z)`, finite for every finite `z`.
pub fn ln_sf(z: f64) -> f64 {
    if z < ASYMPTOTIC_FROM {
        return sf(z).ln();
    }
    if z == f64::INFINITY {
        return f64::NEG_INFINITY;
    }
    // Q(z) = phi(z)/z * (1 - 1/z^2 + 3/z^4 - 15/z^6 + ...)
    let w = 1.0 / (z * z);
    let series = 1.0 - w * (1.0 - 3.0 * w * (1.0 - 5.0 * w * (1.0 - 7.0 * w * (1.0 - 9.0 * w))));
    -0.5 * z * z - z.ln() - 0.5 * (2.0 * PI).ln() + series.ln()
}

/// `ln(exp(hi) - exp(lo))` for `lo <= hi`.
fn ln_sub_exp(hi: f64, lo: f64) -> f64 {
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    let d = lo - hi;
    if d > -std::f64::consts::LN_2 {
        hi + (-d.exp_m1()).ln()
    } else {
        hi + (-d.exp()).ln_1p()
    }
}

/// `ln(Phi(b) - Phi(a))` for `a < b`, accurate in both tails.
pub fn ln_interval(a: f64, b: f64) -> f64 {
    debug_assert!(a <= b);
    if a >= 0.0 {
        ln_sub_exp(ln_sf(a), ln_sf(b))
    } else if b <= 0.0 {
        ln_sub_exp(ln_sf(-b), ln_sf(-a))
    } else {
        // Straddles zero: erf values have opposite signs, so the difference
        // is a sum of magnitudes.
        (0.5 * (libm::erf(b * FRAC_1_SQRT_2) - libm::erf(a * FRAC_1_SQRT_2))).ln()
    }
}

/// Two-sided p-value `2 (1 - Phi(|z|))`.
pub fn two_sided_p(z: f64) -> f64 {
    2.0 * sf(z.abs())
}
