//! Draw a sample from a known lognormal, fit both families and compare them.

use citedist::compare::vuong;
use citedist::fitting::{fit, log_likelihood, FitConfig};
use citedist::{Family, ModelSpec};

fn main() -> citedist::Result<()> {
    let truth = ModelSpec::lognormal(2.08, 1.11)?;
    let sample = truth.sample(10_000, 2006);
    println!("{} draws, mean {:.2}", sample.len(), sample.mean().unwrap());
    println!("true model log-likelihood {:.1}", log_likelihood(&truth, &sample)?);

    let config = FitConfig::default();
    let lognormal = fit(Family::Lognormal, &sample, &config)?;
    let hooked = fit(Family::Hooked, &sample, &config)?;
    for f in [&lognormal, &hooked] {
        println!(
            "{:<36} logL {:.1} ({}, {} evaluations)",
            f.model.to_string(),
            f.log_likelihood,
            f.status,
            f.evaluations
        );
    }

    let v = vuong(&hooked.model, &lognormal.model, &sample)?;
    println!("Vuong z = {:.2} (p = {:.3}), favoured: {:?}", v.z, v.p_two_sided, v.favored);

    let m = lognormal.model.continuous_moments()?;
    println!("fitted continuous mean {:.2}, sd {:.2}", m.mean, m.sd);
    println!("median count {}", lognormal.model.quantile(0.5)?);
    Ok(())
}
