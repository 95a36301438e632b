//! A lognormal fitted to a 50/50 mixture of two lognormals fits worse than
//! one fitted to a single lognormal with the average location.

use citedist::experiments::{mixture_sample, mixture_study, MixtureSpec};
use citedist::fitting::FitConfig;
use citedist::{Family, ModelSpec};

fn main() -> citedist::Result<()> {
    let low = ModelSpec::lognormal(1.0, 1.0)?;
    let high = ModelSpec::lognormal(3.5, 1.0)?;
    let pure = ModelSpec::lognormal(2.25, 1.0)?;
    let spec = MixtureSpec::pair(low, high, 0.5)?;

    let s = mixture_sample(&spec, 10_000, 1);
    println!("mixture sample mean {:.2}, max {}", s.mean().unwrap(), s.max().unwrap());

    let study = mixture_study(&spec, &pure, Family::Lognormal, 10_000, 20, 1, &FitConfig::default())?;
    for (i, t) in study.trials.iter().flatten().take(5).enumerate() {
        println!("trial {i}: mixture KS {:.4}, pure KS {:.4}", t.mixture_ks, t.pure_ks);
    }
    println!("mixture fitted worse in {}/{} trials", study.worse_count(), study.trials.len());
    Ok(())
}
