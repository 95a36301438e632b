//! How often does the Vuong test pick the generating family, and how does
//! that change with sample size?

use citedist::experiments::{simulation_study, subject};
use citedist::fitting::FitConfig;

fn main() -> citedist::Result<()> {
    let config = FitConfig::default();
    let virology = subject("Virology").unwrap();
    let cancer = subject("Cancer Research").unwrap();
    let cases = [
        ("Virology lognormal", virology.lognormal()?, virology.n),
        ("Virology lognormal", virology.lognormal()?, 500),
        ("Cancer Research hooked", cancer.hooked()?, cancer.n),
        ("Cancer Research hooked", cancer.hooked()?, 500),
    ];
    println!("{:<24} {:>6} {:>8} {:>7} {:>7} {:>7}", "generator", "n", "median z", "hooked", "logn", "failed");
    for (name, model, n) in cases {
        let study = simulation_study(&model, n, 30, 7, &config)?;
        let median = study.summary.as_ref().map_or(f64::NAN, |s| s.median);
        println!(
            "{name:<24} {n:>6} {median:>8.2} {:>7} {:>7} {:>7}",
            study.hooked_wins(),
            study.lognormal_wins(),
            study.failed
        );
    }
    Ok(())
}
