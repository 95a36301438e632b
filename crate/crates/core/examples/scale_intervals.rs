//! Bootstrap 95% intervals of the lognormal scale parameter for subjects
//! with different true σ.

use citedist::experiments::scale_ci_study;
use citedist::fitting::FitConfig;
use citedist::resampling::ResampleSize;
use citedist::ModelSpec;

fn main() -> citedist::Result<()> {
    let samples = [1.0, 1.3, 1.6]
        .iter()
        .enumerate()
        .map(|(i, &sigma)| {
            Ok(ModelSpec::lognormal(2.0, sigma)?
                .sample(5000, 100 + i as u64)
                .with_label(format!("sigma {sigma}")))
        })
        .collect::<citedist::Result<Vec<_>>>()?;

    let rows = scale_ci_study(&samples, 200, ResampleSize::Fixed(500), 9, &FitConfig::default())?;
    for r in rows {
        println!(
            "{:<10} [{:.3}, {:.3}] median {:.3}",
            r.subject,
            r.lo95.unwrap(),
            r.hi95.unwrap(),
            r.median.unwrap()
        );
    }
    Ok(())
}
