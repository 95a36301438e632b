//! KS plausibility rows for a few subjects simulated from their fitted models.

use std::io;

use citedist::experiments::{plausibility_table, subject};
use citedist::fitting::FitConfig;
use citedist::io::{Format, Report, ReportHeader};

fn main() -> citedist::Result<()> {
    let seed = 42;
    let names = ["Control and Optimization", "Cultural Studies", "Food Science"];
    let samples = names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let s = subject(name).expect("fixture subject");
            Ok(s.lognormal()?.sample(s.n.min(3000), seed + i as u64).with_label(*name))
        })
        .collect::<citedist::Result<Vec<_>>>()?;

    let rows = plausibility_table(&samples, 99, seed, &FitConfig::default())?;
    let header = ReportHeader::new("KS plausibility", "lognormal simulations").seed(seed).n_sim(99);
    Report::new(header, rows).write(Format::Tsv, &mut io::stdout())
}
