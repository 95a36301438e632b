//! Where does each fitted CDF sit above or below the empirical one?

use std::io;

use citedist::experiments::{shape_table, subject};
use citedist::fitting::FitConfig;
use citedist::io::{Format, Report, ReportHeader};

fn main() -> citedist::Result<()> {
    let mut samples = Vec::new();
    for (i, name) in ["Food Science", "Virology", "Cultural Studies"].iter().enumerate() {
        let s = subject(name).unwrap();
        // Hooked data judged against both fits.
        samples.push(s.hooked()?.sample(s.n, i as u64).with_label(*name));
    }
    let table = shape_table(&samples, 0.01, &FitConfig::default())?;
    let header = ReportHeader::new("CDF shape comparison", "hooked simulations");
    Report::new(header, table.lines()).write(Format::Tsv, &mut io::stdout())
}
