//! Read raw citation counts, apply the +1 offset, and write plot data for the
//! fitted lognormal.

use std::io;

use citedist::fitting::{fit, FitConfig};
use citedist::io::{emit_plot_data, ingest, InputFormat, RawCountFile};
use citedist::Family;

fn main() -> citedist::Result<()> {
    let text = "id,citations\na,0\nb,3\nc,12\nd,1\ne,0\nf,7\ng,2\nh,25\n";
    let raw = RawCountFile::parse(text, InputFormat::CsvWithHeader, "toy.csv")?;
    let sample = ingest(&raw, 1)?;
    eprintln!("counts after offset: {:?}", sample.counts());

    let fitted = fit(Family::Lognormal, &sample, &FitConfig::default())?;
    eprintln!("fitted {}", fitted.model);
    emit_plot_data(&fitted.model, &sample, io::stdout())
}
