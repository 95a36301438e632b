use std::io::Write;

use crate::distributions::CountDistribution;
use crate::error::Result;
use crate::sample::CitationSample;

/// Writes `x, empirical_cdf, model_cdf` for `x = 1..=max(sample)` as CSV.
pub fn emit_plot_data<M: CountDistribution + ?Sized>(
    model: &M,
    sample: &CitationSample,
    out: impl Write,
) -> Result<()> {
    sample.require_non_empty()?;
    let hist = sample.histogram();
    let cumulative = hist.cumulative();
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["x", "empirical_cdf", "model_cdf"])?;
    let mut idx = 0;
    let mut ecdf = 0.0;
    for x in 1..=sample.max().expect("non-empty") {
        if idx < hist.values.len() && hist.values[idx] == x {
            ecdf = cumulative[idx];
            idx += 1;
        }
        writer.serialize((x, ecdf, model.cdf(x)))?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::ModelSpec;

    #[test]
    fn two_point_sample_rows() {
        let m = ModelSpec::hooked(2.0, 1.0).unwrap();
        let s = CitationSample::from_counts(vec![1, 2]).unwrap();
        let mut buf = Vec::new();
        emit_plot_data(&m, &s, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,empirical_cdf,model_cdf");
        assert_eq!(lines.len(), 3);
        let last: Vec<f64> = lines[2].split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(last[0], 2.0);
        assert_eq!(last[1], 1.0);
        assert!((last[2] - 0.559923).abs() < 1e-5);
    }
}
