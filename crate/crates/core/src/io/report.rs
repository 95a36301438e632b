//! Tabular reports as TSV or JSON, each with a provenance header.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A row type that can be written as one line of a TSV table.
pub trait ReportRow: Serialize + DeserializeOwned {
    /// Column titles, in output order.
    const COLUMNS: &'static [&'static str];

    /// Cell text for each column; `COLUMNS.len()` entries.
    fn cells(&self) -> Vec<String>;

    /// Free-text annotations, written as comment lines after the table.
    fn notes(&self) -> Vec<String> {
        Vec::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tsv" => Ok(Format::Tsv),
            "json" => Ok(Format::Json),
            other => Err(Error::Parameter(format!("unknown output format '{other}'"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Tsv => "tsv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub tool: String,
    pub version: String,
    pub title: String,
    pub seed: Option<u64>,
    pub reps: Option<usize>,
    pub n_sim: Option<usize>,
    /// Where the counts came from, e.g. input files or the embedded fixture.
    pub source: String,
}

impl ReportHeader {
    pub fn new(title: impl Into<String>, source: impl Into<String>) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            title: title.into(),
            seed: None,
            reps: None,
            n_sim: None,
            source: source.into(),
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn reps(mut self, reps: usize) -> Self {
        self.reps = Some(reps);
        self
    }

    pub fn n_sim(mut self, n_sim: usize) -> Self {
        self.n_sim = Some(n_sim);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<R> {
    pub header: ReportHeader,
    pub rows: Vec<R>,
}

impl<R: ReportRow> Report<R> {
    pub fn new(header: ReportHeader, rows: Vec<R>) -> Self {
        Self { header, rows }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Tsv => self.write_tsv(out),
            Format::Json => self.write_json(out),
        }
    }

    pub fn write_tsv(&self, out: &mut dyn Write) -> Result<()> {
        let h = &self.header;
        writeln!(out, "# tool: {} {}", h.tool, h.version)?;
        writeln!(out, "# title: {}", h.title)?;
        if let Some(seed) = h.seed {
            writeln!(out, "# seed: {seed}")?;
        }
        if let Some(reps) = h.reps {
            writeln!(out, "# reps: {reps}")?;
        }
        if let Some(n_sim) = h.n_sim {
            writeln!(out, "# n_sim: {n_sim}")?;
        }
        writeln!(out, "# source: {}", h.source)?;
        writeln!(out, "{}", R::COLUMNS.join("\t"))?;
        for row in &self.rows {
            let cells = row.cells();
            debug_assert_eq!(cells.len(), R::COLUMNS.len());
            writeln!(out, "{}", cells.join("\t"))?;
        }
        for row in &self.rows {
            for note in row.notes() {
                writeln!(out, "# note: {note}")?;
            }
        }
        Ok(())
    }

    pub fn write_json(&self, out: &mut dyn Write) -> Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)?;
        Ok(())
    }

    pub fn read_json(input: impl Read) -> Result<Self> {
        Ok(serde_json::from_reader(input)?)
    }
}

/// Four significant figures with trailing zeros removed; `NA` for
/// non-finite values.
pub fn fmt_sig(v: f64) -> String {
    if !v.is_finite() {
        return "NA".into();
    }
    if v == 0.0 {
        return "0".into();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (3 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.');
        if trimmed == "-0" {
            "0".into()
        } else {
            trimmed.to_string()
        }
    } else {
        s
    }
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".into(), fmt_sig)
}
