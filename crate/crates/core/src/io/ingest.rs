//! Reading raw citation counts and applying the offset.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::CitationSample;

/// Offset added to raw citation counts so that uncited articles land on 1.
pub const DEFAULT_OFFSET: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InputFormat {
    /// One non-negative integer per line; blank lines are skipped.
    PlainLines,
    /// CSV with a header row containing a `citations` column.
    CsvWithHeader,
}

/// Raw (pre-offset) citation counts read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCountFile {
    pub path: String,
    pub format: InputFormat,
    pub counts: Vec<u64>,
    /// Source line of each count.
    lines: Vec<usize>,
}

fn parse_count(text: &str, line: usize) -> Result<u64> {
    let t = text.trim();
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    let message = if t.parse::<i64>().is_ok() {
        format!("negative count '{t}'")
    } else if t.parse::<f64>().is_ok() {
        format!("'{t}' is not an integer")
    } else {
        format!("cannot parse '{t}' as a count")
    };
    Err(Error::Parse { line, message })
}

impl RawCountFile {
    pub fn parse(text: &str, format: InputFormat, path: impl Into<String>) -> Result<Self> {
        let (counts, lines) = match format {
            InputFormat::PlainLines => parse_lines(text)?,
            InputFormat::CsvWithHeader => parse_csv(text)?,
        };
        if counts.is_empty() {
            return Err(Error::Parse {
                line: 1,
                message: "input contains no counts".into(),
            });
        }
        Ok(Self {
            path: path.into(),
            format,
            counts,
            lines,
        })
    }

    /// Reads a file, choosing CSV for a `.csv` extension or a first line
    /// naming a `citations` column.
    pub fn read(path: &Path, format: Option<InputFormat>) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let format = format.unwrap_or_else(|| detect_format(path, &text));
        Self::parse(&text, format, path.display().to_string())
    }

    /// Label for reports: the file stem.
    pub fn label(&self) -> String {
        Path::new(&self.path)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| self.path.clone())
    }
}

fn detect_format(path: &Path, text: &str) -> InputFormat {
    let is_csv_ext = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let names_column = first
        .split(',')
        .any(|c| c.trim().trim_matches('"').eq_ignore_ascii_case("citations"));
    if is_csv_ext || names_column {
        InputFormat::CsvWithHeader
    } else {
        InputFormat::PlainLines
    }
}

fn parse_lines(text: &str) -> Result<(Vec<u64>, Vec<usize>)> {
    let mut counts = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        counts.push(parse_count(raw, i + 1)?);
        lines.push(i + 1);
    }
    Ok((counts, lines))
}

fn parse_csv(text: &str) -> Result<(Vec<u64>, Vec<usize>)> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let column = reader
        .headers()?
        .iter()
        .position(|h| h.eq_ignore_ascii_case("citations"))
        .ok_or_else(|| Error::Parse {
            line: 1,
            message: "no 'citations' column in the CSV header".into(),
        })?;
    let mut counts = Vec::new();
    let mut lines = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let cell = record.get(column).ok_or_else(|| Error::Parse {
            line,
            message: "missing 'citations' field".into(),
        })?;
        counts.push(parse_count(cell, line)?);
        lines.push(line);
    }
    Ok((counts, lines))
}

/// Maps every raw count `c` to `c + offset`.
pub fn ingest(file: &RawCountFile, offset: u64) -> Result<CitationSample> {
    if offset == 0 {
        if let Some(i) = file.counts.iter().position(|&c| c == 0) {
            return Err(Error::Offset { line: file.lines[i] });
        }
    }
    let counts = file
        .counts
        .iter()
        .map(|&c| {
            c.checked_add(offset)
                .ok_or_else(|| Error::Parameter(format!("count {c} overflows with offset {offset}")))
        })
        .collect::<Result<Vec<u64>>>()?;
    CitationSample::new(counts, offset, file.label())
}
