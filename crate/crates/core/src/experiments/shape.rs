//! Bottom/middle/top comparison of each subject with both fitted families.

use serde::{Deserialize, Serialize};

use crate::distributions::Family;
use crate::error::Result;
use crate::fitting::{fit, FitConfig};
use crate::gof::{shape_classify, ShapeClass, ShapeReport};
use crate::io::report::ReportRow;
use crate::sample::CitationSample;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeRow {
    pub subject: String,
    /// Lognormal then hooked; `None` when the fit failed.
    pub lognormal: Option<ShapeReport>,
    pub hooked: Option<ShapeReport>,
    pub notes: Vec<String>,
}

impl ShapeRow {
    fn classes(&self) -> [Option<ShapeClass>; 6] {
        let three = |r: &Option<ShapeReport>| match r {
            Some(r) => [Some(r.bottom), Some(r.middle), Some(r.top)],
            None => [None; 3],
        };
        let [a, b, c] = three(&self.lognormal);
        let [d, e, f] = three(&self.hooked);
        [a, b, c, d, e, f]
    }
}

/// Subject rows followed by the four total rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeTable {
    pub epsilon: f64,
    pub rows: Vec<ShapeRow>,
}

/// One line of the rendered table: a subject or a totals row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeTableLine {
    pub label: String,
    pub cells: Vec<String>,
}

impl ReportRow for ShapeTableLine {
    const COLUMNS: &'static [&'static str] = &[
        "Empirical data",
        "Ln bottom",
        "Ln middle",
        "Ln top",
        "Hook bottom",
        "Hook middle",
        "Hook top",
    ];

    fn cells(&self) -> Vec<String> {
        let mut out = vec![self.label.clone()];
        out.extend(self.cells.iter().cloned());
        out
    }
}

impl ShapeTable {
    /// Per column, how many subjects fall in `class`.
    pub fn totals(&self, class: ShapeClass) -> [usize; 6] {
        let mut out = [0; 6];
        for row in &self.rows {
            for (slot, c) in out.iter_mut().zip(row.classes()) {
                if c == Some(class) {
                    *slot += 1;
                }
            }
        }
        out
    }

    /// Per column, subjects with a classification.
    pub fn overall(&self) -> [usize; 6] {
        let mut out = [0; 6];
        for row in &self.rows {
            for (slot, c) in out.iter_mut().zip(row.classes()) {
                if c.is_some() {
                    *slot += 1;
                }
            }
        }
        out
    }

    pub fn lines(&self) -> Vec<ShapeTableLine> {
        let mut lines: Vec<ShapeTableLine> = self
            .rows
            .iter()
            .map(|r| ShapeTableLine {
                label: r.subject.clone(),
                cells: r.classes().iter().map(|c| c.map_or("NA", |c| c.symbol()).to_string()).collect(),
            })
            .collect();
        let count_line = |label: &str, counts: [usize; 6]| ShapeTableLine {
            label: label.to_string(),
            cells: counts.iter().map(|c| c.to_string()).collect(),
        };
        lines.push(count_line("Higher total", self.totals(ShapeClass::Plus)));
        lines.push(count_line("Same total", self.totals(ShapeClass::Equal)));
        lines.push(count_line("Lower total", self.totals(ShapeClass::Minus)));
        lines.push(count_line("Overall total", self.overall()));
        lines
    }
}

/// Classifies every subject against both fitted families at threshold
/// `epsilon`. A failed fit leaves its three cells empty.
pub fn shape_table(samples: &[CitationSample], epsilon: f64, config: &FitConfig) -> Result<ShapeTable> {
    let mut rows = Vec::with_capacity(samples.len());
    for sample in samples {
        sample.require_non_empty()?;
        let mut notes = Vec::new();
        let mut report = |family: Family| -> Result<Option<ShapeReport>> {
            match fit(family, sample, config) {
                Ok(f) => shape_classify(&f.model, sample, epsilon).map(Some),
                Err(e) => {
                    notes.push(format!("{}: {family} fit failed: {e}", sample.label()));
                    Ok(None)
                }
            }
        };
        let lognormal = report(Family::Lognormal)?;
        let hooked = report(Family::Hooked)?;
        rows.push(ShapeRow {
            subject: sample.label().to_string(),
            lognormal,
            hooked,
            notes,
        });
    }
    Ok(ShapeTable { epsilon, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::ModelSpec;

    #[test]
    fn totals_add_up() {
        let samples = vec![
            ModelSpec::lognormal(2.0, 1.1).unwrap().sample(3000, 1).with_label("a"),
            ModelSpec::hooked(4.0, 60.0).unwrap().sample(3000, 2).with_label("b"),
            CitationSample::new(vec![2, 2, 2], 1, "flat").unwrap(),
        ];
        let table = shape_table(&samples, 0.01, &FitConfig::default()).unwrap();
        let [plus, same, minus] = [ShapeClass::Plus, ShapeClass::Equal, ShapeClass::Minus].map(|c| table.totals(c));
        let overall = table.overall();
        for k in 0..6 {
            assert_eq!(plus[k] + same[k] + minus[k], overall[k]);
            assert_eq!(overall[k], 2);
        }
        let lines = table.lines();
        assert_eq!(lines.len(), 3 + 4);
        assert_eq!(lines[2].cells[0], "NA");
        assert_eq!(lines[6].label, "Overall total");
    }
}
