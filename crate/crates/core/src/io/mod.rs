//! Input parsing, report writers and plot-data export.

pub mod ingest;
pub mod plot;
pub mod report;

pub use ingest::{ingest, InputFormat, RawCountFile, DEFAULT_OFFSET};
pub use plot::emit_plot_data;
pub use report::{fmt_opt, fmt_sig, Format, Report, ReportHeader, ReportRow};
