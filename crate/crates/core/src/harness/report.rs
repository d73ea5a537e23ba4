//! CSV and JSON report emission.

use std::io::Write;
use std::path::Path;

use crate::error::Result;

use super::config::Format;
use super::run::ReportRow;

/// Column order of the CSV report.
pub const CSV_HEADER: [&str; 19] = [
    "experiment",
    "command",
    "check",
    "p",
    "n",
    "seed",
    "index",
    "set",
    "lhs",
    "rhs",
    "margin",
    "saturated",
    "clamped",
    "asserted",
    "pass",
    "constants",
    "tolerance",
    "solver_tol",
    "timestamp",
];

/// Writes the rows to `out` as CSV (header first, header only when empty) or a JSON array.
pub fn write_report<W: Write>(rows: &[ReportRow], out: W, format: Format) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Writes the report to `path`.
pub fn emit_report(rows: &[ReportRow], path: &Path, format: Format) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_report(rows, std::io::BufWriter::new(file), format)
}
