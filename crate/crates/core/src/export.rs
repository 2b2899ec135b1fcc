//! Deterministic CSV and JSON emission.
//!
//! CSV files carry a header row, comma separators and LF line endings.
//! Floats are written in scientific notation with 17 significant digits,
//! which round-trips every `f64` and never depends on the locale.

use std::io::Write;

use serde::Serialize;

use crate::analysis::{DomainBoundary, Family, Scan2d, SweepRecord};
use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;

/// 17-significant-digit scientific formatting.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row of the closed-form versus numerical spectrum table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub n: usize,
    pub e_closed_form: f64,
    pub e_numeric: f64,
    pub abs_delta: f64,
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn finish<W: Write>(mut w: csv::Writer<W>) -> Result<()> {
    w.flush().map_err(|e| Error::Export(e.to_string()))
}

fn row<W: Write, I, S>(w: &mut csv::Writer<W>, fields: I) -> Result<()>
where
    I: IntoIterator<Item = S>,
    S: AsRef<[u8]>,
{
    w.write_record(fields).map_err(|e| Error::Export(e.to_string()))
}

pub fn write_spectrum_csv<W: Write>(w: W, rows: &[SpectrumRow]) -> Result<()> {
    let mut out = writer(w);
    row(&mut out, ["n", "e_closed_form", "e_numeric", "abs_delta"])?;
    for r in rows {
        row(
            &mut out,
            [
                r.n.to_string(),
                fmt_f64(r.e_closed_form),
                fmt_f64(r.e_numeric),
                fmt_f64(r.abs_delta),
            ],
        )?;
    }
    finish(out)
}

/// Columns `lambda, k_1..k_N` for `K`, `lambda, mu, k_1..k_N` for `L`.
pub fn write_sweep_csv<W: Write>(w: W, family: Family, records: &[SweepRecord]) -> Result<()> {
    let mut out = writer(w);
    let n = records.first().map_or(0, |r| r.eigenvalues.len());
    let mut header = match family {
        Family::K => vec!["lambda".to_string()],
        Family::L { .. } => vec!["lambda".to_string(), "mu".to_string()],
    };
    header.extend((1..=n).map(|k| format!("k_{k}")));
    row(&mut out, &header)?;
    for r in records {
        let mut fields = match family {
            Family::K => vec![fmt_f64(r.param)],
            Family::L { lambda } => vec![fmt_f64(lambda), fmt_f64(r.param)],
        };
        fields.extend(r.eigenvalues.iter().map(|v| fmt_f64(*v)));
        row(&mut out, &fields)?;
    }
    finish(out)
}

/// Columns `lambda, mu, n_negative, min_eig`, `λ`-major.
pub fn write_scan_csv<W: Write>(w: W, scan: &Scan2d) -> Result<()> {
    let mut out = writer(w);
    row(&mut out, ["lambda", "mu", "n_negative", "min_eig"])?;
    for r in &scan.records {
        row(
            &mut out,
            [
                fmt_f64(r.lambda),
                fmt_f64(r.mu),
                r.n_negative.to_string(),
                fmt_f64(r.min_eig),
            ],
        )?;
    }
    finish(out)
}

pub fn write_boundary_csv<W: Write>(w: W, boundary: &DomainBoundary) -> Result<()> {
    let mut out = writer(w);
    row(
        &mut out,
        ["location", "negative_before", "negative_after", "min_abs_eigenvalue"],
    )?;
    for c in &boundary.crossings {
        row(
            &mut out,
            [
                fmt_f64(c.location),
                c.negative_before.to_string(),
                c.negative_after.to_string(),
                fmt_f64(c.min_abs_eigenvalue),
            ],
        )?;
    }
    finish(out)
}

/// Matrix rows under a `c_1..c_N` header.
pub fn write_matrix_csv<W: Write>(w: W, m: &DenseMatrix) -> Result<()> {
    let mut out = writer(w);
    row(&mut out, (1..=m.cols()).map(|k| format!("c_{k}")))?;
    for i in 0..m.rows() {
        row(&mut out, m.row(i).iter().map(|v| fmt_f64(*v)))?;
    }
    finish(out)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Export(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Renders a CSV writer into a string.
pub fn csv_string(f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<String> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Export(e.to_string()))
}
