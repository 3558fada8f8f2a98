//! Matrix and sample-file formats.
//!
//! Matrices are square and row-major. The JSON form is
//! `{"modes": M, "entries": [[re, im], ...]}`; the CSV form has a header
//! `re_0,im_0,...` and one line per row. Reals are written with 17
//! significant digits so a written matrix re-reads to the same bits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use bosonbudget_core::{ClickPattern, Complex64, ComplexMatrix, NetworkUnitary};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

pub fn matrix_to_json(u: &ComplexMatrix) -> String {
    let mut out = format!("{{\"modes\": {}, \"entries\": [", u.rows());
    for (k, z) in u.as_slice().iter().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "[{}, {}]", real(z.re), real(z.im));
    }
    out.push_str("]}\n");
    out
}

pub fn matrix_to_csv(u: &ComplexMatrix) -> String {
    let header: Vec<String> = (0..u.cols()).map(|k| format!("re_{k},im_{k}")).collect();
    let mut out = header.join(",");
    out.push('\n');
    for i in 0..u.rows() {
        let cells: Vec<String> = u.row(i).iter().map(|z| format!("{},{}", real(z.re), real(z.im))).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    modes: usize,
    entries: Vec<[f64; 2]>,
}

pub fn matrix_from_json(text: &str) -> Result<ComplexMatrix, String> {
    let parsed: MatrixJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let m = parsed.modes;
    if parsed.entries.len() != m * m {
        return Err(format!("{} entries for {m} modes, expected {}", parsed.entries.len(), m * m));
    }
    let data = parsed.entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
    ComplexMatrix::new(m, m, data).map_err(|e| e.to_string())
}

pub fn matrix_from_csv(text: &str) -> Result<ComplexMatrix, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or("empty matrix file")?;
    let cols = header.split(',').count();
    if cols % 2 != 0 {
        return Err(format!("header has {cols} columns, expected re/im pairs"));
    }
    let m = cols / 2;
    for (k, name) in header.split(',').enumerate() {
        let expected = if k % 2 == 0 { format!("re_{}", k / 2) } else { format!("im_{}", k / 2) };
        if name.trim() != expected {
            return Err(format!("header column {k} is {name:?}, expected {expected:?}"));
        }
    }
    let mut data = Vec::with_capacity(m * m);
    let mut rows = 0;
    for (i, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != cols {
            return Err(format!("row {i} has {} cells, expected {cols}", cells.len()));
        }
        for pair in cells.chunks(2) {
            let re: f64 = pair[0].trim().parse().map_err(|e| format!("row {i}: {e}"))?;
            let im: f64 = pair[1].trim().parse().map_err(|e| format!("row {i}: {e}"))?;
            data.push(Complex64::new(re, im));
        }
        rows += 1;
    }
    if rows != m {
        return Err(format!("{rows} rows for {m} modes"));
    }
    ComplexMatrix::new(m, m, data).map_err(|e| e.to_string())
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Reads a unitary, choosing the format by extension.
pub fn read_unitary(path: &Path) -> CliResult<NetworkUnitary> {
    let text = read_text(path)?;
    let matrix = if is_csv(path) { matrix_from_csv(&text) } else { matrix_from_json(&text) };
    let matrix = matrix.map_err(|e| CliError::parse(path, e))?;
    Ok(NetworkUnitary::new(matrix)?)
}

pub fn write_unitary(path: &Path, u: &NetworkUnitary) -> CliResult<()> {
    let text = if is_csv(path) { matrix_to_csv(u.matrix()) } else { matrix_to_json(u.matrix()) };
    write_text(path, &text)
}

pub fn samples_to_text(samples: &[ClickPattern]) -> String {
    let mut out = String::with_capacity(samples.iter().map(|s| s.modes() + 1).sum());
    for s in samples {
        let _ = writeln!(out, "{s}");
    }
    out
}

/// One 0/1 string of length `modes` per line; blank lines are skipped.
pub fn read_samples(path: &Path, modes: usize) -> CliResult<Vec<ClickPattern>> {
    let text = read_text(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let pattern: ClickPattern = line.parse().map_err(|e| CliError::parse(path, format!("line {}: {e}", i + 1)))?;
        if pattern.modes() != modes {
            return Err(CliError::parse(path, format!("line {}: {} modes, expected {modes}", i + 1, pattern.modes())));
        }
        out.push(pattern);
    }
    Ok(out)
}
