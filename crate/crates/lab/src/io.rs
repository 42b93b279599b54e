//! Plain-text matrix format.
//!
//! Lines starting with `#` are comments and blank lines are ignored. The first
//! data line is `rows cols`; each following line holds one row. Values are
//! written with the shortest decimal that parses back to the same `f64`, so a
//! write/read round trip is bitwise lossless.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use symfact::Matrix;

use crate::error::{LabError, Result};

pub fn format_matrix(a: &Matrix) -> Result<String> {
    a.ensure_finite()?;
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", a.rows(), a.cols());
    for i in 0..a.rows() {
        let mut first = true;
        for x in a.row(i) {
            if !first {
                out.push(' ');
            }
            first = false;
            // Debug formatting is the shortest round-trip representation
            let _ = write!(out, "{x:?}");
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn write_matrix(path: impl AsRef<Path>, a: &Matrix) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_matrix(a)?).map_err(|e| LabError::io(path, e))
}

fn parse_dim(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| LabError::parse(line, format!("bad dimension {tok:?}")))
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| LabError::parse(1, "missing \"rows cols\" header"))?;
    let dims: Vec<&str> = header.split_ascii_whitespace().collect();
    let [r, c] = dims[..] else {
        return Err(LabError::parse(hline, "header must be \"rows cols\""));
    };
    let (rows, cols) = (parse_dim(r, hline)?, parse_dim(c, hline)?);

    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (ln, row) = lines.next().ok_or_else(|| {
            LabError::parse(
                text.lines().count() + 1,
                format!("expected {rows} rows, found {}", data.len() / cols.max(1)),
            )
        })?;
        let before = data.len();
        for tok in row.split_ascii_whitespace() {
            let x: f64 = tok
                .parse()
                .map_err(|_| LabError::parse(ln, format!("bad number {tok:?}")))?;
            if !x.is_finite() {
                return Err(LabError::parse(ln, format!("non-finite value {tok:?}")));
            }
            data.push(x);
        }
        if data.len() - before != cols {
            return Err(LabError::parse(
                ln,
                format!("expected {cols} values, found {}", data.len() - before),
            ));
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(LabError::parse(ln, "trailing data after the last row"));
    }
    Ok(Matrix::from_vec(rows, cols, data)?)
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<Matrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    parse_matrix(&text)
}
