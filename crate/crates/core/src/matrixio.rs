//! Plain-text matrix files: first line `rows cols`, then row-major
//! whitespace-separated entries (line breaks anywhere). Vectors are
//! matrices with a single row or column.

use std::path::Path;

use crate::error::{Error, Result};
use crate::space::{Matrix, Vector};

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut tokens = text.split_whitespace();
    let rows: usize = tokens
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?
        .parse()
        .map_err(|_| Error::Parse("bad row count".into()))?;
    let cols: usize = tokens
        .next()
        .ok_or_else(|| Error::Parse("missing column count".into()))?
        .parse()
        .map_err(|_| Error::Parse("bad column count".into()))?;
    let mut data = Vec::with_capacity(rows * cols);
    for tok in tokens {
        let v: f64 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("bad entry '{tok}'")))?;
        data.push(v);
    }
    if data.len() != rows * cols {
        return Err(Error::Parse(format!(
            "expected {} entries, found {}",
            rows * cols,
            data.len()
        )));
    }
    Matrix::new(rows, cols, data)
}

pub fn read_matrix(path: &Path) -> Result<Matrix> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

pub fn format_matrix(m: &Matrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| format!("{:.16e}", m.get(i, j)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_matrix(path: &Path, m: &Matrix) -> Result<()> {
    Ok(std::fs::write(path, format_matrix(m))?)
}

/// Read a vector stored as an n×1 or 1×n matrix.
pub fn read_vector(path: &Path) -> Result<Vector> {
    let m = read_matrix(path)?;
    if m.rows() != 1 && m.cols() != 1 {
        return Err(Error::Parse(format!(
            "expected a vector file (one row or one column), got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Vector::from_slice(m.data())
}
