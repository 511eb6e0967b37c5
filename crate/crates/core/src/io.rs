//! Text formats: 0/1 matrices and symbol tables as headerless CSV, designs as
//! CSV or SB-block JSON, and numeric vectors.

use crate::design::{DesignMatrix, IntMatrix, SbBlockFile};
use crate::error::{Error, Result};

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<T: std::str::FromStr>(line: &str, lineno: usize) -> Result<Vec<T>> {
    line.split(',')
        .map(|f| {
            let f = f.trim();
            f.parse()
                .map_err(|_| Error::Format(format!("line {lineno}: cannot parse {f:?}")))
        })
        .collect()
}

/// Integer matrix from comma-separated rows. Blank lines and lines starting
/// with `#` are skipped.
pub fn read_matrix_csv(text: &str) -> Result<IntMatrix> {
    let rows = data_lines(text)
        .map(|(n, l)| parse_fields::<i64>(l, n))
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::Format("matrix has no rows".into()));
    }
    IntMatrix::from_rows(&rows)
}

pub fn write_matrix_csv(m: &IntMatrix) -> String {
    let mut out = String::with_capacity(m.rows() * m.cols() * 2);
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Symbol table such as an ordered design, one row per line.
pub fn read_symbol_csv(text: &str) -> Result<Vec<Vec<usize>>> {
    data_lines(text).map(|(n, l)| parse_fields(l, n)).collect()
}

pub fn write_symbol_csv(rows: &[Vec<usize>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(",") + "\n")
        .collect()
}

/// Resolves `(v1, v2)` from the column count and whichever dimensions are
/// given. With neither given the column count must be a perfect square.
pub fn infer_dimensions(cols: usize, v1: Option<usize>, v2: Option<usize>) -> Result<(usize, usize)> {
    let split = |known: usize| {
        if known == 0 || !cols.is_multiple_of(known) {
            Err(Error::Dimension(format!(
                "{cols} columns cannot split into panels of {known}"
            )))
        } else {
            Ok(cols / known)
        }
    };
    match (v1, v2) {
        (Some(a), Some(b)) if a * b == cols => Ok((a, b)),
        (Some(a), Some(b)) => Err(Error::Dimension(format!(
            "v1 * v2 = {} but the matrix has {cols} columns",
            a * b
        ))),
        (Some(a), None) => Ok((a, split(a)?)),
        (None, Some(b)) => Ok((split(b)?, b)),
        (None, None) => {
            let r = (cols as f64).sqrt().round() as usize;
            if r * r == cols && r > 0 {
                Ok((r, r))
            } else {
                Err(Error::Dimension(format!(
                    "{cols} columns is not a square; give v1 or v2 explicitly"
                )))
            }
        }
    }
}

/// A design from either SB-block JSON (text starting with `{`) or 0/1 CSV.
pub fn read_design(text: &str, v1: Option<usize>, v2: Option<usize>) -> Result<DesignMatrix> {
    if text.trim_start().starts_with('{') {
        let file: SbBlockFile = serde_json::from_str(text).map_err(|e| Error::Format(format!("SB-block JSON: {e}")))?;
        if v1.is_some_and(|a| a != file.v1) || v2.is_some_and(|b| b != file.v2) {
            return Err(Error::Dimension(format!(
                "file declares K_({},{}), which contradicts the given dimensions",
                file.v1, file.v2
            )));
        }
        return file.to_design();
    }
    let m = read_matrix_csv(text)?;
    let (v1, v2) = infer_dimensions(m.cols(), v1, v2)?;
    DesignMatrix::new(v1, v2, m)
}

/// Real numbers separated by commas or whitespace, or a JSON array.
pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    let t = text.trim();
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|e| Error::Format(format!("vector JSON: {e}")));
    }
    t.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|f| !f.is_empty())
        .map(|f| {
            f.parse()
                .map_err(|_| Error::Format(format!("cannot parse {f:?} as a number")))
        })
        .collect()
}
