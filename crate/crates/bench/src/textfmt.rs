//! Plain-text matrix files: a line holding `n`, then `n` lines of `n`
//! whitespace-separated decimal values.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use afmm::DenseMatrix;

use crate::error::{BenchError, Result};

pub fn parse_matrix(text: &str) -> Result<DenseMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or(BenchError::Parse { line: 1, message: "empty input".into() })?;
    let n: usize = header.parse().map_err(|_| BenchError::Parse {
        line: first,
        message: format!("expected dimension, found {header:?}"),
    })?;
    if n == 0 {
        return Err(afmm::Error::InvalidDimension.into());
    }
    let mut data = Vec::with_capacity(n * n);
    for row in 0..n {
        let (line, content) = lines.next().ok_or(BenchError::Parse {
            line: first + row + 1,
            message: format!("expected {n} rows, found {row}"),
        })?;
        let before = data.len();
        for tok in content.split_whitespace() {
            let v: f64 = tok.parse().map_err(|_| BenchError::Parse {
                line,
                message: format!("not a number: {tok:?}"),
            })?;
            data.push(v);
        }
        if data.len() - before != n {
            return Err(BenchError::Parse {
                line,
                message: format!("expected {n} values, found {}", data.len() - before),
            });
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(BenchError::Parse { line, message: format!("trailing data after {n} rows") });
    }
    Ok(DenseMatrix::from_vec(n, data)?)
}

/// Values use Rust's shortest round-trip formatting, so reading the text back
/// reproduces the matrix exactly.
pub fn format_matrix(m: &DenseMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{}", m.n()).unwrap();
    for row in m.rows() {
        let mut first = true;
        for v in row {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_matrix(path: &Path) -> Result<DenseMatrix> {
    let text = fs::read_to_string(path).map_err(BenchError::io(path))?;
    parse_matrix(&text)
}

pub fn write_matrix(m: &DenseMatrix, path: &Path) -> Result<()> {
    fs::write(path, format_matrix(m)).map_err(BenchError::io(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fixture() {
        let m = parse_matrix("2\n1 2\n3.5   -4\n").unwrap();
        assert_eq!(m, DenseMatrix::from_rows(&[[1.0, 2.0], [3.5, -4.0]]).unwrap());
        assert_eq!(format_matrix(&m), "2\n1 2\n3.5 -4\n");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_matrix(""), Err(BenchError::Parse { .. })));
        assert!(matches!(parse_matrix("x\n"), Err(BenchError::Parse { line: 1, .. })));
        assert!(matches!(parse_matrix("2\n1 2\n3\n"), Err(BenchError::Parse { line: 3, .. })));
        assert!(matches!(parse_matrix("2\n1 2\n"), Err(BenchError::Parse { .. })));
        assert!(matches!(parse_matrix("1\n1\n2\n"), Err(BenchError::Parse { line: 3, .. })));
        assert!(matches!(parse_matrix("1\nabc\n"), Err(BenchError::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix("1\ninf\n"), Err(BenchError::Core(afmm::Error::NonFinite { .. }))));
        assert!(matches!(parse_matrix("0\n"), Err(BenchError::Core(afmm::Error::InvalidDimension))));
    }

    #[test]
    fn round_trip_is_exact() {
        let m = DenseMatrix::from_rows(&[[0.1, 1.0 / 3.0], [1e-300, -2.5e17]]).unwrap();
        assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
    }
}
