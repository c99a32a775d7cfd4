//! Row-major square matrices and the sample statistics used by the cost model.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An `n×n` matrix of finite `f64` values stored row-major.
///
/// Element `(i, j)` lives at `data[i * n + j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension);
        }
        Ok(Self { n, data: vec![0.0; n * n] })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        Ok(m)
    }

    /// Builds a matrix from `n` rows of `n` values each.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidDimension);
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Shape { expected: n, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(n, data)
    }

    /// Wraps a row-major buffer of length `n²`.
    pub fn from_vec(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension);
        }
        if data.len() != n * n {
            return Err(Error::Shape { expected: n * n, found: data.len() });
        }
        if let Some(idx) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: idx / n, col: idx % n });
        }
        Ok(Self { n, data })
    }

    /// Caller guarantees `data.len() == n * n` and finiteness.
    pub(crate) fn from_raw(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0.0).count()
    }

    /// Fraction of nonzero entries.
    pub fn density(&self) -> f64 {
        self.nonzero_count() as f64 / self.data.len() as f64
    }

    /// Arithmetic mean of the nonzero entries.
    pub fn nonzero_mean(&self) -> Result<f64> {
        let (sum, count) = self
            .data
            .iter()
            .filter(|&&v| v != 0.0)
            .fold((0.0, 0usize), |(s, c), &v| (s + v, c + 1));
        if count == 0 {
            return Err(Error::UndefinedMean);
        }
        Ok(sum / count as f64)
    }

    /// Mean over all `n²` entries, zeros included.
    pub fn overall_mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    /// True iff every entry satisfies `|a - b| <= rel_tol * max(1, |a|, |b|)`.
    pub fn approx_equal(&self, other: &DenseMatrix, rel_tol: f64) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::Shape { expected: self.n, found: other.n });
        }
        Ok(self.data.iter().zip(&other.data).all(|(&a, &b)| {
            let scale = 1.0f64.max(a.abs()).max(b.abs());
            (a - b).abs() <= rel_tol * scale
        }))
    }

    /// Reads every entry as an integer repetition count.
    ///
    /// An entry counts as integer when it lies within `1e-9` of its rounded value.
    pub fn integer_values(&self) -> Result<Vec<i64>> {
        self.data
            .iter()
            .enumerate()
            .map(|(idx, &v)| {
                let r = libm::round(v);
                if (v - r).abs() > INTEGER_TOLERANCE || r.abs() > MAX_EXACT_INTEGER {
                    Err(Error::NotInteger { row: idx / self.n, col: idx % self.n, value: v })
                } else {
                    Ok(r as i64)
                }
            })
            .collect()
    }

    pub fn is_integer_valued(&self) -> bool {
        self.integer_values().is_ok()
    }
}

pub(crate) const INTEGER_TOLERANCE: f64 = 1e-9;
// 2^53: beyond this, f64 no longer represents every integer.
const MAX_EXACT_INTEGER: f64 = 9_007_199_254_740_992.0;

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn zeros_shapes() {
        assert_eq!(DenseMatrix::zeros(2).unwrap().as_slice(), &[0.0; 4]);
        assert_eq!(DenseMatrix::zeros(1).unwrap().as_slice(), &[0.0]);
        assert_eq!(DenseMatrix::zeros(5).unwrap().density(), 0.0);
        assert_eq!(DenseMatrix::zeros(0), Err(Error::InvalidDimension));
    }

    #[test]
    fn from_rows_layout_and_errors() {
        assert_eq!(m(&[&[1.0, 2.0], &[3.0, 4.0]]).as_slice(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m(&[&[5.0]]).n(), 1);
        assert!(matches!(
            DenseMatrix::from_rows(&[&[1.0, 2.0][..], &[3.0][..]]),
            Err(Error::Shape { .. })
        ));
        assert!(matches!(
            DenseMatrix::from_rows(&[&[1.0, 2.0, 3.0][..], &[3.0, 4.0, 5.0][..]]),
            Err(Error::Shape { .. })
        ));
        assert_eq!(
            DenseMatrix::from_rows(&[&[1.0, f64::NAN][..], &[3.0, 4.0][..]]),
            Err(Error::NonFinite { row: 0, col: 1 })
        );
        assert_eq!(
            DenseMatrix::from_rows(&[&[1.0, 0.0][..], &[f64::INFINITY, 4.0][..]]),
            Err(Error::NonFinite { row: 1, col: 0 })
        );
    }

    #[test]
    fn density_examples() {
        assert_eq!(DenseMatrix::identity(4).unwrap().density(), 0.25);
        assert_eq!(DenseMatrix::zeros(3).unwrap().density(), 0.0);
        assert_eq!(m(&[&[1.0, 0.0], &[2.0, 3.0]]).density(), 0.75);
    }

    #[test]
    fn means() {
        let a = m(&[&[2.0, 0.0], &[0.0, 4.0]]);
        assert_eq!(a.nonzero_mean().unwrap(), 3.0);
        assert_eq!(a.overall_mean(), 1.5);
        assert_eq!(DenseMatrix::identity(3).unwrap().nonzero_mean().unwrap(), 1.0);
        assert_eq!(DenseMatrix::zeros(2).unwrap().nonzero_mean(), Err(Error::UndefinedMean));
        assert_eq!(DenseMatrix::zeros(3).unwrap().overall_mean(), 0.0);
    }

    #[test]
    fn approx_equal_examples() {
        let a = m(&[&[1.0, -2.5], &[3.0, 0.0]]);
        assert!(a.approx_equal(&a, 0.0).unwrap());
        assert!(m(&[&[1.0]]).approx_equal(&m(&[&[1.0 + 1e-12]]), 1e-9).unwrap());
        assert!(!m(&[&[1.0]]).approx_equal(&m(&[&[2.0]]), 1e-9).unwrap());
        assert!(matches!(a.approx_equal(&m(&[&[1.0]]), 1e-9), Err(Error::Shape { .. })));
    }

    #[test]
    fn integer_values_names_offending_entry() {
        let a = m(&[&[1.0, 2.0 + 1e-11], &[-3.0, 0.5]]);
        assert_eq!(
            a.integer_values(),
            Err(Error::NotInteger { row: 1, col: 1, value: 0.5 })
        );
        let b = m(&[&[1.0, 2.0 + 1e-11], &[-3.0, 0.0]]);
        assert_eq!(b.integer_values().unwrap(), [1, 2, -3, 0]);
    }

    #[test]
    fn rows_read_back() {
        let a = m(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], &[7.0, 8.0, 9.0]]);
        let rows: Vec<Vec<f64>> = a.rows().map(|r| r.to_vec()).collect();
        assert_eq!(DenseMatrix::from_rows(&rows).unwrap(), a);
        assert_eq!(a.row(1), &[4.0, 5.0, 6.0]);
        assert_eq!(a.get(2, 0), 7.0);
    }
}
