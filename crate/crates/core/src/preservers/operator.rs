use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::StochMatrix;
use crate::seq::NonNegVector;
use crate::{Error, Result};

/// Sparse `rows × cols` truncation of a positive operator. Only strictly
/// positive entries are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), f64>,
}

impl TruncatedOperator {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter("truncation must be at least 1 x 1"));
        }
        Ok(Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        })
    }

    /// Builds from `(row, col, value)` triples; later triples overwrite
    /// earlier ones at the same position.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut op = Self::zeros(rows, cols)?;
        for (i, j, v) in entries {
            op.set(i, j, v)?;
        }
        Ok(op)
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DataLength {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Self::from_entries(
            rows,
            cols,
            data.iter()
                .enumerate()
                .map(|(k, &v)| (k / cols, k % cols, v)),
        )
    }

    pub fn from_matrix(m: &StochMatrix) -> Self {
        Self::from_dense(m.n(), m.n(), m.data()).expect("square matrix data is consistent")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        if i >= self.rows {
            return Err(Error::OutsideTruncation {
                index: i,
                size: self.rows,
            });
        }
        if j >= self.cols {
            return Err(Error::OutsideTruncation {
                index: j,
                size: self.cols,
            });
        }
        if !value.is_finite() {
            return Err(Error::NonFinite {
                index: i * self.cols + j,
            });
        }
        if value < 0.0 {
            return Err(Error::NegativeEntry {
                index: i * self.cols + j,
                value,
            });
        }
        if value > 0.0 {
            self.entries.insert((i, j), value);
        } else {
            self.entries.remove(&(i, j));
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0.0)
    }

    /// Stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Positive entries of row `i` as `(col, value)`.
    pub fn row_entries(&self, i: usize) -> Vec<(usize, f64)> {
        self.entries
            .range((i, 0)..(i + 1, 0))
            .map(|(&(_, j), &v)| (j, v))
            .collect()
    }

    /// Positive values of column `j`, in row order.
    pub fn column_values(&self, j: usize) -> Vec<f64> {
        self.entries
            .iter()
            .filter(|(&(_, c), _)| c == j)
            .map(|(_, &v)| v)
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.cols]; self.rows];
        for (&(i, j), &v) in &self.entries {
            out[i][j] = v;
        }
        out
    }

    /// `Tf` truncated to `rows`; `f` must have dimension `cols`.
    pub fn apply(&self, f: &NonNegVector) -> Result<NonNegVector> {
        if f.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: f.dim(),
            });
        }
        let mut out = vec![0.0; self.rows];
        for (&(i, j), &v) in &self.entries {
            out[i] += v * f[j];
        }
        NonNegVector::new(out)
    }

    pub fn sup_distance(&self, other: &TruncatedOperator) -> f64 {
        let mut d: f64 = 0.0;
        for (&(i, j), &v) in &self.entries {
            d = d.max((v - other.get(i, j)).abs());
        }
        for (&(i, j), &v) in &other.entries {
            d = d.max((v - self.get(i, j)).abs());
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_storage_drops_zeros() {
        let op = TruncatedOperator::from_dense(2, 3, &[0.0, 1.0, 0.0, 2.0, 0.0, 0.5]).unwrap();
        assert_eq!(op.nnz(), 3);
        assert_eq!(op.row_entries(1), vec![(0, 2.0), (2, 0.5)]);
        assert_eq!(op.column_values(0), vec![2.0]);
        let f = NonNegVector::new(vec![1.0, 1.0, 2.0]).unwrap();
        assert_eq!(op.apply(&f).unwrap().values(), &[1.0, 3.0]);
        assert_eq!(op.to_dense()[1], vec![2.0, 0.0, 0.5]);
    }

    #[test]
    fn set_validates_positions() {
        let mut op = TruncatedOperator::zeros(2, 2).unwrap();
        assert!(op.set(2, 0, 1.0).is_err());
        assert!(op.set(0, 0, -1.0).is_err());
        op.set(0, 0, 1.0).unwrap();
        op.set(0, 0, 0.0).unwrap();
        assert_eq!(op.nnz(), 0);
        assert!(TruncatedOperator::zeros(0, 3).is_err());
    }
}
