use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Compressed-row sparse matrix: one sorted `(column, value)` list per row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<Vec<(usize, f64)>>,
}

impl SparseMatrix {
    /// Validates that every row has strictly increasing in-range column indices
    /// and finite values.
    pub fn new(n_cols: usize, rows: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            for (pos, &(j, v)) in row.iter().enumerate() {
                if j >= n_cols {
                    return Err(Error::InvalidArgument(format!(
                        "row {i}: column {j} out of range for {n_cols} columns"
                    )));
                }
                if pos > 0 && row[pos - 1].0 >= j {
                    return Err(Error::InvalidArgument(format!(
                        "row {i}: column indices not strictly increasing at {j}"
                    )));
                }
                if !v.is_finite() {
                    return Err(Error::InvalidArgument(format!("row {i}: non-finite value")));
                }
            }
        }
        Ok(Self { n_rows: rows.len(), n_cols, rows })
    }

    pub fn from_dense(m: &super::DenseMatrix) -> Self {
        let rows = (0..m.rows())
            .map(|i| m.row(i).iter().enumerate().filter(|(_, v)| **v != 0.0).map(|(j, v)| (j, *v)).collect())
            .collect();
        Self { n_rows: m.rows(), n_cols: m.cols(), rows }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[(usize, f64)]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        self.rows[i].iter().map(|&(j, v)| v * x[j]).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n_cols);
        (0..self.n_rows).map(|i| self.row_dot(i, x)).collect()
    }

    pub fn tr_mul_vec(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.n_rows);
        let mut out = vec![0.0; self.n_cols];
        for (row, yi) in self.rows.iter().zip(y) {
            for &(j, v) in row {
                out[j] += v * yi;
            }
        }
        out
    }

    pub fn to_dense(&self) -> super::DenseMatrix {
        let mut m = super::DenseMatrix::zeros(self.n_rows, self.n_cols);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                m[(i, j)] = v;
            }
        }
        m
    }
}
