use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{l1_norm, Real};

/// An `n × N` matrix of observations with column labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample<T = f64> {
    rows: Vec<Vec<T>>,
    column_names: Vec<String>,
}

impl<T: Real> Sample<T> {
    pub fn new(rows: Vec<Vec<T>>, column_names: Vec<String>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("sample must contain at least one row"));
        }
        Self::with_rows(rows, column_names)
    }

    /// Columns named `x1, x2, ...`.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dims = rows.first().map(Vec::len).unwrap_or(0);
        Self::new(rows, default_names(dims))
    }

    /// Like [`Sample::new`] but allows zero rows (e.g. after quadrant restriction).
    pub(crate) fn with_rows(rows: Vec<Vec<T>>, column_names: Vec<String>) -> Result<Self> {
        let dims = column_names.len();
        if dims < 2 {
            return Err(Error::invalid(format!("sample needs at least 2 columns, got {dims}")));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dims {
                return Err(Error::DimensionMismatch { expected: dims, got: r.len() });
            }
            if r.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid(format!("row {i} has a non-finite entry")));
            }
        }
        Ok(Self { rows, column_names })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn dims(&self) -> usize {
        self.column_names.len()
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        self.rows
    }

    pub fn l1_norms(&self) -> Vec<T> {
        self.rows.iter().map(|r| l1_norm(r)).collect()
    }

    /// Rows at the given indices, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Result<Self> {
        let rows = indices
            .iter()
            .map(|&i| {
                self.rows
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::invalid(format!("row index {i} out of range for n={}", self.n())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_rows(rows, self.column_names.clone())
    }

    /// Columns at the given indices.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        if let Some(&j) = cols.iter().find(|&&j| j >= self.dims()) {
            return Err(Error::invalid(format!("column index {j} out of range for N={}", self.dims())));
        }
        let rows = self.rows.iter().map(|r| cols.iter().map(|&j| r[j]).collect()).collect();
        let names = cols.iter().map(|&j| self.column_names[j].clone()).collect();
        Self::with_rows(rows, names)
    }

    pub fn map_values(&self, f: impl Fn(T) -> T) -> Result<Self> {
        let rows = self.rows.iter().map(|r| r.iter().map(|&v| f(v)).collect()).collect();
        Self::with_rows(rows, self.column_names.clone())
    }

    /// Converts every entry to another scalar type.
    pub fn cast<U: Real>(&self) -> Result<Sample<U>> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| U::from_f64(v.as_f64()).unwrap_or_else(U::nan)).collect())
            .collect();
        Sample::with_rows(rows, self.column_names.clone())
    }
}

pub(crate) fn default_names(dims: usize) -> Vec<String> {
    (1..=dims).map(|j| format!("x{j}")).collect()
}
