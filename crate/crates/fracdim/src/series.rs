//! Sample containers: equally spaced series on [0,1] and lattices on the unit square.

use crate::error::{FdError, Result};

/// An equally spaced 1D sample path over the unit interval.
///
/// `values[i]` is the process value at time i/n, i = 0..=n, where n is the
/// grid divisor (so the sample count is n + 1).
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    values: Vec<f64>,
}

impl Series {
    /// Builds a series, rejecting NaN/infinite entries and lengths below 2.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(FdError::SeriesTooShort { required: 2, actual: values.len() });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(FdError::NonFinite { index });
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Grid divisor n; samples sit at i/n for i = 0..=n.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    /// Number of samples n_s = n + 1.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a constructed series always has >= 2 samples
    }

    /// Copy of the block `[start, start + width)` as a standalone series.
    pub fn slice(&self, start: usize, width: usize) -> Result<Self> {
        if start + width > self.values.len() || width < 2 {
            return Err(FdError::WindowTooLarge { width, len: self.values.len() });
        }
        Ok(Self { values: self.values[start..start + width].to_vec() })
    }

    pub(crate) fn from_unchecked(values: Vec<f64>) -> Self {
        debug_assert!(values.len() >= 2 && values.iter().all(|v| v.is_finite()));
        Self { values }
    }
}

/// An equally spaced 2D lattice sample over the unit square.
///
/// Entry (i1, i2) is the process value at (i1/n1, i2/n2); row-major storage
/// with (n1 + 1) rows and (n2 + 1) columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    values: Vec<f64>,
    rows: usize,
    cols: usize,
}

impl Grid {
    /// Builds a grid from row-major values; at least 2x2, all entries finite.
    pub fn new(values: Vec<f64>, rows: usize, cols: usize) -> Result<Self> {
        if rows < 2 || cols < 2 {
            return Err(FdError::InvalidParameters(format!(
                "grid must be at least 2x2, got {rows}x{cols}"
            )));
        }
        if values.len() != rows * cols {
            return Err(FdError::InvalidParameters(format!(
                "value count {} does not match {rows}x{cols}",
                values.len()
            )));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(FdError::NonFinite { index });
        }
        Ok(Self { values, rows, cols })
    }

    /// Builds a grid from a list of equal-length rows.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(FdError::InvalidParameters("ragged rows in grid input".into()));
        }
        Self::new(rows.into_iter().flatten().collect(), nrows, ncols)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Divisor along the first (row) axis.
    pub fn n1(&self) -> usize {
        self.rows - 1
    }

    /// Divisor along the second (column) axis.
    pub fn n2(&self) -> usize {
        self.cols - 1
    }

    #[inline]
    pub fn get(&self, i1: usize, i2: usize) -> f64 {
        self.values[i1 * self.cols + i2]
    }

    /// Row i1 as a series over the second axis.
    pub fn row_series(&self, i1: usize) -> Series {
        Series::from_unchecked(self.values[i1 * self.cols..(i1 + 1) * self.cols].to_vec())
    }

    /// Column i2 as a series over the first axis.
    pub fn col_series(&self, i2: usize) -> Series {
        Series::from_unchecked((0..self.rows).map(|i1| self.get(i1, i2)).collect())
    }

    pub fn transpose(&self) -> Grid {
        let mut values = Vec::with_capacity(self.values.len());
        for i2 in 0..self.cols {
            for i1 in 0..self.rows {
                values.push(self.get(i1, i2));
            }
        }
        Grid { values, rows: self.cols, cols: self.rows }
    }

    pub(crate) fn from_unchecked(values: Vec<f64>, rows: usize, cols: usize) -> Self {
        debug_assert_eq!(values.len(), rows * cols);
        Self { values, rows, cols }
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }
}
