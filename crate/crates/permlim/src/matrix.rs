//! Square matrices with entries in [0,1].
//!
//! `SquareMatrix<T>` is the shared carrier for weighted permutations,
//! partition matrices, blow-ups, and grid-permuton CDFs. Entries are indexed
//! 1-based to match the row/column conventions used throughout the crate.

use num::{BigRational, Zero};

use crate::error::{Error, Result};
use crate::numeric::to_f64;

#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    order: usize,
    entries: Vec<T>, // row-major
}

/// Exact-rational matrix; the default representation for everything parsed
/// from files or derived from permutations.
pub type GeneralMatrix = SquareMatrix<BigRational>;

/// f64 mirror used by the large-instance metric paths.
pub type MatrixF64 = SquareMatrix<f64>;

impl<T> SquareMatrix<T> {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry (i, j), both 1-based.
    pub fn get(&self, i: usize, j: usize) -> &T {
        debug_assert!(i >= 1 && i <= self.order && j >= 1 && j <= self.order);
        &self.entries[(i - 1) * self.order + (j - 1)]
    }

    pub fn row(&self, i: usize) -> &[T] {
        debug_assert!(i >= 1 && i <= self.order);
        &self.entries[(i - 1) * self.order..i * self.order]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn from_rows_unchecked(rows: Vec<Vec<T>>) -> Self {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            debug_assert_eq!(row.len(), order);
            entries.extend(row);
        }
        SquareMatrix { order, entries }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 1..=order {
            for j in 1..=order {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { order, entries }
    }
}

impl GeneralMatrix {
    /// Builds a matrix from rows, checking squareness and the [0,1] range.
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::argument("matrix must have at least one row"));
        }
        let one = BigRational::from_integer(1.into());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::argument(format!(
                    "row {} has {} entries, expected {} (square matrix)",
                    i + 1,
                    row.len(),
                    order
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if v < &BigRational::zero() || v > &one {
                    return Err(Error::argument(format!(
                        "entry ({}, {}) = {} outside [0, 1]",
                        i + 1,
                        j + 1,
                        v
                    )));
                }
            }
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    pub fn to_f64(&self) -> MatrixF64 {
        SquareMatrix {
            order: self.order,
            entries: self.entries.iter().map(to_f64).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    #[test]
    fn rejects_out_of_range_and_ragged() {
        assert!(GeneralMatrix::new(vec![vec![ratio(3, 2)]]).is_err());
        assert!(GeneralMatrix::new(vec![vec![ratio(1, 2), ratio(1, 2)]]).is_err());
        assert!(GeneralMatrix::new(vec![]).is_err());
        let m = GeneralMatrix::new(vec![
            vec![ratio(0, 1), ratio(1, 2)],
            vec![ratio(1, 4), ratio(1, 1)],
        ])
        .unwrap();
        assert_eq!(m.get(2, 1), &ratio(1, 4));
    }
}
