use crate::error::{dim_err, Result};

use super::bitvec::BitVec;
use super::matrix::BitMatrix;

/// Reduced row-echelon form of a binary matrix.
///
/// Pivots are chosen column by column, left to right, taking the lowest
/// remaining row index with a one in that column, so the reduced form is
/// reproducible. Only the nonzero rows are kept.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    cols: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    #[must_use]
    pub fn new(m: &BitMatrix) -> Self {
        let cols = m.num_cols();
        let mut rows: Vec<BitVec> = m.rows().to_vec();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows.len() {
                break;
            }
            let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    *row ^= &pivot_row;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        Self { cols, rows, pivots }
    }

    #[inline]
    #[must_use]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// Nonzero rows of the reduced form.
    #[must_use]
    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    /// Pivot column of each reduced row, strictly increasing.
    #[must_use]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    #[must_use]
    pub fn to_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.cols, self.rows.clone()).expect("rows share the column count")
    }

    /// Reduces `v` against the row space: the result has zeros in every pivot
    /// column and differs from `v` by a row-space element.
    pub fn reduce(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return dim_err(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            ));
        }
        let mut out = v.clone();
        self.reduce_in_place(&mut out);
        Ok(out)
    }

    pub(crate) fn reduce_in_place(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                *v ^= row;
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Basis of the null space, one vector per free column in increasing order.
    #[must_use]
    pub fn kernel_basis(&self) -> BitMatrix {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let basis = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::unit(self.cols, free);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        BitMatrix::from_rows(self.cols, basis).expect("basis vectors have the column count")
    }
}
