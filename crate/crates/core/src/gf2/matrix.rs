use std::fmt;
use std::str::FromStr;

use crate::error::{dim_err, Error, Result};

use super::bitvec::BitVec;
use super::echelon::RowEchelon;

/// Dense binary matrix over GF(2), stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from explicit rows, all of which must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return dim_err(format!("row {i} has length {}, expected {cols}", r.len()));
        }
        Ok(Self { cols, rows })
    }

    /// Convenience constructor from rows of 0/1 integers. Panics on ragged input.
    #[must_use]
    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                BitVec::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>())
            })
            .collect();
        Self { cols, rows }
    }

    #[inline]
    #[must_use]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    #[must_use]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    #[must_use]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    #[inline]
    #[must_use]
    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    #[must_use]
    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    #[must_use]
    pub fn into_rows(self) -> Vec<BitVec> {
        self.rows
    }

    #[must_use]
    pub fn column(&self, c: usize) -> BitVec {
        let mut col = BitVec::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(c) {
                col.set(r, true);
            }
        }
        col
    }

    #[must_use]
    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(BitVec::weight).collect()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                out.rows[c].set(r, true);
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        if self.num_rows() != other.num_rows() {
            return dim_err(format!(
                "hconcat of {} rows with {} rows",
                self.num_rows(),
                other.num_rows()
            ));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.concat(b))
            .collect();
        Ok(Self {
            cols: self.cols + other.cols,
            rows,
        })
    }

    /// Stacks `other` below `self`.
    pub fn vconcat(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return dim_err(format!(
                "vconcat of {} columns with {} columns",
                self.cols, other.cols
            ));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self {
            cols: self.cols,
            rows,
        })
    }

    #[must_use]
    pub fn block_diag(&self, other: &Self) -> Self {
        let left = self
            .hconcat(&Self::zeros(self.num_rows(), other.cols))
            .expect("row counts agree by construction");
        let right = Self::zeros(other.num_rows(), self.cols)
            .hconcat(other)
            .expect("row counts agree by construction");
        left.vconcat(&right)
            .expect("column counts agree by construction")
    }

    /// GF(2) product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.num_rows() {
            return dim_err(format!(
                "product of {}x{} by {}x{}",
                self.num_rows(),
                self.cols,
                other.num_rows(),
                other.cols
            ));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(other.cols);
                for k in row.iter_ones() {
                    acc ^= &other.rows[k];
                }
                acc
            })
            .collect();
        Ok(Self {
            cols: other.cols,
            rows,
        })
    }

    /// `self · vᵀ`, one output bit per row.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return dim_err(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            ));
        }
        let mut out = BitVec::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Kronecker product with the left factor varying slowest: entry
    /// `(i·rows_b + s, j·cols_b + t)` is `a[i][j] · b[s][t]`.
    #[must_use]
    pub fn kron(&self, other: &Self) -> Self {
        let cols = self.cols * other.cols;
        let mut rows = Vec::with_capacity(self.num_rows() * other.num_rows());
        for a_row in &self.rows {
            for b_row in &other.rows {
                let mut out = BitVec::zeros(cols);
                for j in a_row.iter_ones() {
                    for t in b_row.iter_ones() {
                        out.set(j * other.cols + t, true);
                    }
                }
                rows.push(out);
            }
        }
        Self { cols, rows }
    }

    #[must_use]
    pub fn echelon(&self) -> RowEchelon {
        RowEchelon::new(self)
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of `{v : self · vᵀ = 0}`, one basis vector per row.
    #[must_use]
    pub fn kernel_basis(&self) -> Self {
        self.echelon().kernel_basis()
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        let n = self.num_rows();
        if n != self.cols {
            return dim_err(format!("inverse of non-square {}x{}", n, self.cols));
        }
        let aug = self.hconcat(&Self::identity(n))?.echelon();
        if aug.pivots().iter().take_while(|&&p| p < n).count() < n {
            return Ok(None);
        }
        let rows = aug.rows().iter().map(|r| r.slice(n, 2 * n)).collect();
        Ok(Some(Self { cols: n, rows }))
    }

    /// Left and right column halves; the column count must be even.
    pub fn split_halves(&self) -> Result<(Self, Self)> {
        if !self.cols.is_multiple_of(2) {
            return dim_err(format!("cannot split {} columns in half", self.cols));
        }
        let h = self.cols / 2;
        let (left, right) = self
            .rows
            .iter()
            .map(|r| (r.slice(0, h), r.slice(h, self.cols)))
            .unzip();
        Ok((
            Self {
                cols: h,
                rows: left,
            },
            Self {
                cols: h,
                rows: right,
            },
        ))
    }
}

/// Whether `v` lies in the row space of `m`.
pub fn in_row_space(m: &BitMatrix, v: &BitVec) -> Result<bool> {
    m.echelon().contains(v)
}

/// Plain-text layout: a `"<rows> <cols>"` header, then one line of `0`/`1`
/// characters per row.
impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.num_rows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.num_rows(), self.cols)?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{row}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse {
                line: 1,
                msg: format!("bad header {header:?}: {e}"),
            })?;
        let [nrows, ncols] = dims[..] else {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header must be \"<rows> <cols>\", got {header:?}"),
            });
        };
        let mut rows = Vec::with_capacity(nrows);
        for (idx, line) in lines {
            if rows.len() == nrows {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: "more rows than declared".into(),
                });
            }
            let line = line.trim_end_matches('\r');
            if line.len() != ncols || !line.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected {ncols} characters of 0/1"),
                });
            }
            rows.push(line.parse::<BitVec>()?);
        }
        if rows.len() != nrows {
            return Err(Error::Parse {
                line: nrows + 1,
                msg: format!("declared {nrows} rows, found {}", rows.len()),
            });
        }
        Ok(Self { cols: ncols, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g3() -> BitMatrix {
        BitMatrix::from_dense(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
    }

    #[test]
    fn identity_shapes() {
        let e = BitMatrix::identity(0);
        assert_eq!((e.num_rows(), e.num_cols()), (0, 0));
        assert_eq!(
            BitMatrix::identity(2),
            BitMatrix::from_dense(&[&[1, 0], &[0, 1]])
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(5).rank(), 5);
        assert_eq!(g3().rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        let k = BitMatrix::identity(3).kernel_basis();
        assert_eq!((k.num_rows(), k.num_cols()), (0, 3));
        let k = BitMatrix::from_dense(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, BitMatrix::from_dense(&[&[1, 1]]));
    }

    #[test]
    fn row_space_membership() {
        let id = BitMatrix::identity(3);
        assert!(in_row_space(&id, &"010".parse().unwrap()).unwrap());
        let m = BitMatrix::from_dense(&[&[1, 1, 0]]);
        assert!(!in_row_space(&m, &"001".parse().unwrap()).unwrap());
        assert!(matches!(
            in_row_space(&m, &"01".parse().unwrap()),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn kron_block_structure() {
        let k = BitMatrix::identity(2).kron(&BitMatrix::from_dense(&[&[1, 1]]));
        assert_eq!(k, BitMatrix::from_dense(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]));
    }

    #[test]
    fn concat_and_block_diag() {
        assert_eq!(
            BitMatrix::identity(1).block_diag(&BitMatrix::identity(1)),
            BitMatrix::identity(2)
        );
        assert!(BitMatrix::identity(2)
            .hconcat(&BitMatrix::identity(3))
            .is_err());
        assert!(BitMatrix::identity(2).mul(&BitMatrix::identity(3)).is_err());
        // 0-row and 0-column matrices act as identities for concatenation.
        let a = g3();
        assert_eq!(a.hconcat(&BitMatrix::zeros(3, 0)).unwrap(), a);
        assert_eq!(a.vconcat(&BitMatrix::zeros(0, 3)).unwrap(), a);
    }

    #[test]
    fn inverse_of_g4_and_singular_g3() {
        let g4 =
            BitMatrix::from_dense(&[&[0, 1, 1, 1], &[1, 0, 1, 1], &[1, 1, 0, 1], &[1, 1, 1, 0]]);
        let inv = g4.inverse().unwrap().unwrap();
        assert_eq!(g4.mul(&inv).unwrap(), BitMatrix::identity(4));
        assert!(g3().inverse().unwrap().is_none());
    }

    #[test]
    fn split_halves_examples() {
        let (a, b) = BitMatrix::zeros(2, 0).split_halves().unwrap();
        assert_eq!((a.num_cols(), b.num_cols()), (0, 0));
        assert!(BitMatrix::zeros(1, 3).split_halves().is_err());
    }

    #[test]
    fn text_format() {
        let m = g3();
        let text = m.to_string();
        assert_eq!(text, "3 3\n011\n101\n110\n");
        assert_eq!(text.parse::<BitMatrix>().unwrap(), m);
        assert!("2 3\n011\n".parse::<BitMatrix>().is_err());
        assert!("1 3\n0121\n".parse::<BitMatrix>().is_err());
        let empty: BitMatrix = "0 5\n".parse().unwrap();
        assert_eq!((empty.num_rows(), empty.num_cols()), (0, 5));
    }
}
