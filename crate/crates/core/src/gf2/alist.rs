//! LDPC `alist` sparse layout: `N M` (columns, rows), the maximum column and
//! row degrees, the per-column and per-row degree lists, then the 1-based
//! row indices of every column followed by the column indices of every row.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::bitvec::BitVec;
use super::matrix::BitMatrix;

fn join(items: impl IntoIterator<Item = usize>) -> String {
    items
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[must_use]
pub fn to_alist(m: &BitMatrix) -> String {
    let t = m.transpose();
    let col_deg = t.row_weights();
    let row_deg = m.row_weights();
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", m.num_cols(), m.num_rows());
    let _ = writeln!(
        s,
        "{} {}",
        col_deg.iter().copied().max().unwrap_or(0),
        row_deg.iter().copied().max().unwrap_or(0)
    );
    let _ = writeln!(s, "{}", join(col_deg));
    let _ = writeln!(s, "{}", join(row_deg));
    for col in t.rows() {
        let _ = writeln!(s, "{}", join(col.iter_ones().map(|i| i + 1)));
    }
    for row in m.rows() {
        let _ = writeln!(s, "{}", join(row.iter_ones().map(|i| i + 1)));
    }
    s
}

/// Parses an alist file. Zero entries used by some writers to pad index
/// lists to the maximum degree are ignored; the row lists are
/// cross-checked against the column lists.
pub fn from_alist(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines().enumerate();
    let mut next_nums = |what: &str| -> Result<(usize, Vec<usize>)> {
        let (idx, line) = lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unexpected end of input reading {what}"),
        })?;
        let nums = line
            .split_whitespace()
            .map(str::parse::<usize>)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                line: idx + 1,
                msg: format!("{what}: {e}"),
            })?;
        Ok((idx + 1, nums))
    };
    let (line, dims) = next_nums("dimensions")?;
    let [ncols, nrows] = dims[..] else {
        return Err(Error::Parse {
            line,
            msg: "expected \"N M\"".into(),
        });
    };
    next_nums("maximum degrees")?;
    let (line, col_deg) = next_nums("column degrees")?;
    if col_deg.len() != ncols {
        return Err(Error::Parse {
            line,
            msg: format!("expected {ncols} column degrees"),
        });
    }
    let (line, row_deg) = next_nums("row degrees")?;
    if row_deg.len() != nrows {
        return Err(Error::Parse {
            line,
            msg: format!("expected {nrows} row degrees"),
        });
    }
    let mut rows = vec![BitVec::zeros(ncols); nrows];
    for (c, &deg) in col_deg.iter().enumerate() {
        let (line, idx) = next_nums("column list")?;
        let idx: Vec<usize> = idx.into_iter().filter(|&v| v != 0).collect();
        if idx.len() != deg || idx.iter().any(|&r| r > nrows) {
            return Err(Error::Parse {
                line,
                msg: format!("column {} list does not match degree {deg}", c + 1),
            });
        }
        for r in idx {
            rows[r - 1].set(c, true);
        }
    }
    for (r, &deg) in row_deg.iter().enumerate() {
        let (line, idx) = next_nums("row list")?;
        let mut idx: Vec<usize> = idx.into_iter().filter(|&v| v != 0).map(|v| v - 1).collect();
        idx.sort_unstable();
        if idx.len() != deg || idx != rows[r].support() {
            return Err(Error::Parse {
                line,
                msg: format!("row {} list disagrees with the column lists", r + 1),
            });
        }
    }
    BitMatrix::from_rows(ncols, rows)
}
