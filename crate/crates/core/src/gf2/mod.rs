//! Bit-packed linear algebra over GF(2).

mod alist;
mod bitvec;
mod echelon;
mod matrix;

pub use alist::{from_alist, to_alist};
pub use bitvec::{BitVec, Word, WORD_BITS};
pub use echelon::RowEchelon;
pub use matrix::{in_row_space, BitMatrix};
