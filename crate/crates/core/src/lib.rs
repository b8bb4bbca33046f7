//! Construction, certification, encoding and decoding tools for the QL_k
//! family of CSS quantum codes built from the classical codes `L_k` and
//! `L_k^+`.

pub mod classical;
pub mod combinations;
pub mod css;
pub mod decoder;
pub mod encoder;
pub mod error;
pub mod gf2;
pub mod pauli;
pub mod tableau;

pub use classical::ClassicalCode;
pub use css::{CssCode, DistanceBound, Family, Provenance, Side};
pub use encoder::{Circuit, Gate};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use pauli::PauliOperator;
pub use tableau::Tableau;
