//! The classical codes `L_k = [2k, k]` and `L_k^+ = [3k, k]`, their duals,
//! and exact minimum-distance certification by codeword enumeration.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

/// Largest dimension for which codewords are enumerated (`2^24` words).
pub const ENUMERATION_CAP: usize = 24;

/// True iff `0 <= f(i) <= i - 1` for every 1-based position `i`.
#[must_use]
pub fn is_sub_exceeding(f: &[i64]) -> bool {
    f.iter().enumerate().all(|(i, &v)| v >= 0 && v <= i as i64)
}

/// The `k×k` matrix with zeros on the diagonal and ones elsewhere.
#[must_use]
pub fn build_gk(k: usize) -> BitMatrix {
    let rows = (0..k)
        .map(|i| {
            let mut r = BitVec::from_support(k, &(0..k).collect::<Vec<_>>());
            r.set(i, false);
            r
        })
        .collect();
    BitMatrix::from_rows(k, rows).expect("rows have length k")
}

/// A binary linear code with a generator and a parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCode {
    pub name: String,
    pub generator: BitMatrix,
    pub parity_check: BitMatrix,
    /// Certified minimum distance.
    pub d: Option<usize>,
    /// Certified minimum distance of the dual code.
    pub d_dual: Option<usize>,
}

impl fmt::Display for ClassicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}, {}", self.name, self.n(), self.k())?;
        if let Some(d) = self.d {
            write!(f, ", {d}")?;
        }
        f.write_str("]")
    }
}

fn check_k(k: usize, family: &str) -> Result<()> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "{family} is defined for k >= 3, got {k}"
        )));
    }
    Ok(())
}

impl ClassicalCode {
    /// Validates `G·Hᵀ = 0` and the ranks before accepting the pair.
    pub fn new(
        name: impl Into<String>,
        generator: BitMatrix,
        parity_check: BitMatrix,
    ) -> Result<Self> {
        let n = generator.num_cols();
        if parity_check.num_cols() != n {
            return Err(Error::Dimension(format!(
                "generator has {n} columns, parity check has {}",
                parity_check.num_cols()
            )));
        }
        if !generator.mul(&parity_check.transpose())?.is_zero() {
            return Err(Error::Precondition("G·Hᵀ is not zero".into()));
        }
        let k = generator.num_rows();
        if generator.rank() != k {
            return Err(Error::Precondition("generator rows are dependent".into()));
        }
        if parity_check.rank() != n - k {
            return Err(Error::Precondition(format!(
                "parity check rank is {}, expected n - k = {}",
                parity_check.rank(),
                n - k
            )));
        }
        Ok(Self {
            name: name.into(),
            generator,
            parity_check,
            d: None,
            d_dual: None,
        })
    }

    /// `L_k`: generator `[I_k | G_k]`, parity check `[G_k | I_k]`.
    pub fn lk(k: usize) -> Result<Self> {
        check_k(k, "L_k")?;
        let gk = build_gk(k);
        let id = BitMatrix::identity(k);
        Self::new(format!("L_{k}"), id.hconcat(&gk)?, gk.hconcat(&id)?)
    }

    /// `L_k^+`: generator `[I_k | G_k | I_k]`, parity check
    /// `[[G_k, I_k, 0], [I_k, 0, I_k]]`.
    ///
    /// Accepts `k = 3`, which the QL_3 distance claim relies on.
    pub fn lk_plus(k: usize) -> Result<Self> {
        check_k(k, "L_k^+")?;
        let gk = build_gk(k);
        let id = BitMatrix::identity(k);
        let zero = BitMatrix::zeros(k, k);
        let generator = id.hconcat(&gk)?.hconcat(&id)?;
        let top = gk.hconcat(&id)?.hconcat(&zero)?;
        let bottom = id.hconcat(&zero)?.hconcat(&id)?;
        Self::new(format!("L_{k}^+"), generator, top.vconcat(&bottom)?)
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.generator.num_cols()
    }

    #[must_use]
    pub fn k(&self) -> usize {
        self.generator.num_rows()
    }

    /// `r = n - k`.
    #[must_use]
    pub fn redundancy(&self) -> usize {
        self.n() - self.k()
    }

    /// Generator and parity check swapped; distances swap too.
    #[must_use]
    pub fn dual(&self) -> Self {
        Self {
            name: format!("{}^perp", self.name),
            generator: self.parity_check.clone(),
            parity_check: self.generator.clone(),
            d: self.d_dual,
            d_dual: self.d,
        }
    }

    /// All `2^k` codewords `m·G`, messages in lexicographic order with the
    /// first message bit most significant.
    pub fn codewords(&self) -> Result<Codewords<'_>> {
        let k = self.k();
        if k > ENUMERATION_CAP {
            return Err(Error::Capacity {
                what: format!("codeword enumeration of {}", self.name),
                needed: 1u128 << k,
                cap: 1u128 << ENUMERATION_CAP,
            });
        }
        Ok(Codewords {
            code: self,
            next: 0,
            end: 1u64 << k,
        })
    }

    /// Exact minimum nonzero codeword weight.
    pub fn min_distance(&self) -> Result<usize> {
        min_weight_of_span(&self.generator, &self.name)
    }

    /// Certifies the distance and records it in `d`.
    pub fn certify_distance(&mut self) -> Result<usize> {
        let d = self.min_distance()?;
        self.d = Some(d);
        Ok(d)
    }

    /// Certifies both the code and dual distances.
    pub fn certify(&mut self) -> Result<(usize, usize)> {
        let d = self.certify_distance()?;
        let dd = self.dual().min_distance()?;
        self.d_dual = Some(dd);
        Ok((d, dd))
    }
}

/// Minimum weight over the nonzero vectors of the row space of `g`
/// (whose rows must be independent). Walks the messages in Gray-code order
/// so each step is one row addition.
fn min_weight_of_span(g: &BitMatrix, name: &str) -> Result<usize> {
    let k = g.num_rows();
    if k > ENUMERATION_CAP {
        return Err(Error::Capacity {
            what: format!("distance enumeration of {name}"),
            needed: 1u128 << k,
            cap: 1u128 << ENUMERATION_CAP,
        });
    }
    let mut word = BitVec::zeros(g.num_cols());
    let mut best = usize::MAX;
    for step in 1u64..(1u64 << k) {
        word ^= g.row(step.trailing_zeros() as usize);
        best = best.min(word.weight());
    }
    if best == usize::MAX {
        return Err(Error::Domain(format!("{name} has no nonzero codeword")));
    }
    Ok(best)
}

pub struct Codewords<'a> {
    code: &'a ClassicalCode,
    next: u64,
    end: u64,
}

impl Iterator for Codewords<'_> {
    type Item = BitVec;

    fn next(&mut self) -> Option<BitVec> {
        if self.next == self.end {
            return None;
        }
        let msg = self.next;
        self.next += 1;
        let k = self.code.k();
        let mut word = BitVec::zeros(self.code.n());
        for i in 0..k {
            if (msg >> (k - 1 - i)) & 1 == 1 {
                word ^= self.code.generator.row(i);
            }
        }
        Some(word)
    }
}
