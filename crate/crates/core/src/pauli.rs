//! n-qubit Pauli operators `i^c · M_1 ⊗ … ⊗ M_n` and their symplectic
//! images `(α | β)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{dim_err, Error, Result};
use crate::gf2::{BitMatrix, BitVec, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli1 {
    I,
    X,
    Y,
    Z,
}

impl Pauli1 {
    pub const ALL: [Pauli1; 4] = [Pauli1::I, Pauli1::X, Pauli1::Y, Pauli1::Z];

    #[must_use]
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Self::I,
            (true, false) => Self::X,
            (true, true) => Self::Y,
            (false, true) => Self::Z,
        }
    }

    #[must_use]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Self::I => (false, false),
            Self::X => (true, false),
            Self::Y => (true, true),
            Self::Z => (false, true),
        }
    }

    fn index(self) -> usize {
        match self {
            Self::I => 0,
            Self::X => 1,
            Self::Y => 2,
            Self::Z => 3,
        }
    }

    fn symbol(self) -> char {
        match self {
            Self::I => 'I',
            Self::X => 'X',
            Self::Y => 'Y',
            Self::Z => 'Z',
        }
    }
}

impl std::ops::Mul for Pauli1 {
    type Output = (Self, u8);

    /// `a · b = i^e · c`, returned as `(c, e)`.
    fn mul(self, other: Self) -> (Self, u8) {
        use Pauli1::{I, X, Y, Z};
        // Rows: left factor I, X, Y, Z. Columns: right factor in the same order.
        const TABLE: [[(Pauli1, u8); 4]; 4] = [
            [(I, 0), (X, 0), (Y, 0), (Z, 0)],
            [(X, 0), (I, 0), (Z, 1), (Y, 3)],
            [(Y, 0), (Z, 3), (I, 0), (X, 1)],
            [(Z, 0), (Y, 1), (X, 3), (I, 0)],
        ];
        TABLE[self.index()][other.index()]
    }
}

/// Exponent of `i` picked up by the product `P1 · P2` of two phase-free
/// Paulis given as packed `(x, z)` words, where `(1, 1)` stands for `Y`.
pub(crate) fn product_phase(x1: &[Word], z1: &[Word], x2: &[Word], z2: &[Word]) -> u8 {
    let mut pos = 0u32;
    let mut neg = 0u32;
    for i in 0..x1.len() {
        let (a, b, c, d) = (x1[i], z1[i], x2[i], z2[i]);
        // Cyclic X→Y→Z gives +i, the reverse order gives −i.
        pos += ((a & b & !c & d) | (a & !b & c & d) | (!a & b & c & !d)).count_ones();
        neg += ((a & b & c & !d) | (a & !b & !c & d) | (!a & b & c & d)).count_ones();
    }
    ((pos + 3 * neg) % 4) as u8
}

/// Length-`2n` symplectic vector `(α | β)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymplecticVector(BitVec);

impl SymplecticVector {
    pub fn new(bits: BitVec) -> Result<Self> {
        if !bits.len().is_multiple_of(2) {
            return dim_err(format!("symplectic vector of odd length {}", bits.len()));
        }
        Ok(Self(bits))
    }

    #[must_use]
    pub fn from_parts(x: &BitVec, z: &BitVec) -> Self {
        assert_eq!(x.len(), z.len());
        Self(x.concat(z))
    }

    #[must_use]
    pub fn num_qubits(&self) -> usize {
        self.0.len() / 2
    }

    #[must_use]
    pub fn x_part(&self) -> BitVec {
        self.0.slice(0, self.num_qubits())
    }

    #[must_use]
    pub fn z_part(&self) -> BitVec {
        self.0.slice(self.num_qubits(), self.0.len())
    }

    #[must_use]
    pub fn bits(&self) -> &BitVec {
        &self.0
    }

    /// `u · Λ · vᵀ` with `Λ = [[0, I], [I, 0]]`.
    pub fn product(&self, other: &Self) -> Result<bool> {
        symplectic_product(self, other)
    }
}

impl fmt::Display for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.x_part(), self.z_part())
    }
}

pub fn symplectic_product(u: &SymplecticVector, v: &SymplecticVector) -> Result<bool> {
    if u.0.len() != v.0.len() {
        return dim_err(format!(
            "symplectic product of lengths {} and {}",
            u.0.len(),
            v.0.len()
        ));
    }
    Ok(u.x_part().dot(&v.z_part()) ^ u.z_part().dot(&v.x_part()))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    phase_exp: u8,
    x: BitVec,
    z: BitVec,
}

impl PauliOperator {
    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            phase_exp: 0,
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_xz(x: BitVec, z: BitVec) -> Result<Self> {
        Self::with_phase(0, x, z)
    }

    pub fn with_phase(phase_exp: u8, x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return dim_err(format!("x part {} vs z part {}", x.len(), z.len()));
        }
        Ok(Self {
            phase_exp: phase_exp % 4,
            x,
            z,
        })
    }

    /// X-type Pauli with the given support.
    #[must_use]
    pub fn x_type(bits: &BitVec) -> Self {
        Self {
            phase_exp: 0,
            x: bits.clone(),
            z: BitVec::zeros(bits.len()),
        }
    }

    #[must_use]
    pub fn z_type(bits: &BitVec) -> Self {
        Self {
            phase_exp: 0,
            x: BitVec::zeros(bits.len()),
            z: bits.clone(),
        }
    }

    /// `p` acting on qubit `q` (0-based), identity elsewhere.
    #[must_use]
    pub fn single(n: usize, q: usize, p: Pauli1) -> Self {
        let mut out = Self::identity(n);
        out.set(q, p);
        out
    }

    #[must_use]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    /// `c` in the global phase `i^c`.
    #[must_use]
    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    #[must_use]
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    #[must_use]
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    #[must_use]
    pub fn get(&self, q: usize) -> Pauli1 {
        Pauli1::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli1) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    #[must_use]
    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    #[must_use]
    pub fn without_phase(&self) -> Self {
        Self {
            phase_exp: 0,
            ..self.clone()
        }
    }

    /// Symplectic image; the phase is dropped.
    #[must_use]
    pub fn phi(&self) -> SymplecticVector {
        SymplecticVector::from_parts(&self.x, &self.z)
    }

    #[must_use]
    pub fn phi_inverse(v: &SymplecticVector) -> Self {
        Self {
            phase_exp: 0,
            x: v.x_part(),
            z: v.z_part(),
        }
    }

    /// Operator product `self · other`, phases tracked through the
    /// single-qubit multiplication table.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.num_qubits() != other.num_qubits() {
            return dim_err(format!(
                "product of {}- and {}-qubit Paulis",
                self.num_qubits(),
                other.num_qubits()
            ));
        }
        let n = self.num_qubits();
        let mut out = Self::identity(n);
        let mut phase = u32::from(self.phase_exp) + u32::from(other.phase_exp);
        for q in 0..n {
            let (p, e) = self.get(q) * other.get(q);
            out.set(q, p);
            phase += u32::from(e);
        }
        out.phase_exp = (phase % 4) as u8;
        Ok(out)
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(!symplectic_product(&self.phi(), &other.phi())?)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.phase_exp {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })?;
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    /// Accepts an optional `+`, `-`, `+i` or `-i` prefix followed by
    /// `I`/`X`/`Y`/`Z` characters.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        let mut out = Self::identity(body.chars().count());
        out.phase_exp = phase;
        for (q, c) in body.chars().enumerate() {
            let p = match c {
                'I' => Pauli1::I,
                'X' => Pauli1::X,
                'Y' => Pauli1::Y,
                'Z' => Pauli1::Z,
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("unexpected Pauli symbol {other:?}"),
                    })
                }
            };
            out.set(q, p);
        }
        Ok(out)
    }
}

/// Splits an `r × 2n` stabilizer matrix `[H_X | H_Z]` into its halves.
pub fn stabilizer_matrix_split(h: &BitMatrix) -> Result<(BitMatrix, BitMatrix)> {
    h.split_halves()
}

/// `H Λ Hᵀ = H_X H_Zᵀ + H_Z H_Xᵀ`; zero iff all rows commute pairwise.
pub fn commutation_matrix(h: &BitMatrix) -> Result<BitMatrix> {
    let (hx, hz) = h.split_halves()?;
    let a = hx.mul(&hz.transpose())?;
    let b = hz.mul(&hx.transpose())?;
    let rows = a.rows().iter().zip(b.rows()).map(|(x, y)| x ^ y).collect();
    BitMatrix::from_rows(h.num_rows(), rows)
}
