//! CSS codes from pairs of classical codes: the hypergraph product, the
//! generalized Shor product, and the QL_k family. Logical counts always
//! come from ranks; distances come from exhaustive low-weight search.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::ClassicalCode;
use crate::combinations::for_each_with_max;
use crate::error::{dim_err, Error, Result};
use crate::gf2::{BitMatrix, BitVec, RowEchelon, Word};

/// Which Pauli type a logical operator (or an error) is made of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Z,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::X => "X",
            Side::Z => "Z",
        })
    }
}

/// Result of a capped distance search: an exact value, or only the
/// knowledge that the distance exceeds the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistanceBound {
    Exact(usize),
    Above(usize),
}

impl DistanceBound {
    #[must_use]
    pub fn exact(self) -> Option<usize> {
        match self {
            Self::Exact(d) => Some(d),
            Self::Above(_) => None,
        }
    }

    /// Distance of the whole code given the two sides.
    #[must_use]
    pub fn combine(self, other: Self) -> Self {
        use DistanceBound::{Above, Exact};
        match (self, other) {
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (Exact(e), Above(b)) | (Above(b), Exact(e)) => {
                if e <= b {
                    Exact(e)
                } else {
                    Above(b)
                }
            }
            (Above(a), Above(b)) => Above(a.min(b)),
        }
    }
}

impl fmt::Display for DistanceBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(d) => write!(f, "{d}"),
            Self::Above(w) => write!(f, ">{w}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Qlk { k: usize },
    Shor { c1: String, c2: String },
    Hgp { c1: String, c2: String },
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Qlk { k } => write!(f, "QL_{k}"),
            Self::Shor { c1, c2 } => write!(f, "Shor({c1}, {c2})"),
            Self::Hgp { c1, c2 } => write!(f, "HGP({c1}, {c2})"),
            Self::Custom => f.write_str("custom"),
        }
    }
}

/// How a code was built and what was predicted for it, kept apart from
/// anything certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: Family,
    pub predicted_d: Option<usize>,
    pub notes: Vec<String>,
}

impl Provenance {
    #[must_use]
    pub fn custom() -> Self {
        Self {
            family: Family::Custom,
            predicted_d: None,
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CssCode {
    hx: BitMatrix,
    hz: BitMatrix,
    rank_x: usize,
    rank_z: usize,
    pub provenance: Provenance,
}

impl CssCode {
    /// Both matrices must have the same column count; commutation is
    /// checked separately by [`check_css`].
    pub fn new(hx: BitMatrix, hz: BitMatrix, provenance: Provenance) -> Result<Self> {
        if hx.num_cols() != hz.num_cols() {
            return dim_err(format!(
                "H_X has {} columns, H_Z has {}",
                hx.num_cols(),
                hz.num_cols()
            ));
        }
        let rank_x = hx.rank();
        let rank_z = hz.rank();
        if rank_x + rank_z > hx.num_cols() {
            return Err(Error::Precondition(format!(
                "rank(H_X) + rank(H_Z) = {} exceeds n = {}",
                rank_x + rank_z,
                hx.num_cols()
            )));
        }
        Ok(Self {
            hx,
            hz,
            rank_x,
            rank_z,
            provenance,
        })
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.hx.num_cols()
    }

    #[must_use]
    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    #[must_use]
    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    #[must_use]
    pub fn rank_x(&self) -> usize {
        self.rank_x
    }

    #[must_use]
    pub fn rank_z(&self) -> usize {
        self.rank_z
    }

    /// `n − rank(H_X) − rank(H_Z)`.
    #[must_use]
    pub fn k_logical(&self) -> usize {
        self.n() - self.rank_x - self.rank_z
    }

    /// Stabilizer matrix whose rows must commute with a logical of `side`.
    #[must_use]
    pub fn checks_for(&self, side: Side) -> &BitMatrix {
        match side {
            Side::Z => &self.hx,
            Side::X => &self.hz,
        }
    }

    /// Stabilizers of the same type as `side`; residuals in their row space
    /// act trivially.
    #[must_use]
    pub fn stabilizers_of(&self, side: Side) -> &BitMatrix {
        match side {
            Side::Z => &self.hz,
            Side::X => &self.hx,
        }
    }
}

/// `H_X·H_Zᵀ = 0`.
#[must_use]
pub fn check_css(code: &CssCode) -> bool {
    commutation_failures(code).is_empty()
}

/// 0-based `(x_row, z_row)` pairs whose generators anticommute.
#[must_use]
pub fn commutation_failures(code: &CssCode) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, xr) in code.hx.rows().iter().enumerate() {
        for (j, zr) in code.hz.rows().iter().enumerate() {
            if xr.dot(zr) {
                out.push((i, j));
            }
        }
    }
    out
}

/// `H_X = [H₁⊗I_{n₂} | I_{r₁}⊗H₂ᵀ]`, `H_Z = [I_{n₁}⊗H₂ | H₁ᵀ⊗I_{r₂}]`, with
/// `r_i` the row count of `H_i`.
pub fn hypergraph_product(c1: &ClassicalCode, c2: &ClassicalCode) -> Result<CssCode> {
    let (h1, h2) = (&c1.parity_check, &c2.parity_check);
    let (n1, n2) = (h1.num_cols(), h2.num_cols());
    let (r1, r2) = (h1.num_rows(), h2.num_rows());
    let hx = h1
        .kron(&BitMatrix::identity(n2))
        .hconcat(&BitMatrix::identity(r1).kron(&h2.transpose()))?;
    let hz = BitMatrix::identity(n1)
        .kron(h2)
        .hconcat(&h1.transpose().kron(&BitMatrix::identity(r2)))?;
    let predicted_d = match (c1.d, c2.d, c1.d_dual, c2.d_dual) {
        (Some(a), Some(b), Some(c), Some(d)) => Some(a.min(b).min(c).min(d)),
        _ => None,
    };
    CssCode::new(
        hx,
        hz,
        Provenance {
            family: Family::Hgp {
                c1: c1.name.clone(),
                c2: c2.name.clone(),
            },
            predicted_d,
            notes: Vec::new(),
        },
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HgpParameters {
    pub n: usize,
    pub k: usize,
    pub d_bound: usize,
    /// False when a check matrix has dependent rows, so `r_i` (its row
    /// count) differs from `n_i − k_i`.
    pub formula_applicable: bool,
}

/// Predicted `[[n₁n₂ + r₁r₂, k₁k₂ + k₁ᵀk₂ᵀ, min(d₁, d₂, d₁⊥, d₂⊥)]]`, where
/// `kᵢᵀ = rᵢ − rank(Hᵢ)` is the dimension of the transpose code `ker Hᵢᵀ`
/// (zero for full-rank checks).
pub fn hgp_parameters(c1: &ClassicalCode, c2: &ClassicalCode) -> Result<HgpParameters> {
    let dist = |c: &ClassicalCode| -> Result<(usize, usize)> {
        match (c.d, c.d_dual) {
            (Some(d), Some(dd)) => Ok((d, dd)),
            _ => Err(Error::Precondition(format!(
                "{} needs certified distance and dual distance",
                c.name
            ))),
        }
    };
    let (d1, dd1) = dist(c1)?;
    let (d2, dd2) = dist(c2)?;
    let (r1, r2) = (c1.parity_check.num_rows(), c2.parity_check.num_rows());
    let k_transpose = |c: &ClassicalCode| c.parity_check.num_rows() - c.parity_check.rank();
    Ok(HgpParameters {
        n: c1.n() * c2.n() + r1 * r2,
        k: c1.k() * c2.k() + k_transpose(c1) * k_transpose(c2),
        d_bound: d1.min(d2).min(dd1).min(dd2),
        formula_applicable: r1 == c1.redundancy() && r2 == c2.redundancy(),
    })
}

/// `H_X = H₁⊗I_{n₂}`, `H_Z = G₁⊗H₂`.
pub fn generalized_shor(c1: &ClassicalCode, c2: &ClassicalCode) -> Result<CssCode> {
    let hx = c1.parity_check.kron(&BitMatrix::identity(c2.n()));
    let hz = c1.generator.kron(&c2.parity_check);
    let predicted_d = c1.d.zip(c2.d).map(|(a, b)| a.min(b));
    CssCode::new(
        hx,
        hz,
        Provenance {
            family: Family::Shor {
                c1: c1.name.clone(),
                c2: c2.name.clone(),
            },
            predicted_d,
            notes: Vec::new(),
        },
    )
}

/// Note attached to QL_5, whose published parameters list `n = 120`.
pub const QL5_ERRATUM: &str =
    "erratum: the published [[120, 25, 4]] for k = 5 conflicts with n = n1*n2 = 10*15 = 150";

/// Generalized Shor product of `L_k` and `L_k^+`: `[[6k², k², d]]`.
pub fn build_qlk(k: usize) -> Result<CssCode> {
    let mut c1 = ClassicalCode::lk(k)?;
    let mut c2 = ClassicalCode::lk_plus(k)?;
    // Classical distances only feed the prediction; skip them past the cap.
    let _ = c1.certify_distance();
    let _ = c2.certify_distance();
    let mut code = generalized_shor(&c1, &c2)?;
    code.provenance.family = Family::Qlk { k };
    if k == 5 {
        code.provenance.notes.push(QL5_ERRATUM.to_string());
    }
    if code.n() != 6 * k * k || code.k_logical() != k * k {
        return Err(Error::Precondition(format!(
            "QL_{k} came out as [[{}, {}]], expected [[{}, {}]]",
            code.n(),
            code.k_logical(),
            6 * k * k,
            k * k
        )));
    }
    Ok(code)
}

/// Exhaustive search for a lowest-weight logical of one type at exactly
/// `weight`.
struct LogicalSearch {
    n: usize,
    stride: usize,
    // Column j of the check matrix occupies words[j*stride..(j+1)*stride].
    columns: Vec<Word>,
    trivial: RowEchelon,
}

impl LogicalSearch {
    fn new(code: &CssCode, side: Side) -> Self {
        let checks = code.checks_for(side).transpose();
        let stride = crate::gf2::BitVec::zeros(checks.num_cols()).words().len();
        let mut columns = Vec::with_capacity(code.n() * stride);
        for col in checks.rows() {
            columns.extend_from_slice(col.words());
        }
        Self {
            n: code.n(),
            stride,
            columns,
            trivial: code.stabilizers_of(side).echelon(),
        }
    }

    fn column(&self, j: usize) -> &[Word] {
        &self.columns[j * self.stride..(j + 1) * self.stride]
    }

    fn is_logical(&self, support: &[usize], acc: &mut [Word]) -> bool {
        acc.copy_from_slice(self.column(support[0]));
        for &j in &support[1..] {
            for (a, c) in acc.iter_mut().zip(self.column(j)) {
                *a ^= c;
            }
        }
        if acc.iter().any(|&w| w != 0) {
            return false;
        }
        let mut v = BitVec::from_support(self.n, support);
        self.trivial.reduce_in_place(&mut v);
        !v.is_zero()
    }

    /// First logical of this weight in colex order.
    fn first_at_weight(&self, weight: usize) -> Option<BitVec> {
        if weight == 0 || weight > self.n {
            return None;
        }
        (weight - 1..self.n).into_par_iter().find_map_first(|top| {
            let mut acc = vec![0; self.stride];
            let mut hit = None;
            for_each_with_max(top, weight, |s| {
                if self.is_logical(s, &mut acc) {
                    hit = Some(BitVec::from_support(self.n, s));
                    true
                } else {
                    false
                }
            });
            hit
        })
    }
}

/// A logical operator of type `side` with exactly `weight`, the first in
/// colex order, if one exists.
#[must_use]
pub fn logical_operator_witness(code: &CssCode, side: Side, weight: usize) -> Option<BitVec> {
    LogicalSearch::new(code, side).first_at_weight(weight)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub w_max: usize,
    pub d_x: DistanceBound,
    pub d_z: DistanceBound,
    pub witness_x: Option<BitVec>,
    pub witness_z: Option<BitVec>,
}

impl DistanceReport {
    #[must_use]
    pub fn d(&self) -> DistanceBound {
        self.d_x.combine(self.d_z)
    }
}

fn side_distance(code: &CssCode, side: Side, w_max: usize) -> (DistanceBound, Option<BitVec>) {
    let search = LogicalSearch::new(code, side);
    for w in 1..=w_max.min(code.n()) {
        if let Some(v) = search.first_at_weight(w) {
            return (DistanceBound::Exact(w), Some(v));
        }
    }
    (DistanceBound::Above(w_max), None)
}

/// Minimum weights of X- and Z-type logicals, searched exhaustively up to
/// `w_max`. Deterministic regardless of the rayon thread count.
pub fn css_distance(code: &CssCode, w_max: usize) -> Result<DistanceReport> {
    if w_max == 0 {
        return Err(Error::Domain("w_max must be at least 1".into()));
    }
    let (d_x, witness_x) = side_distance(code, Side::X, w_max);
    let (d_z, witness_z) = side_distance(code, Side::Z, w_max);
    Ok(DistanceReport {
        w_max,
        d_x,
        d_z,
        witness_x,
        witness_z,
    })
}

/// Paired logical operator bases: `x` rows are X-type logicals, `z` rows
/// are Z-type logicals, and `x · zᵀ = I`.
#[derive(Clone, Debug)]
pub struct LogicalOperators {
    pub x: BitMatrix,
    pub z: BitMatrix,
    /// For each X logical, a column where it alone (among the X logicals)
    /// is nonzero and every H_X echelon row vanishes.
    pub x_info_columns: Vec<usize>,
}

/// Reduced basis of `ker(checks)` modulo the row space of `stabilizers`.
fn quotient_basis(checks: &BitMatrix, stabilizers: &RowEchelon) -> Result<RowEchelon> {
    let kernel = checks.kernel_basis();
    let reduced = kernel
        .rows()
        .iter()
        .map(|v| stabilizers.reduce(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(BitMatrix::from_rows(checks.num_cols(), reduced)?.echelon())
}

pub fn logical_operators(code: &CssCode) -> Result<LogicalOperators> {
    let kl = code.k_logical();
    let lx = quotient_basis(&code.hz, &code.hx.echelon())?;
    let lz0 = quotient_basis(&code.hx, &code.hz.echelon())?;
    if lx.rank() != kl || lz0.rank() != kl {
        return Err(Error::Precondition(format!(
            "logical basis sizes {} and {} disagree with k = {kl}; is the code CSS?",
            lx.rank(),
            lz0.rank()
        )));
    }
    let x = lx.to_matrix();
    let z0 = lz0.to_matrix();
    let pairing = x.mul(&z0.transpose())?;
    let inv = pairing.inverse()?.ok_or_else(|| {
        Error::Precondition("logical pairing is singular; is the code CSS?".into())
    })?;
    let z = inv.transpose().mul(&z0)?;
    Ok(LogicalOperators {
        x,
        z,
        x_info_columns: lx.pivots().to_vec(),
    })
}
