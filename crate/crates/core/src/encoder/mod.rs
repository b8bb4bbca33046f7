//! Encoding circuits for CSS codes, with the QL_k register layout and the
//! H_X support rules of `H_{L_k} ⊗ I_{3k}`.

mod circuit;

use std::ops::RangeInclusive;

pub use circuit::{Circuit, CircuitFormat, Gate};

use crate::css::{check_css, logical_operators, CssCode};
use crate::error::{Error, Result};

/// Logical inputs occupy qubits `1..=k_logical`; every other qubit starts
/// in `|0⟩`. Ranges are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegisterLayout {
    pub n: usize,
    pub k_logical: usize,
}

impl RegisterLayout {
    #[must_use]
    pub fn for_code(code: &CssCode) -> Self {
        Self {
            n: code.n(),
            k_logical: code.k_logical(),
        }
    }

    /// `n = 6k²` qubits with `k²` logical inputs.
    #[must_use]
    pub fn qlk(k: usize) -> Self {
        Self {
            n: 6 * k * k,
            k_logical: k * k,
        }
    }

    #[must_use]
    pub fn logical_block(&self) -> RangeInclusive<usize> {
        1..=self.k_logical
    }

    #[must_use]
    pub fn ancilla_block(&self) -> RangeInclusive<usize> {
        self.k_logical + 1..=self.n
    }
}

fn check_row(k: usize, i: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::Domain(format!("QL_k needs k >= 3, got {k}")));
    }
    if i == 0 || i > 3 * k * k {
        return Err(Error::Domain(format!(
            "row {i} outside 1..={} for k = {k}",
            3 * k * k
        )));
    }
    Ok(())
}

/// 1-based support of row `i` of `H_X = H_{L_k} ⊗ I_{3k}`, read off the
/// Kronecker structure: row `i` sits in block row `a = (i-1) / 3k` at offset
/// `s = (i-1) mod 3k`, and `H_{L_k}` row `a` is `[G_k row a | e_a]`.
pub fn hx_support(k: usize, i: usize) -> Result<Vec<usize>> {
    check_row(k, i)?;
    let block = 3 * k;
    let (a, s) = ((i - 1) / block, (i - 1) % block);
    let mut out: Vec<usize> = (0..k)
        .filter(|&b| b != a)
        .map(|b| b * block + s + 1)
        .collect();
    out.push((k + a) * block + s + 1);
    Ok(out)
}

/// The same support from the published index rules: positions
/// `j = i - m·3k` and `j = i + m·3k` (`1 <= m <= k-1`, `j` within the first
/// `3k²` qubits) together with `j = 3k² + i`.
pub fn hx_support_by_index_rule(k: usize, i: usize) -> Result<Vec<usize>> {
    check_row(k, i)?;
    let block = 3 * k;
    let half = 3 * k * k;
    let mut out = Vec::with_capacity(k);
    for m in (1..k).rev() {
        if i > m * block {
            out.push(i - m * block);
        }
    }
    for m in 1..k {
        if i + m * block <= half {
            out.push(i + m * block);
        }
    }
    out.push(half + i);
    Ok(out)
}

/// Literal transcription of the published fan-out procedure, one
/// Hadamard-rooted CNOT fan-out per H_X row:
///
/// * `i <= 3k`: root `3k + i`, targets `m·3k + i` for `m = 2..=k-1`, then
///   `3k² + i`;
/// * `i > 3k`: root `i - 3k`, targets `m·3k + i` for `m >= 2` while
///   `<= 3k²`, then `3k² + i`.
///
/// Rows past the first block do not fan out over their full support, so
/// the result is not expected to encode QL_k; see [`crate::tableau::verify_encoding`].
pub fn paper_circuit(k: usize) -> Result<Circuit> {
    if k < 3 {
        return Err(Error::Domain(format!("QL_k needs k >= 3, got {k}")));
    }
    let block = 3 * k;
    let half = 3 * k * k;
    let mut c = Circuit::new(6 * k * k);
    for i in 1..=half {
        let (root, targets): (usize, Vec<usize>) = if i <= block {
            (block + i, (2..k).map(|m| m * block + i).collect())
        } else {
            (
                i - block,
                (2..)
                    .map(|m| m * block + i)
                    .take_while(|&j| j <= half)
                    .collect(),
            )
        };
        c.push(Gate::H(root - 1))?;
        for t in targets.into_iter().chain(std::iter::once(half + i)) {
            c.cnot(root - 1, t - 1)?;
        }
    }
    Ok(c)
}

/// Encoder built from the reduced echelon forms of the code:
///
/// 1. SWAPs (three CNOTs each) move logical input `j` from qubit `j` to the
///    information column of the `j`-th X logical;
/// 2. each information qubit fans out over its X logical;
/// 3. each echelon row of H_X gets a Hadamard on its pivot (its
///    lowest-index qubit) and a CNOT fan-out over the rest of its support.
///
/// Pivot columns of H_X are untouched by steps 1–2, so step 3 acts on
/// `|0⟩` roots and produces the uniform superposition over the X
/// stabilizer cosets.
pub fn standard_form_encoder(code: &CssCode) -> Result<Circuit> {
    if !check_css(code) {
        return Err(Error::Precondition("H_X·H_Zᵀ is not zero".into()));
    }
    let n = code.n();
    let kl = code.k_logical();
    let mut c = Circuit::new(n);
    if kl > 0 {
        let logicals = logical_operators(code)?;
        // position[j] = qubit currently holding logical input j.
        let mut position: Vec<usize> = (0..kl).collect();
        let mut holder: Vec<Option<usize>> = vec![None; n];
        for (j, h) in holder.iter_mut().take(kl).enumerate() {
            *h = Some(j);
        }
        for (j, &info) in logicals.x_info_columns.iter().enumerate() {
            let from = position[j];
            if from == info {
                continue;
            }
            c.swap(from, info)?;
            let displaced = holder[info];
            holder[info] = Some(j);
            holder[from] = displaced;
            position[j] = info;
            if let Some(d) = displaced {
                position[d] = from;
            }
        }
        for (row, &info) in logicals.x.rows().iter().zip(&logicals.x_info_columns) {
            for t in row.iter_ones().filter(|&t| t != info) {
                c.cnot(info, t)?;
            }
        }
    }
    let echelon = code.hx().echelon();
    for (row, &pivot) in echelon.rows().iter().zip(echelon.pivots()) {
        c.push(Gate::H(pivot))?;
        for t in row.iter_ones().filter(|&t| t != pivot) {
            c.cnot(pivot, t)?;
        }
    }
    Ok(c)
}
