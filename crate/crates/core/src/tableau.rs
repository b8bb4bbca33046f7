//! Stabilizer tableau simulation (destabilizer/stabilizer frame with sign
//! bits) for H, X, Z, CNOT and CZ circuits, and encoder verification.

use crate::css::{logical_operators, CssCode};
use crate::encoder::{Circuit, Gate};
use crate::error::{dim_err, Error, Result};
use crate::gf2::{BitMatrix, BitVec, Word, WORD_BITS};
use crate::pauli::{product_phase, PauliOperator};

/// Membership of a signed Pauli in the stabilizer group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `P` is in the group.
    Yes,
    /// `−P` is in the group.
    Anti,
    /// Neither: `P` anticommutes with some stabilizer or is not Hermitian.
    No,
}

/// Rows `0..n` are destabilizers, rows `n..2n` stabilizers.
#[derive(Clone, Debug)]
pub struct Tableau {
    n: usize,
    stride: usize,
    x: Vec<Word>,
    z: Vec<Word>,
    sign: Vec<bool>,
}

impl Tableau {
    /// `|0…0⟩`: stabilizers `Z_j`, destabilizers `X_j`.
    pub fn zero_state(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a tableau needs at least one qubit".into()));
        }
        let stride = n.div_ceil(WORD_BITS);
        let mut t = Self {
            n,
            stride,
            x: vec![0; 2 * n * stride],
            z: vec![0; 2 * n * stride],
            sign: vec![false; 2 * n],
        };
        for q in 0..n {
            let (w, b) = (q / WORD_BITS, 1 << (q % WORD_BITS));
            t.x[q * stride + w] |= b;
            t.z[(n + q) * stride + w] |= b;
        }
        Ok(t)
    }

    #[must_use]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    fn row_x(&self, r: usize) -> &[Word] {
        &self.x[r * self.stride..(r + 1) * self.stride]
    }

    fn row_z(&self, r: usize) -> &[Word] {
        &self.z[r * self.stride..(r + 1) * self.stride]
    }

    fn row_pauli(&self, r: usize) -> PauliOperator {
        let x = BitVec::from_words(self.n, self.row_x(r).to_vec()).expect("stride matches n");
        let z = BitVec::from_words(self.n, self.row_z(r).to_vec()).expect("stride matches n");
        PauliOperator::with_phase(if self.sign[r] { 2 } else { 0 }, x, z).expect("equal lengths")
    }

    #[must_use]
    pub fn stabilizers(&self) -> Vec<PauliOperator> {
        (self.n..2 * self.n).map(|r| self.row_pauli(r)).collect()
    }

    #[must_use]
    pub fn destabilizers(&self) -> Vec<PauliOperator> {
        (0..self.n).map(|r| self.row_pauli(r)).collect()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::Domain(format!(
                "qubit {} out of range for {} qubits",
                q + 1,
                self.n
            )));
        }
        Ok(())
    }

    #[inline]
    fn bit(words: &[Word], r: usize, stride: usize, q: usize) -> bool {
        (words[r * stride + q / WORD_BITS] >> (q % WORD_BITS)) & 1 == 1
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        let s = self.stride;
        match *gate {
            Gate::H(q) => {
                self.check_qubit(q)?;
                let (w, m) = (q / WORD_BITS, 1 << (q % WORD_BITS));
                for r in 0..2 * self.n {
                    let (xi, zi) = (r * s + w, r * s + w);
                    let xb = self.x[xi] & m;
                    let zb = self.z[zi] & m;
                    if xb != 0 && zb != 0 {
                        self.sign[r] ^= true;
                    }
                    if (xb != 0) != (zb != 0) {
                        self.x[xi] ^= m;
                        self.z[zi] ^= m;
                    }
                }
            }
            Gate::X(q) => {
                self.check_qubit(q)?;
                for r in 0..2 * self.n {
                    if Self::bit(&self.z, r, s, q) {
                        self.sign[r] ^= true;
                    }
                }
            }
            Gate::Z(q) => {
                self.check_qubit(q)?;
                for r in 0..2 * self.n {
                    if Self::bit(&self.x, r, s, q) {
                        self.sign[r] ^= true;
                    }
                }
            }
            Gate::Cnot { control, target } => {
                self.check_qubit(control)?;
                self.check_qubit(target)?;
                if control == target {
                    return Err(Error::Domain("CNOT control equals target".into()));
                }
                let (wc, mc) = (control / WORD_BITS, 1 << (control % WORD_BITS));
                let (wt, mt) = (target / WORD_BITS, 1 << (target % WORD_BITS));
                for r in 0..2 * self.n {
                    let xc = self.x[r * s + wc] & mc != 0;
                    let zc = self.z[r * s + wc] & mc != 0;
                    let xt = self.x[r * s + wt] & mt != 0;
                    let zt = self.z[r * s + wt] & mt != 0;
                    if xc && zt && (xt == zc) {
                        self.sign[r] ^= true;
                    }
                    if xc {
                        self.x[r * s + wt] ^= mt;
                    }
                    if zt {
                        self.z[r * s + wc] ^= mc;
                    }
                }
            }
            Gate::Cz(a, b) => {
                self.apply(&Gate::H(b))?;
                self.apply(&Gate::Cnot {
                    control: a,
                    target: b,
                })?;
                self.apply(&Gate::H(b))?;
            }
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() != self.n {
            return dim_err(format!(
                "circuit on {} qubits applied to {} qubits",
                circuit.num_qubits(),
                self.n
            ));
        }
        for (i, g) in circuit.gates().iter().enumerate() {
            self.apply(g)?;
            debug_assert!(
                (i + 1) % 64 != 0 || self.invariants_hold(),
                "tableau invariants broken after gate {}",
                i + 1
            );
        }
        Ok(())
    }

    fn anticommutes_with_row(&self, r: usize, x: &[Word], z: &[Word]) -> bool {
        let (rx, rz) = (self.row_x(r), self.row_z(r));
        let mut acc = 0u32;
        for i in 0..self.stride {
            acc ^= ((rx[i] & z[i]) ^ (rz[i] & x[i])).count_ones();
        }
        acc & 1 == 1
    }

    /// Decides whether `p` (with its sign) belongs to the stabilizer group.
    pub fn is_stabilized(&self, p: &PauliOperator) -> Result<Verdict> {
        if p.num_qubits() != self.n {
            return dim_err(format!(
                "{}-qubit Pauli against a {}-qubit tableau",
                p.num_qubits(),
                self.n
            ));
        }
        if p.phase_exp() % 2 == 1 {
            return Ok(Verdict::No);
        }
        let (px, pz) = (p.x_bits().words(), p.z_bits().words());
        if (self.n..2 * self.n).any(|r| self.anticommutes_with_row(r, px, pz)) {
            return Ok(Verdict::No);
        }
        // p = ± product of the stabilizers whose destabilizer partner
        // anticommutes with p.
        let mut acc_x = vec![0; self.stride];
        let mut acc_z = vec![0; self.stride];
        let mut phase: u32 = 0;
        for i in 0..self.n {
            if !self.anticommutes_with_row(i, px, pz) {
                continue;
            }
            let r = self.n + i;
            phase += product_phase(&acc_x, &acc_z, self.row_x(r), self.row_z(r)) as u32;
            if self.sign[r] {
                phase += 2;
            }
            for w in 0..self.stride {
                acc_x[w] ^= self.row_x(r)[w];
                acc_z[w] ^= self.row_z(r)[w];
            }
        }
        if acc_x != px || acc_z != pz {
            return Ok(Verdict::No);
        }
        Ok(if (phase % 4) as u8 == p.phase_exp() {
            Verdict::Yes
        } else {
            Verdict::Anti
        })
    }

    /// Stabilizers pairwise commute and, together with the destabilizers,
    /// form a symplectic basis of rank `2n`.
    #[must_use]
    pub fn invariants_hold(&self) -> bool {
        for a in self.n..2 * self.n {
            for b in a + 1..2 * self.n {
                if self.anticommutes_with_row(a, self.row_x(b), self.row_z(b)) {
                    return false;
                }
            }
        }
        let rows = (0..2 * self.n)
            .map(|r| {
                let p = self.row_pauli(r);
                p.x_bits().concat(p.z_bits())
            })
            .collect();
        BitMatrix::from_rows(2 * self.n, rows)
            .map(|m| m.rank() == 2 * self.n)
            .unwrap_or(false)
    }
}

/// Outcome of running an encoder on one logical basis input. Row indices
/// are 0-based.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EncodingReport {
    pub failing_x_rows: Vec<usize>,
    pub failing_z_rows: Vec<usize>,
    /// Logical Z operators whose eigenvalue disagrees with the input bit.
    pub failing_logicals: Vec<usize>,
}

impl EncodingReport {
    /// Every H_X and H_Z generator stabilizes the output state.
    #[must_use]
    pub fn passed(&self) -> bool {
        self.failing_x_rows.is_empty() && self.failing_z_rows.is_empty()
    }

    /// Stabilizers pass and every logical Z eigenvalue matches the input.
    #[must_use]
    pub fn logicals_ok(&self) -> bool {
        self.passed() && self.failing_logicals.is_empty()
    }
}

/// Prepares `|x⟩` on the first `k_logical` qubits (X gates on the ones),
/// `|0⟩` elsewhere, runs `circuit`, and checks every generator of the code
/// and every paired logical Z.
pub fn verify_encoding(
    circuit: &Circuit,
    code: &CssCode,
    logical_input: &BitVec,
) -> Result<EncodingReport> {
    if circuit.num_qubits() != code.n() {
        return dim_err(format!(
            "circuit has {} qubits, code has {}",
            circuit.num_qubits(),
            code.n()
        ));
    }
    if logical_input.len() != code.k_logical() {
        return dim_err(format!(
            "logical input of length {} for k = {}",
            logical_input.len(),
            code.k_logical()
        ));
    }
    let mut t = Tableau::zero_state(code.n())?;
    for q in logical_input.iter_ones() {
        t.apply(&Gate::X(q))?;
    }
    t.apply_circuit(circuit)?;
    let mut report = EncodingReport::default();
    for (i, row) in code.hx().rows().iter().enumerate() {
        if t.is_stabilized(&PauliOperator::x_type(row))? != Verdict::Yes {
            report.failing_x_rows.push(i);
        }
    }
    for (i, row) in code.hz().rows().iter().enumerate() {
        if t.is_stabilized(&PauliOperator::z_type(row))? != Verdict::Yes {
            report.failing_z_rows.push(i);
        }
    }
    if code.k_logical() > 0 {
        let logicals = logical_operators(code)?;
        for (j, row) in logicals.z.rows().iter().enumerate() {
            let want = if logical_input.get(j) {
                Verdict::Anti
            } else {
                Verdict::Yes
            };
            if t.is_stabilized(&PauliOperator::z_type(row))? != want {
                report.failing_logicals.push(j);
            }
        }
    }
    Ok(report)
}
