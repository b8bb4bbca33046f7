//! Independent reference implementations shared by the integration tests
//! and the acceptance runner. Nothing here calls into the algorithms under
//! test except for type conversions.

#![allow(dead_code)]

use num_complex::Complex64;
use qlk_core::gf2::BitMatrix;
use qlk_core::pauli::Pauli1;
use qlk_core::tableau::Verdict;
use qlk_core::{Gate, PauliOperator, Tableau};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const G_L4: &str = "4 8
10000111
01001011
00101101
00011110
";

pub const H_L4: &str = "4 8
01111000
10110100
11010010
11100001
";

pub const H_L4_PLUS: &str = "8 12
011110000000
101101000000
110100100000
111000010000
100000001000
010000000100
001000000010
000100000001
";

pub const G_L5_PLUS: &str = "5 15
100000111110000
010001011101000
001001101100100
000101110100010
000011111000001
";

pub const G_4: &str = "4 4
0111
1011
1101
1110
";

pub const G_5: &str = "5 5
01111
10111
11011
11101
11110
";

/// The sixteen codewords of `L_4` in the order they are listed.
pub const L4_CODEWORDS: [&str; 16] = [
    "0000 0000",
    "0001 1110",
    "0010 1101",
    "0100 1011",
    "1000 0111",
    "0011 0011",
    "0101 0101",
    "1001 1001",
    "0110 0110",
    "1010 1010",
    "1100 1100",
    "0111 1000",
    "1011 0100",
    "1101 0010",
    "1110 0001",
    "1111 1111",
];

/// `ZZII`, `IZZI`, `IIZZ` and their symplectic images.
pub const G1: &str = "ZZII";
pub const G2: &str = "IZZI";
pub const G3: &str = "IIZZ";
pub const PHI_G1: &str = "0000 1100";
pub const PHI_G2: &str = "0000 0110";
pub const PHI_G3: &str = "0000 0011";
pub const H_SYMPLECTIC: &str = "3 8
00001100
00000110
00000011
";

// ---------------------------------------------------------------------------
// Dense GF(2) reference

pub type Dense = Vec<Vec<u8>>;

pub fn dense(m: &BitMatrix) -> Dense {
    (0..m.num_rows())
        .map(|r| (0..m.num_cols()).map(|c| u8::from(m.get(r, c))).collect())
        .collect()
}

pub fn dense_rank(m: &Dense, cols: usize) -> usize {
    let mut a = m.clone();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] == 1) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && a[r][c] == 1 {
                let pivot = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn dense_mul(a: &Dense, b: &Dense, inner: usize, cols: usize) -> Dense {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0, |acc, t| acc ^ (row[t] & b[t][j])))
                .collect()
        })
        .collect()
}

pub fn dense_kron(a: &Dense, b: &Dense) -> Dense {
    let mut out = Vec::new();
    for ra in a {
        for rb in b {
            out.push(
                ra.iter()
                    .flat_map(|&x| rb.iter().map(move |&y| x & y))
                    .collect(),
            );
        }
    }
    out
}

/// Minimum nonzero weight of the span of `rows`, by plain subset sums.
pub fn dense_min_weight(rows: &Dense) -> usize {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    (1u64..1 << k)
        .map(|m| {
            (0..n)
                .filter(|&j| {
                    (0..k).fold(0, |acc, i| acc ^ (((m >> i) & 1) as u8 & rows[i][j])) == 1
                })
                .count()
        })
        .min()
        .unwrap_or(0)
}

// ---------------------------------------------------------------------------
// Complex matrices for Paulis

pub type CMatrix = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_matrix(p: Pauli1) -> CMatrix {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match p {
        Pauli1::I => vec![vec![o, z], vec![z, o]],
        Pauli1::X => vec![vec![z, o], vec![o, z]],
        Pauli1::Y => vec![vec![z, -i], vec![i, z]],
        Pauli1::Z => vec![vec![o, z], vec![z, -o]],
    }
}

fn ckron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = Vec::new();
    for ra in a {
        for rb in b {
            out.push(
                ra.iter()
                    .flat_map(|&x| rb.iter().map(move |&y| x * y))
                    .collect(),
            );
        }
    }
    out
}

pub fn cmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = b[0].len();
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

pub fn capprox_eq(a: &CMatrix, b: &CMatrix) -> bool {
    a.iter()
        .zip(b)
        .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| (x - y).norm() < 1e-9))
}

/// Full `2^n × 2^n` matrix of `i^c P_1 ⊗ … ⊗ P_n` (qubit 0 leftmost).
pub fn operator_matrix(p: &PauliOperator) -> CMatrix {
    let mut m = vec![vec![c(1.0, 0.0)]];
    for q in 0..p.num_qubits() {
        m = ckron(&m, &pauli_matrix(p.get(q)));
    }
    let phase = c(0.0, 1.0).powu(u32::from(p.phase_exp()));
    m.iter()
        .map(|r| r.iter().map(|x| x * phase).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// State-vector simulator. Basis index bit `q` is the value of qubit `q`.

pub struct StateVector {
    pub n: usize,
    pub amp: Vec<Complex64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eigen {
    Plus,
    Minus,
    Neither,
}

impl StateVector {
    pub fn zero(n: usize) -> Self {
        let mut amp = vec![c(0.0, 0.0); 1 << n];
        amp[0] = c(1.0, 0.0);
        Self { n, amp }
    }

    pub fn apply(&mut self, g: &Gate) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match *g {
            Gate::H(q) => {
                let m = 1 << q;
                for b in 0..self.amp.len() {
                    if b & m == 0 {
                        let (a0, a1) = (self.amp[b], self.amp[b | m]);
                        self.amp[b] = (a0 + a1) * s;
                        self.amp[b | m] = (a0 - a1) * s;
                    }
                }
            }
            Gate::X(q) => {
                let m = 1 << q;
                for b in 0..self.amp.len() {
                    if b & m == 0 {
                        self.amp.swap(b, b | m);
                    }
                }
            }
            Gate::Z(q) => {
                for (b, a) in self.amp.iter_mut().enumerate() {
                    if b >> q & 1 == 1 {
                        *a = -*a;
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let (mc, mt) = (1 << control, 1 << target);
                for b in 0..self.amp.len() {
                    if b & mc != 0 && b & mt == 0 {
                        self.amp.swap(b, b | mt);
                    }
                }
            }
            Gate::Cz(a, b2) => {
                for (b, x) in self.amp.iter_mut().enumerate() {
                    if b >> a & 1 == 1 && b >> b2 & 1 == 1 {
                        *x = -*x;
                    }
                }
            }
        }
    }

    /// `P|ψ⟩` applied qubit by qubit.
    pub fn apply_pauli(&self, p: &PauliOperator) -> Vec<Complex64> {
        let i = c(0.0, 1.0);
        let mut out = vec![c(0.0, 0.0); self.amp.len()];
        for (b, &a) in self.amp.iter().enumerate() {
            let mut target = b;
            let mut coeff = i.powu(u32::from(p.phase_exp()));
            for q in 0..self.n {
                let bit = b >> q & 1;
                match p.get(q) {
                    Pauli1::I => {}
                    Pauli1::X => target ^= 1 << q,
                    Pauli1::Z => {
                        if bit == 1 {
                            coeff = -coeff;
                        }
                    }
                    Pauli1::Y => {
                        target ^= 1 << q;
                        coeff *= if bit == 0 { i } else { -i };
                    }
                }
            }
            out[target] += coeff * a;
        }
        out
    }

    pub fn eigen(&self, p: &PauliOperator) -> Eigen {
        let v = self.apply_pauli(p);
        let close = |sign: f64| {
            v.iter()
                .zip(&self.amp)
                .all(|(x, y)| (x - y * sign).norm() < 1e-9)
        };
        if close(1.0) {
            Eigen::Plus
        } else if close(-1.0) {
            Eigen::Minus
        } else {
            Eigen::Neither
        }
    }
}

/// All `4^n` phase-free Paulis on `n` qubits.
pub fn all_paulis(n: usize) -> Vec<PauliOperator> {
    (0..4usize.pow(n as u32))
        .map(|mut code| {
            let mut p = PauliOperator::identity(n);
            for q in 0..n {
                p.set(q, Pauli1::ALL[code % 4]);
                code /= 4;
            }
            p
        })
        .collect()
}

/// Every gate available on `n` qubits.
pub fn gate_alphabet(n: usize) -> Vec<Gate> {
    let mut g = Vec::new();
    for q in 0..n {
        g.extend([Gate::H(q), Gate::X(q), Gate::Z(q)]);
    }
    for a in 0..n {
        for b in 0..n {
            if a != b {
                g.push(Gate::Cnot {
                    control: a,
                    target: b,
                });
                if a < b {
                    g.push(Gate::Cz(a, b));
                }
            }
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Tableau versus state vector

fn expected(e: Eigen) -> Verdict {
    match e {
        Eigen::Plus => Verdict::Yes,
        Eigen::Minus => Verdict::Anti,
        Eigen::Neither => Verdict::No,
    }
}

/// Compares every Pauli on `n` qubits, with phases `+1`, `-1` and `+i`.
pub fn compare_states(
    t: &Tableau,
    sv: &StateVector,
    paulis: &[PauliOperator],
) -> Result<(), String> {
    for p in paulis {
        for phase in [0u8, 1, 2] {
            let q =
                PauliOperator::with_phase(phase, p.x_bits().clone(), p.z_bits().clone()).unwrap();
            let got = t.is_stabilized(&q).map_err(|e| e.to_string())?;
            let want = expected(sv.eigen(&q));
            if got != want {
                return Err(format!("{q}: tableau {got:?}, state vector {want:?}"));
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn exhaustive_from(
    n: usize,
    depth: usize,
    alphabet: &[Gate],
    paulis: &[PauliOperator],
    t: &Tableau,
    sv: &StateVector,
    prefix: &mut Vec<Gate>,
    checked: &mut usize,
) -> Result<(), String> {
    compare_states(t, sv, paulis).map_err(|e| format!("after {prefix:?}: {e}"))?;
    *checked += 1;
    if prefix.len() == depth {
        return Ok(());
    }
    for g in alphabet {
        let mut t2 = t.clone();
        t2.apply(g).map_err(|e| e.to_string())?;
        let mut sv2 = StateVector {
            n,
            amp: sv.amp.clone(),
        };
        sv2.apply(g);
        prefix.push(*g);
        exhaustive_from(n, depth, alphabet, paulis, &t2, &sv2, prefix, checked)?;
        prefix.pop();
    }
    Ok(())
}

/// Every circuit over the full gate alphabet with at most `depth` gates.
pub fn exhaustive_soundness(n: usize, depth: usize) -> Result<usize, String> {
    let alphabet = gate_alphabet(n);
    let paulis = all_paulis(n);
    let mut checked = 0;
    exhaustive_from(
        n,
        depth,
        &alphabet,
        &paulis,
        &Tableau::zero_state(n).unwrap(),
        &StateVector::zero(n),
        &mut Vec::new(),
        &mut checked,
    )?;
    Ok(checked)
}

/// Seeded random circuits of exactly `depth` gates, compared after every gate.
pub fn random_soundness(
    n: usize,
    depth: usize,
    circuits: usize,
    seed: u64,
) -> Result<usize, String> {
    let alphabet = gate_alphabet(n);
    let paulis = all_paulis(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..circuits {
        let mut t = Tableau::zero_state(n).unwrap();
        let mut sv = StateVector::zero(n);
        let mut gates = Vec::new();
        for _ in 0..depth {
            let g = alphabet[rng.random_range(0..alphabet.len())];
            gates.push(g);
            t.apply(&g).map_err(|e| e.to_string())?;
            sv.apply(&g);
            compare_states(&t, &sv, &paulis).map_err(|e| format!("after {gates:?}: {e}"))?;
        }
        if !t.invariants_hold() {
            return Err(format!("tableau invariants broken after {gates:?}"));
        }
    }
    Ok(circuits)
}

/// The soundness family: n = 1 exhaustive to 8 gates, n = 2 exhaustive to
/// 5 gates, n = 3 and n = 4 with seeded random 8-gate circuits.
pub fn soundness_family() -> Result<usize, String> {
    Ok(exhaustive_soundness(1, 8)?
        + exhaustive_soundness(2, 5)?
        + random_soundness(3, 8, 400, 3)?
        + random_soundness(4, 8, 200, 4)?)
}
