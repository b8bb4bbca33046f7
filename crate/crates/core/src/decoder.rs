//! Two-stage CSS decoding with minimum-weight lookup tables, iid
//! depolarizing noise, and logical-error accounting.
//!
//! Z errors are decoded from the X-check syndrome `s_X = H_X·zᵀ` and X errors
//! from the Z-check syndrome `s_Z = H_Z·xᵀ`, independently; correlations
//! between the two halves of a Y error are not used.

use std::collections::HashMap;
use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combinations::{binomial, Colex};
use crate::css::{CssCode, Side};
use crate::error::{dim_err, Error, Result};
use crate::gf2::{BitVec, RowEchelon};
use crate::pauli::{Pauli1, PauliOperator};

/// Default limit on the number of enumerated errors per table.
pub const DEFAULT_TABLE_CAP: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syndrome {
    /// Outcomes of the X-type checks; flags Z errors.
    pub s_x: BitVec,
    /// Outcomes of the Z-type checks; flags X errors.
    pub s_z: BitVec,
}

pub fn syndrome_of(code: &CssCode, error: &PauliOperator) -> Result<Syndrome> {
    if error.num_qubits() != code.n() {
        return dim_err(format!(
            "{}-qubit error on a {}-qubit code",
            error.num_qubits(),
            code.n()
        ));
    }
    Ok(Syndrome {
        s_x: code.hx().mul_vec(error.z_bits())?,
        s_z: code.hz().mul_vec(error.x_bits())?,
    })
}

/// Syndrome → minimum-weight error for one error type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodingTable {
    /// Type of the errors stored (and corrected) by this table.
    pub error_side: Side,
    pub n: usize,
    pub syndrome_len: usize,
    entries: HashMap<BitVec, BitVec>,
}

impl DecodingTable {
    /// Enumerates every error of weight `<= t` by increasing weight, colex
    /// order within a weight; the first error reaching a syndrome keeps it.
    pub fn build(code: &CssCode, error_side: Side, t: usize, cap: u128) -> Result<Self> {
        let n = code.n();
        let needed: u128 = (0..=t.min(n)).map(|w| binomial(n, w)).sum();
        if needed > cap {
            return Err(Error::Capacity {
                what: format!("{error_side}-error lookup table at t = {t}"),
                needed,
                cap,
            });
        }
        // X errors are seen by the Z checks and vice versa.
        let checks = code.checks_for(error_side);
        let columns: Vec<BitVec> = (0..n).map(|j| checks.column(j)).collect();
        let syndrome_len = checks.num_rows();
        let mut entries = HashMap::new();
        entries.insert(BitVec::zeros(syndrome_len), BitVec::zeros(n));
        for w in 1..=t.min(n) {
            let mut it = Colex::new(n, w);
            while let Some(support) = it.next_subset() {
                let mut s = BitVec::zeros(syndrome_len);
                for &j in support {
                    s ^= &columns[j];
                }
                entries
                    .entry(s)
                    .or_insert_with(|| BitVec::from_support(n, support));
            }
        }
        Ok(Self {
            error_side,
            n,
            syndrome_len,
            entries,
        })
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[must_use]
    pub fn lookup(&self, syndrome: &BitVec) -> Option<&BitVec> {
        self.entries.get(syndrome)
    }

    /// Entries sorted by syndrome.
    #[must_use]
    pub fn sorted_entries(&self) -> Vec<(&BitVec, &BitVec)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort();
        v
    }

    /// Binary layout: `b"QLDT"`, a version byte, a side byte (0 = X, 1 = Z),
    /// `u32` n, `u32` syndrome length, `u64` entry count, then per entry a
    /// `u32`-length-prefixed key and value, each as little-endian packed
    /// bytes. All integers little-endian; entries sorted by key.
    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(b"QLDT")?;
        w.write_all(&[1, matches!(self.error_side, Side::Z) as u8])?;
        w.write_all(&(self.n as u32).to_le_bytes())?;
        w.write_all(&(self.syndrome_len as u32).to_le_bytes())?;
        w.write_all(&(self.entries.len() as u64).to_le_bytes())?;
        for (k, v) in self.sorted_entries() {
            for bits in [k, v] {
                let bytes = to_bytes(bits);
                w.write_all(&(bytes.len() as u32).to_le_bytes())?;
                w.write_all(&bytes)?;
            }
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 0,
            msg: format!("decoding table: {msg}"),
        };
        let mut magic = [0u8; 6];
        r.read_exact(&mut magic)?;
        if &magic[..4] != b"QLDT" || magic[4] != 1 {
            return Err(bad("bad magic or version"));
        }
        let error_side = match magic[5] {
            0 => Side::X,
            1 => Side::Z,
            _ => return Err(bad("bad side byte")),
        };
        let n = read_u32(r)? as usize;
        let syndrome_len = read_u32(r)? as usize;
        let count = read_u64(r)?;
        let mut entries = HashMap::new();
        for _ in 0..count {
            let key = read_bits(r, syndrome_len)?;
            let val = read_bits(r, n)?;
            if entries.insert(key, val).is_some() {
                return Err(bad("duplicate key"));
            }
        }
        Ok(Self {
            error_side,
            n,
            syndrome_len,
            entries,
        })
    }
}

fn to_bytes(v: &BitVec) -> Vec<u8> {
    let mut out: Vec<u8> = v.words().iter().flat_map(|w| w.to_le_bytes()).collect();
    out.truncate(v.len().div_ceil(8));
    out
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_bits(r: &mut impl Read, len: usize) -> Result<BitVec> {
    let nbytes = read_u32(r)? as usize;
    if nbytes != len.div_ceil(8) {
        return Err(Error::Parse {
            line: 0,
            msg: format!("record of {nbytes} bytes for {len} bits"),
        });
    }
    let mut bytes = vec![0u8; nbytes];
    r.read_exact(&mut bytes)?;
    let words = bytes
        .chunks(8)
        .map(|c| {
            let mut b = [0u8; 8];
            b[..c.len()].copy_from_slice(c);
            u64::from_le_bytes(b)
        })
        .collect();
    let v = BitVec::from_words(len, words)?;
    Ok(v)
}

/// One table per error type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LookupTables {
    pub t: usize,
    /// Keyed by `s_Z`, stores X errors.
    pub x_errors: DecodingTable,
    /// Keyed by `s_X`, stores Z errors.
    pub z_errors: DecodingTable,
}

impl LookupTables {
    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(&(self.t as u32).to_le_bytes())?;
        self.x_errors.write_to(w)?;
        self.z_errors.write_to(w)
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        let t = read_u32(r)? as usize;
        Ok(Self {
            t,
            x_errors: DecodingTable::read_from(r)?,
            z_errors: DecodingTable::read_from(r)?,
        })
    }
}

pub fn build_lookup(code: &CssCode, t: usize) -> Result<LookupTables> {
    build_lookup_with_cap(code, t, DEFAULT_TABLE_CAP)
}

pub fn build_lookup_with_cap(code: &CssCode, t: usize, cap: u128) -> Result<LookupTables> {
    Ok(LookupTables {
        t,
        x_errors: DecodingTable::build(code, Side::X, t, cap)?,
        z_errors: DecodingTable::build(code, Side::Z, t, cap)?,
    })
}

/// `t = ⌊(d−1)/2⌋`.
#[must_use]
pub fn correctable_weight(d: usize) -> usize {
    d.saturating_sub(1) / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub pauli: PauliOperator,
    /// `s_Z` missed the X-error table; no X correction applied.
    pub heralded_x: bool,
    /// `s_X` missed the Z-error table; no Z correction applied.
    pub heralded_z: bool,
}

impl Correction {
    #[must_use]
    pub fn heralded(&self) -> bool {
        self.heralded_x || self.heralded_z
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TrialVerdict {
    Success,
    LogicalX,
    LogicalZ,
    LogicalY,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub error: PauliOperator,
    pub syndrome: Syndrome,
    pub correction: Correction,
    pub residual: PauliOperator,
    pub verdict: TrialVerdict,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub shots: u64,
    pub successes: u64,
    pub fail_x: u64,
    pub fail_z: u64,
    pub fail_y: u64,
    /// Shots with a table miss on either side; they are also counted under
    /// their verdict.
    pub heralded: u64,
}

impl Summary {
    fn record(verdict: TrialVerdict, heralded: bool) -> Self {
        let mut s = Self {
            shots: 1,
            heralded: u64::from(heralded),
            ..Self::default()
        };
        match verdict {
            TrialVerdict::Success => s.successes = 1,
            TrialVerdict::LogicalX => s.fail_x = 1,
            TrialVerdict::LogicalZ => s.fail_z = 1,
            TrialVerdict::LogicalY => s.fail_y = 1,
        }
        s
    }

    fn merge(self, o: Self) -> Self {
        Self {
            shots: self.shots + o.shots,
            successes: self.successes + o.successes,
            fail_x: self.fail_x + o.fail_x,
            fail_z: self.fail_z + o.fail_z,
            fail_y: self.fail_y + o.fail_y,
            heralded: self.heralded + o.heralded,
        }
    }

    /// Fraction of shots ending in a logical error.
    #[must_use]
    pub fn logical_error_rate(&self) -> f64 {
        if self.shots == 0 {
            return 0.0;
        }
        (self.shots - self.successes) as f64 / self.shots as f64
    }

    pub const CSV_HEADER: &'static str =
        "k,n,p,shots,seed,successes,fail_x,fail_z,fail_y,heralded,rate";

    /// CSV row matching [`Summary::CSV_HEADER`]; `k` is the family
    /// parameter or empty when there is none.
    #[must_use]
    pub fn csv_row(&self, k: Option<usize>, n: usize, p: f64, seed: u64) -> String {
        format!(
            "{},{n},{p},{},{seed},{},{},{},{},{},{}",
            k.map(|k| k.to_string()).unwrap_or_default(),
            self.shots,
            self.successes,
            self.fail_x,
            self.fail_z,
            self.fail_y,
            self.heralded,
            self.logical_error_rate()
        )
    }
}

/// Decoder state shared across shots: the tables plus echelon forms of the
/// stabilizer row spaces for residual classification.
pub struct Decoder<'a> {
    code: &'a CssCode,
    tables: &'a LookupTables,
    x_stabilizers: RowEchelon,
    z_stabilizers: RowEchelon,
}

impl<'a> Decoder<'a> {
    pub fn new(code: &'a CssCode, tables: &'a LookupTables) -> Result<Self> {
        let n = code.n();
        if tables.x_errors.n != n
            || tables.z_errors.n != n
            || tables.x_errors.syndrome_len != code.hz().num_rows()
            || tables.z_errors.syndrome_len != code.hx().num_rows()
        {
            return dim_err("lookup tables were built for a different code");
        }
        Ok(Self {
            code,
            tables,
            x_stabilizers: code.hx().echelon(),
            z_stabilizers: code.hz().echelon(),
        })
    }

    pub fn decode(&self, s: &Syndrome) -> Result<Correction> {
        let n = self.code.n();
        if s.s_x.len() != self.code.hx().num_rows() || s.s_z.len() != self.code.hz().num_rows() {
            return dim_err("syndrome lengths do not match the code");
        }
        let x = self.tables.x_errors.lookup(&s.s_z);
        let z = self.tables.z_errors.lookup(&s.s_x);
        Ok(Correction {
            pauli: PauliOperator::from_xz(
                x.cloned().unwrap_or_else(|| BitVec::zeros(n)),
                z.cloned().unwrap_or_else(|| BitVec::zeros(n)),
            )?,
            heralded_x: x.is_none(),
            heralded_z: z.is_none(),
        })
    }

    /// Residuals in the stabilizer row spaces count as success.
    pub fn classify(&self, residual: &PauliOperator) -> Result<TrialVerdict> {
        let x_bad = !self.x_stabilizers.contains(residual.x_bits())?;
        let z_bad = !self.z_stabilizers.contains(residual.z_bits())?;
        Ok(match (x_bad, z_bad) {
            (false, false) => TrialVerdict::Success,
            (true, false) => TrialVerdict::LogicalX,
            (false, true) => TrialVerdict::LogicalZ,
            (true, true) => TrialVerdict::LogicalY,
        })
    }

    pub fn run_trial(&self, error: PauliOperator) -> Result<TrialRecord> {
        let syndrome = syndrome_of(self.code, &error)?;
        let correction = self.decode(&syndrome)?;
        let residual = PauliOperator::from_xz(
            error.x_bits() ^ correction.pauli.x_bits(),
            error.z_bits() ^ correction.pauli.z_bits(),
        )?;
        let verdict = self.classify(&residual)?;
        Ok(TrialRecord {
            error,
            syndrome,
            correction,
            residual,
            verdict,
        })
    }

    /// Deterministic in `(p, shots, seed)` whatever the rayon pool size:
    /// shot `i` draws from its own stream `i` of the generator keyed by
    /// `seed`.
    pub fn run_monte_carlo(&self, p: f64, shots: u64, seed: u64) -> Result<Summary> {
        check_probability(p)?;
        if shots == 0 {
            return Err(Error::Domain("shots must be at least 1".into()));
        }
        let n = self.code.n();
        (0..shots)
            .into_par_iter()
            .map(|i| {
                let mut rng = shot_rng(seed, i);
                let error = sample_with(&mut rng, n, p);
                let rec = self.run_trial(error)?;
                Ok(Summary::record(rec.verdict, rec.correction.heralded()))
            })
            .try_reduce(Summary::default, |a, b| Ok(a.merge(b)))
    }

    /// Runs every Pauli error of exactly `weight` (all `3^w·C(n, w)` of them).
    pub fn exhaustive(&self, weight: usize) -> Result<Summary> {
        let n = self.code.n();
        let supports: Vec<Vec<usize>> = {
            let mut it = Colex::new(n, weight);
            let mut v = Vec::new();
            while let Some(s) = it.next_subset() {
                v.push(s.to_vec());
            }
            v
        };
        let patterns = 3usize.pow(weight as u32);
        supports
            .par_iter()
            .map(|support| {
                let mut acc = Summary::default();
                for code in 0..patterns {
                    let mut e = PauliOperator::identity(n);
                    let mut c = code;
                    for &q in support {
                        e.set(q, [Pauli1::X, Pauli1::Y, Pauli1::Z][c % 3]);
                        c /= 3;
                    }
                    let rec = self.run_trial(e)?;
                    acc = acc.merge(Summary::record(rec.verdict, rec.correction.heralded()));
                }
                Ok(acc)
            })
            .try_reduce(Summary::default, |a, b| Ok(a.merge(b)))
    }
}

pub fn decode(code: &CssCode, tables: &LookupTables, s: &Syndrome) -> Result<Correction> {
    Decoder::new(code, tables)?.decode(s)
}

pub fn run_monte_carlo(
    code: &CssCode,
    tables: &LookupTables,
    p: f64,
    shots: u64,
    seed: u64,
) -> Result<Summary> {
    Decoder::new(code, tables)?.run_monte_carlo(p, shots, seed)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

fn shot_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn sample_with(rng: &mut impl Rng, n: usize, p: f64) -> PauliOperator {
    let mut e = PauliOperator::identity(n);
    for q in 0..n {
        if rng.random::<f64>() < p {
            e.set(q, [Pauli1::X, Pauli1::Y, Pauli1::Z][rng.random_range(0..3)]);
        }
    }
    e
}

/// iid depolarizing error: each qubit is `I` with probability `1 − p` and
/// `X`, `Y`, `Z` with probability `p/3` each.
pub fn sample_depolarizing(n: usize, p: f64, seed: u64) -> Result<PauliOperator> {
    check_probability(p)?;
    Ok(sample_with(&mut shot_rng(seed, 0), n, p))
}
