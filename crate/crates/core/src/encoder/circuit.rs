use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A Clifford gate on 0-based qubit indices. Text formats are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
}

impl Gate {
    fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::X(q) | Gate::Z(q) => (q, None),
            Gate::Cnot { control, target } => (control, Some(target)),
            Gate::Cz(a, b) => (a, Some(b)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitFormat {
    /// `qubits <n>` header, then `H q`, `X q`, `Z q`, `CX c t`, `CZ a b`, 1-based.
    Native,
    /// OpenQASM 2 style gate list over `qreg q[n]`, 0-based as usual for QASM.
    QasmLike,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    #[must_use]
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
        }
    }

    #[must_use]
    pub fn num_qubits(&self) -> usize {
        self.n_qubits
    }

    #[must_use]
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate after validating its indices.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let (a, b) = gate.qubits();
        for q in std::iter::once(a).chain(b) {
            if q >= self.n_qubits {
                return Err(Error::Domain(format!(
                    "qubit {} out of range 1..={}",
                    q + 1,
                    self.n_qubits
                )));
            }
        }
        if b == Some(a) {
            return Err(Error::Domain(format!(
                "two-qubit gate on the same qubit {}",
                a + 1
            )));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub(crate) fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.push(Gate::Cnot { control, target })
    }

    /// SWAP as three CNOTs.
    pub(crate) fn swap(&mut self, a: usize, b: usize) -> Result<()> {
        self.cnot(a, b)?;
        self.cnot(b, a)?;
        self.cnot(a, b)
    }

    #[must_use]
    pub fn export(&self, format: CircuitFormat) -> String {
        let mut s = String::new();
        match format {
            CircuitFormat::Native => {
                let _ = writeln!(s, "qubits {}", self.n_qubits);
                for g in &self.gates {
                    let _ = match *g {
                        Gate::H(q) => writeln!(s, "H {}", q + 1),
                        Gate::X(q) => writeln!(s, "X {}", q + 1),
                        Gate::Z(q) => writeln!(s, "Z {}", q + 1),
                        Gate::Cnot { control, target } => {
                            writeln!(s, "CX {} {}", control + 1, target + 1)
                        }
                        Gate::Cz(a, b) => writeln!(s, "CZ {} {}", a + 1, b + 1),
                    };
                }
            }
            CircuitFormat::QasmLike => {
                s.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
                let _ = writeln!(s, "qreg q[{}];", self.n_qubits);
                for g in &self.gates {
                    let _ = match *g {
                        Gate::H(q) => writeln!(s, "h q[{q}];"),
                        Gate::X(q) => writeln!(s, "x q[{q}];"),
                        Gate::Z(q) => writeln!(s, "z q[{q}];"),
                        Gate::Cnot { control, target } => {
                            writeln!(s, "cx q[{control}],q[{target}];")
                        }
                        Gate::Cz(a, b) => writeln!(s, "cz q[{a}],q[{b}];"),
                    };
                }
            }
        }
        s
    }

    /// Parses either text format, detected from the first non-empty line.
    pub fn parse(text: &str) -> Result<Self> {
        let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        if first.trim_start().starts_with("OPENQASM") {
            parse_qasm(text)
        } else {
            parse_native(text)
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_native(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|e| perr(line_no, format!("bad number {s:?}: {e}")))
        };
        let Some(c) = circuit.as_mut() else {
            match parts[..] {
                ["qubits", n] => {
                    circuit = Some(Circuit::new(num(n)?));
                    continue;
                }
                _ => return Err(perr(line_no, "expected \"qubits <n>\" header")),
            }
        };
        let q = |s: &str| -> Result<usize> {
            let v = num(s)?;
            v.checked_sub(1)
                .ok_or_else(|| perr(line_no, "qubit indices are 1-based"))
        };
        let gate = match parts[..] {
            ["H", a] => Gate::H(q(a)?),
            ["X", a] => Gate::X(q(a)?),
            ["Z", a] => Gate::Z(q(a)?),
            ["CX", a, b] => Gate::Cnot {
                control: q(a)?,
                target: q(b)?,
            },
            ["CZ", a, b] => Gate::Cz(q(a)?, q(b)?),
            _ => return Err(perr(line_no, format!("unrecognized gate line {line:?}"))),
        };
        c.push(gate).map_err(|e| perr(line_no, e.to_string()))?;
    }
    circuit.ok_or_else(|| perr(1, "empty circuit file"))
}

fn parse_qasm(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with("OPENQASM") || line.starts_with("include") {
            continue;
        }
        let stmt = line
            .strip_suffix(';')
            .ok_or_else(|| perr(line_no, "missing ';'"))?;
        let (op, args) = stmt
            .split_once(' ')
            .ok_or_else(|| perr(line_no, format!("cannot parse {stmt:?}")))?;
        let operands = args
            .split(',')
            .map(|a| {
                let a = a.trim();
                a.strip_prefix("q[")
                    .and_then(|r| r.strip_suffix(']'))
                    .and_then(|r| r.parse::<usize>().ok())
                    .ok_or_else(|| perr(line_no, format!("bad operand {a:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if op == "qreg" {
            if circuit.is_some() {
                return Err(perr(line_no, "only one qreg is supported"));
            }
            circuit = Some(Circuit::new(operands[0]));
            continue;
        }
        let c = circuit
            .as_mut()
            .ok_or_else(|| perr(line_no, "gate before qreg declaration"))?;
        let gate = match (op, &operands[..]) {
            ("h", [a]) => Gate::H(*a),
            ("x", [a]) => Gate::X(*a),
            ("z", [a]) => Gate::Z(*a),
            ("cx", [a, b]) => Gate::Cnot {
                control: *a,
                target: *b,
            },
            ("cz", [a, b]) => Gate::Cz(*a, *b),
            _ => return Err(perr(line_no, format!("unsupported statement {stmt:?}"))),
        };
        c.push(gate).map_err(|e| perr(line_no, e.to_string()))?;
    }
    circuit.ok_or_else(|| perr(1, "no qreg declaration"))
}
