//! Gate-level circuit IR, JSON (de)serialization and OpenQASM 2.0 export.
//!
//! Qubits are 0-based in memory and 1-based in every user-facing text form
//! except QASM.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliString;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    H,
    S,
    X,
    Y,
    Z,
    CX,
    CY,
    CZ,
}

impl GateKind {
    pub const ALL: [GateKind; 8] =
        [GateKind::H, GateKind::S, GateKind::X, GateKind::Y, GateKind::Z, GateKind::CX, GateKind::CY, GateKind::CZ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::CX | GateKind::CY | GateKind::CZ => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::CX => "CX",
            GateKind::CY => "CY",
            GateKind::CZ => "CZ",
        }
    }

    pub fn is_pauli(self) -> bool {
        matches!(self, GateKind::X | GateKind::Y | GateKind::Z)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "H" => GateKind::H,
            "S" => GateKind::S,
            "X" => GateKind::X,
            "Y" => GateKind::Y,
            "Z" => GateKind::Z,
            "CX" | "CNOT" => GateKind::CX,
            "CY" => GateKind::CY,
            "CZ" => GateKind::CZ,
            _ => return Err(Error::Circuit(format!("unknown gate kind '{s}'"))),
        })
    }
}

/// A gate on 0-based qubits. For two-qubit gates `q[0]` is the control and
/// `q[1]` the target; single-qubit gates leave `q[1] == q[0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gate {
    pub kind: GateKind,
    pub q: [usize; 2],
}

impl Gate {
    pub fn one(kind: GateKind, q: usize) -> Gate {
        debug_assert_eq!(kind.arity(), 1);
        Gate { kind, q: [q, q] }
    }

    pub fn two(kind: GateKind, control: usize, target: usize) -> Gate {
        debug_assert_eq!(kind.arity(), 2);
        debug_assert_ne!(control, target);
        Gate { kind, q: [control, target] }
    }

    pub fn h(q: usize) -> Gate {
        Gate::one(GateKind::H, q)
    }

    pub fn cx(c: usize, t: usize) -> Gate {
        Gate::two(GateKind::CX, c, t)
    }

    pub fn cz(c: usize, t: usize) -> Gate {
        Gate::two(GateKind::CZ, c, t)
    }

    pub fn qubits(&self) -> &[usize] {
        &self.q[..self.kind.arity()]
    }

    pub fn touches(&self, q: usize) -> bool {
        self.qubits().contains(&q)
    }

    pub fn control(&self) -> usize {
        self.q[0]
    }

    pub fn target(&self) -> usize {
        self.q[self.kind.arity() - 1]
    }

    /// Same gate with qubits relabelled through `map`.
    pub fn mapped(&self, map: &[usize]) -> Gate {
        Gate { kind: self.kind, q: [map[self.q[0]], map[self.q[1]]] }
    }
}

impl fmt::Display for Gate {
    /// 1-based, e.g. `CX(1,7)` or `H(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind.arity() {
            1 => write!(f, "{}({})", self.kind, self.q[0] + 1),
            _ => write!(f, "{}({},{})", self.kind, self.q[0] + 1, self.q[1] + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// Starts in |0>.
    AncillaZero,
    /// Carries a logical input bit.
    LogicalInput,
    /// Code qubit of a syndrome-extraction circuit.
    Data,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::AncillaZero => "ancilla_zero",
            Role::LogicalInput => "logical_input",
            Role::Data => "data",
        }
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ancilla_zero" => Ok(Role::AncillaZero),
            "logical_input" => Ok(Role::LogicalInput),
            "data" => Ok(Role::Data),
            _ => Err(Error::Circuit(format!("unknown role '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub name: String,
    pub n: usize,
    pub roles: Vec<Role>,
    pub gates: Vec<Gate>,
    pub notes: Vec<String>,
    /// Pauli applied after the last gate. Optimized circuits carry their
    /// residual Pauli correction here; it is not counted as gates.
    pub pauli_frame: Option<PauliString>,
    /// Qubits read out at the end (syndrome ancillas).
    pub measure: Vec<usize>,
}

impl Circuit {
    pub fn new(name: impl Into<String>, roles: Vec<Role>) -> Circuit {
        Circuit { name: name.into(), n: roles.len(), roles, gates: Vec::new(), notes: Vec::new(), pauli_frame: None, measure: Vec::new() }
    }

    /// Encoder layout: `m` ancillas followed by `k` logical inputs.
    pub fn encoder_layout(name: impl Into<String>, m: usize, k: usize) -> Circuit {
        let mut roles = vec![Role::AncillaZero; m];
        roles.extend(std::iter::repeat_n(Role::LogicalInput, k));
        Circuit::new(name, roles)
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn ancillas(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.roles[q] == Role::AncillaZero).collect()
    }

    pub fn logical_inputs(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.roles[q] == Role::LogicalInput).collect()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.roles.len() != self.n {
            return Err(Error::Circuit(format!("{} roles for {} qubits", self.roles.len(), self.n)));
        }
        for (i, g) in self.gates.iter().enumerate() {
            for &q in g.qubits() {
                if q >= self.n {
                    return Err(Error::Circuit(format!("gate {} ({g}) index {} out of range 1..{}", i + 1, q + 1, self.n)));
                }
            }
            if g.kind.arity() == 2 && g.q[0] == g.q[1] {
                return Err(Error::Circuit(format!("gate {} has control equal to target", i + 1)));
            }
        }
        if let Some(f) = &self.pauli_frame {
            if f.n() != self.n {
                return Err(Error::Circuit(format!("pauli frame has {} qubits, circuit has {}", f.n(), self.n)));
            }
        }
        if let Some(&q) = self.measure.iter().find(|&&q| q >= self.n) {
            return Err(Error::Circuit(format!("measured qubit {} out of range", q + 1)));
        }
        Ok(())
    }

    pub fn gate_counts(&self) -> GateCounts {
        gate_counts(self)
    }

    /// The same circuit with its Pauli frame appended as explicit gates
    /// (the frame's global phase is dropped).
    pub fn with_frame_as_gates(&self) -> Circuit {
        let mut c = self.clone();
        if let Some(f) = c.pauli_frame.take() {
            for q in 0..c.n {
                match f.letter(q) {
                    'X' => c.gates.push(Gate::one(GateKind::X, q)),
                    'Y' => c.gates.push(Gate::one(GateKind::Y, q)),
                    'Z' => c.gates.push(Gate::one(GateKind::Z, q)),
                    _ => {}
                }
            }
        }
        c
    }

    pub fn to_qasm(&self) -> String {
        to_qasm(self)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// Histogram of gate kinds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GateCounts(pub BTreeMap<GateKind, usize>);

impl GateCounts {
    pub fn get(&self, k: GateKind) -> usize {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn two_qubit(&self) -> usize {
        self.get(GateKind::CX) + self.get(GateKind::CY) + self.get(GateKind::CZ)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// Build from `(kind, count)` pairs; zero counts are dropped.
    pub fn of(pairs: &[(GateKind, usize)]) -> GateCounts {
        GateCounts(pairs.iter().filter(|(_, c)| *c > 0).copied().collect())
    }
}

impl fmt::Display for GateCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, c)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}:{c}")?;
        }
        f.write_str("}")
    }
}

pub fn gate_counts(c: &Circuit) -> GateCounts {
    let mut m = BTreeMap::new();
    for g in &c.gates {
        *m.entry(g.kind).or_insert(0) += 1;
    }
    GateCounts(m)
}

pub fn to_qasm(c: &Circuit) -> String {
    let mut s = String::new();
    s.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    if !c.name.is_empty() {
        s.push_str(&format!("// {}\n", c.name));
    }
    s.push_str(&format!("qreg q[{}];\n", c.n));
    if !c.measure.is_empty() {
        s.push_str(&format!("creg s[{}];\n", c.measure.len()));
    }
    for g in &c.gates {
        let name = g.kind.name().to_ascii_lowercase();
        match g.kind.arity() {
            1 => s.push_str(&format!("{name} q[{}];\n", g.q[0])),
            _ => s.push_str(&format!("{name} q[{}],q[{}];\n", g.q[0], g.q[1])),
        }
    }
    if let Some(f) = &c.pauli_frame {
        if !f.is_identity_up_to_phase() {
            s.push_str("// pauli frame\n");
            for q in 0..c.n {
                match f.letter(q) {
                    'I' => {}
                    l => s.push_str(&format!("{} q[{q}];\n", l.to_ascii_lowercase())),
                }
            }
        }
    }
    for (i, &q) in c.measure.iter().enumerate() {
        s.push_str(&format!("measure q[{q}] -> s[{i}];\n"));
    }
    s
}

#[derive(Serialize, Deserialize)]
struct GateDoc {
    kind: String,
    q: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    name: String,
    n: usize,
    roles: Vec<String>,
    gates: Vec<GateDoc>,
    #[serde(default)]
    notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pauli_frame: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    measure: Vec<usize>,
}

pub fn to_json(c: &Circuit) -> String {
    let doc = CircuitDoc {
        name: c.name.clone(),
        n: c.n,
        roles: c.roles.iter().map(|r| r.name().to_string()).collect(),
        gates: c.gates.iter().map(|g| GateDoc { kind: g.kind.name().to_string(), q: g.qubits().iter().map(|q| q + 1).collect() }).collect(),
        notes: c.notes.clone(),
        pauli_frame: c.pauli_frame.as_ref().map(|p| p.to_string()),
        measure: c.measure.iter().map(|q| q + 1).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("circuit documents always serialize")
}

pub fn from_json(text: &str) -> Result<Circuit> {
    let doc: CircuitDoc = serde_json::from_str(text).map_err(|e| Error::Circuit(format!("schema: {e}")))?;
    let roles = doc.roles.iter().map(|r| r.parse()).collect::<Result<Vec<Role>>>()?;
    if roles.len() != doc.n {
        return Err(Error::Circuit(format!("{} roles for n = {}", roles.len(), doc.n)));
    }
    let mut gates = Vec::with_capacity(doc.gates.len());
    for (i, g) in doc.gates.iter().enumerate() {
        let kind: GateKind = g.kind.parse()?;
        if g.q.len() != kind.arity() {
            return Err(Error::Circuit(format!("gate {} ({}) needs {} qubits, got {}", i + 1, kind, kind.arity(), g.q.len())));
        }
        if let Some(&bad) = g.q.iter().find(|&&q| q == 0 || q > doc.n) {
            return Err(Error::Circuit(format!("gate {} index {bad} out of range 1..{}", i + 1, doc.n)));
        }
        let gate = match kind.arity() {
            1 => Gate::one(kind, g.q[0] - 1),
            _ => {
                if g.q[0] == g.q[1] {
                    return Err(Error::Circuit(format!("gate {} has control equal to target", i + 1)));
                }
                Gate::two(kind, g.q[0] - 1, g.q[1] - 1)
            }
        };
        gates.push(gate);
    }
    let pauli_frame = match &doc.pauli_frame {
        Some(s) => Some(s.parse::<PauliString>()?),
        None => None,
    };
    if let Some(&bad) = doc.measure.iter().find(|&&q| q == 0 || q > doc.n) {
        return Err(Error::Circuit(format!("measured index {bad} out of range")));
    }
    let c = Circuit {
        name: doc.name,
        n: doc.n,
        roles,
        gates,
        notes: doc.notes,
        pauli_frame,
        measure: doc.measure.iter().map(|q| q - 1).collect(),
    };
    c.validate()?;
    Ok(c)
}
