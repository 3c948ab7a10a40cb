//! Encoder synthesis from a standard-form check matrix, the trivial-gate
//! strip pass, and syndrome-extraction circuits.

use std::str::FromStr;

use crate::circuit::{Circuit, Gate, GateKind, Role};
use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::simulator::syndrome_roles;
use crate::symplectic::{sign_flipper, LogicalOperators, SignPolicy, StandardForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GateSet {
    /// H, S, CX, CY, CZ.
    #[default]
    Mixed,
    /// H, Z, CX, CZ: every CY becomes a controlled-XZ pair.
    CnotCz,
}

impl FromStr for GateSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mixed" => Ok(GateSet::Mixed),
            "cnot-cz" | "cnot_cz" => Ok(GateSet::CnotCz),
            _ => Err(Error::Circuit(format!("unknown gate set '{s}' (expected mixed or cnot-cz)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EncoderOptions {
    pub gate_set: GateSet,
    pub strip: bool,
    pub sign_policy: SignPolicy,
}

impl Default for EncoderOptions {
    fn default() -> Self {
        EncoderOptions { gate_set: GateSet::Mixed, strip: true, sign_policy: SignPolicy::Canonical }
    }
}

/// Qubits provably still in |0>, tracked forward through a gate list.
#[derive(Clone, Debug)]
pub struct ProvenZero {
    zero: Vec<bool>,
}

impl ProvenZero {
    pub fn new(roles: &[Role]) -> Self {
        ProvenZero { zero: roles.iter().map(|r| *r == Role::AncillaZero).collect() }
    }

    pub fn is_zero(&self, q: usize) -> bool {
        self.zero[q]
    }

    /// Whether `g` acts trivially given the current state: Z or CZ touching a
    /// |0> qubit, or a controlled gate whose control is |0>.
    pub fn is_trivial(&self, g: &Gate) -> bool {
        match g.kind {
            GateKind::Z => self.zero[g.q[0]],
            GateKind::CZ => self.zero[g.q[0]] || self.zero[g.q[1]],
            GateKind::CX | GateKind::CY => self.zero[g.q[0]],
            _ => false,
        }
    }

    /// Record that `g` was kept.
    pub fn observe(&mut self, g: &Gate) {
        for &q in g.qubits() {
            self.zero[q] = false;
        }
    }
}

/// Remove gates that act trivially on qubits still in |0>.
pub fn strip_trivial_gates(c: &Circuit) -> Circuit {
    let mut pz = ProvenZero::new(&c.roles);
    let mut out = c.clone();
    out.gates.clear();
    for g in &c.gates {
        if pz.is_trivial(g) {
            continue;
        }
        pz.observe(g);
        out.gates.push(*g);
    }
    out
}

/// Per-target emission for one controlled generator in the CNOT+CZ set.
/// Returns, for each Y target, whether it uses the CX-then-CZ order, and the
/// extra phase gates needed on the control after H.
fn plan_cnot_cz(self_y: bool, y_targets: usize) -> (usize, Vec<GateKind>) {
    // The |1> branch of the control must pick up i^{self_y}. A Z on the control
    // (standing in for S) contributes -1 when self_y. Each Y target contributes
    // -i (CZ then CX, i.e. XZ) or +i (CX then CZ, i.e. ZX).
    let need: u8 = if self_y { 3 } else { 0 }; // i^need = i^{self_y} / s
    let default = (3 * y_targets % 4) as u8; // (-i)^{#Y}
    let resid = (need + 4 - default) % 4;
    match (resid, y_targets) {
        (0, _) => (0, vec![]),
        (2, t) if t > 0 => (1, vec![]),
        (2, _) => (0, vec![GateKind::Z]),
        (1, _) => (0, vec![GateKind::S]),
        (3, t) if t > 0 => (1, vec![GateKind::S]),
        _ => (0, vec![GateKind::Z, GateKind::S]),
    }
}

/// Encoder without the strip pass, using +1 signs on every reduced row.
pub fn synthesize_encoder(s: &StandardForm, l: &LogicalOperators, gate_set: GateSet) -> Result<Circuit> {
    let (n, k, r) = (s.n(), s.k(), s.r);
    let m = n - k;
    let gens = s.canonical_generators();
    let tag = match gate_set {
        GateSet::Mixed => "mixed",
        GateSet::CnotCz => "cnot_cz",
    };
    let mut c = Circuit::encoder_layout(format!("encoder ({tag})"), m, k);
    c.notes.push(format!(
        "qubit order follows the standard form: position j holds original qubit [{}]",
        s.qubit_perm.iter().map(|q| (q + 1).to_string()).collect::<Vec<_>>().join(",")
    ));

    // Logical stage: controlled Xbar_i from qubit m+i; Z parts act trivially.
    for (i, xb) in l.xbar.iter().enumerate() {
        let ctrl = m + i;
        for j in xb.x().ones() {
            if j != ctrl {
                c.push(Gate::cx(ctrl, j));
            }
        }
    }

    // Stabilizer stage.
    for (i, g) in gens.iter().enumerate().take(r) {
        c.push(Gate::h(i));
        let self_y = g.z().get(i);
        let targets: Vec<(usize, char)> = (0..n).filter(|&j| j != i && g.letter(j) != 'I').map(|j| (j, g.letter(j))).collect();
        match gate_set {
            GateSet::Mixed => {
                if self_y {
                    c.push(Gate::one(GateKind::S, i));
                }
                for (j, l) in targets {
                    let kind = match l {
                        'X' => GateKind::CX,
                        'Y' => GateKind::CY,
                        _ => GateKind::CZ,
                    };
                    c.push(Gate::two(kind, i, j));
                }
            }
            GateSet::CnotCz => {
                if self_y {
                    c.push(Gate::one(GateKind::Z, i));
                }
                let ys: Vec<usize> = targets.iter().filter(|t| t.1 == 'Y').map(|t| t.0).collect();
                let (flips, extra) = plan_cnot_cz(self_y, ys.len());
                for kind in extra {
                    c.push(Gate::one(kind, i));
                }
                let flipped = &ys[ys.len() - flips..];
                for (j, l) in targets {
                    match l {
                        'X' => c.push(Gate::cx(i, j)),
                        'Z' => c.push(Gate::cz(i, j)),
                        _ if flipped.contains(&j) => {
                            c.push(Gate::cx(i, j));
                            c.push(Gate::cz(i, j));
                        }
                        _ => {
                            c.push(Gate::cz(i, j));
                            c.push(Gate::cx(i, j));
                        }
                    }
                }
            }
        }
    }
    Ok(c)
}

/// Encoder with options: sign handling, gate set, and the strip pass.
pub fn build_encoder(s: &StandardForm, l: &LogicalOperators, opts: &EncoderOptions) -> Result<Circuit> {
    s.generators(opts.sign_policy)?;
    let mut c = synthesize_encoder(s, l, opts.gate_set)?;
    if opts.strip {
        c = strip_trivial_gates(&c);
    }
    if opts.sign_policy == SignPolicy::Regenerated && !s.negative_rows().is_empty() {
        let gens = s.canonical_generators();
        let flips: Vec<bool> = s.base.signs.iter().map(|&x| x != 0).collect();
        let p = z_type_flipper(&gens, &flips)
            .or_else(|| sign_flipper(&gens, &flips))
            .ok_or_else(|| Error::NegativeSign { row: s.negative_rows()[0] + 1, detail: "no Pauli correction exists".into() })?;
        c.notes.push(format!("sign correction {p} appended"));
        for q in 0..s.n() {
            match p.letter(q) {
                'X' => c.push(Gate::one(GateKind::X, q)),
                'Y' => c.push(Gate::one(GateKind::Y, q)),
                'Z' => c.push(Gate::one(GateKind::Z, q)),
                _ => {}
            }
        }
    }
    Ok(c)
}

/// A Z-only Pauli with the requested anticommutation pattern, if one exists.
fn z_type_flipper(gens: &[PauliString], flip: &[bool]) -> Option<PauliString> {
    let n = gens.first()?.n();
    let a = crate::bits::BitMatrix::from_rows(n, gens.iter().map(|g| g.x().clone()).collect());
    let v = crate::symplectic::solve(&a, &crate::bits::Bits::from_bools(flip.iter().copied()))?;
    PauliString::from_bits(crate::bits::Bits::zeros(n), v, 0).ok()
}

/// One ancilla per generator: H, controlled copies of each non-identity
/// factor, H, then measure. Data qubits come first.
pub fn synthesize_syndrome_circuit(s: &StandardForm, policy: SignPolicy) -> Result<Circuit> {
    syndrome_circuit_for(&s.generators(policy)?)
}

pub fn syndrome_circuit_for(gens: &[PauliString]) -> Result<Circuit> {
    let n = gens.first().map(|g| g.n()).ok_or(Error::Dimension { expected: 1, found: 0 })?;
    let m = gens.len();
    let mut c = Circuit::new("syndrome extraction", syndrome_roles(n, m));
    for (i, g) in gens.iter().enumerate() {
        let a = n + i;
        c.push(Gate::h(a));
        if g.phase_exp() == 2 {
            c.push(Gate::one(GateKind::Z, a));
        }
        for j in 0..n {
            let kind = match g.letter(j) {
                'X' => GateKind::CX,
                'Y' => GateKind::CY,
                'Z' => GateKind::CZ,
                _ => continue,
            };
            c.push(Gate::two(kind, a, j));
        }
        c.push(Gate::h(a));
        c.measure.push(a);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_covers_all_residues() {
        assert_eq!(plan_cnot_cz(false, 0), (0, vec![]));
        assert_eq!(plan_cnot_cz(false, 2), (1, vec![]));
        assert_eq!(plan_cnot_cz(true, 1), (0, vec![]));
        assert_eq!(plan_cnot_cz(true, 3), (1, vec![]));
        assert_eq!(plan_cnot_cz(false, 1), (0, vec![GateKind::S]));
        assert_eq!(plan_cnot_cz(false, 3), (1, vec![GateKind::S]));
    }

    #[test]
    fn strip_leaves_no_ancilla_circuits_alone() {
        let mut c = Circuit::encoder_layout("x", 0, 2);
        c.push(Gate::cz(0, 1));
        c.push(Gate::one(GateKind::Z, 0));
        assert_eq!(strip_trivial_gates(&c), c);
    }

    #[test]
    fn strip_removes_zero_control() {
        let mut c = Circuit::encoder_layout("x", 1, 1);
        c.push(Gate::cx(0, 1));
        c.push(Gate::cz(1, 0));
        c.push(Gate::h(0));
        c.push(Gate::cx(0, 1));
        let s = strip_trivial_gates(&c);
        assert_eq!(s.gates, vec![Gate::h(0), Gate::cx(0, 1)]);
    }

    #[test]
    fn single_zz_syndrome_circuit() {
        let c = syndrome_circuit_for(&["ZZ".parse().unwrap()]).unwrap();
        assert_eq!(c.n, 3);
        assert_eq!(c.gate_counts().to_string(), "{H:2, CZ:2}");
        assert_eq!(c.measure, vec![2]);
    }
}
