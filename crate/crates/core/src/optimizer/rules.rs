//! Rewrite rules over short gate windows.
//!
//! Every rule is checked once, on first use, against brute-force unitaries:
//! all windows it matches over a 3-qubit gate alphabet must be equivalent to
//! their replacement up to global phase. State-dependent rules are checked
//! only on inputs where the qubits they assume to be |0> are |0>.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::circuit::{Gate, GateKind};
use crate::optimizer::frame::conjugate;
use crate::optimizer::unitary::{localize, Unitary};
use crate::pauli::PauliString;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    CzControlTargetSwap,
    CzFromCxConjugation,
    CySplit,
    PhaseMerge,
    GateCancellation,
    GateCommutationMove,
    CnotDistribution,
    PauliPropagation,
    CnotZeroControlElision,
    HadamardBasisAncilla,
}

impl RuleId {
    pub const ALL: [RuleId; 10] = [
        RuleId::CzControlTargetSwap,
        RuleId::CzFromCxConjugation,
        RuleId::CySplit,
        RuleId::PhaseMerge,
        RuleId::GateCancellation,
        RuleId::GateCommutationMove,
        RuleId::CnotDistribution,
        RuleId::PauliPropagation,
        RuleId::CnotZeroControlElision,
        RuleId::HadamardBasisAncilla,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::CzControlTargetSwap => "cz_control_target_swap",
            RuleId::CzFromCxConjugation => "cz_from_cx_conjugation",
            RuleId::CySplit => "cy_split",
            RuleId::PhaseMerge => "phase_merge",
            RuleId::GateCancellation => "gate_cancellation",
            RuleId::GateCommutationMove => "gate_commutation_move",
            RuleId::CnotDistribution => "cnot_distribution",
            RuleId::PauliPropagation => "pauli_propagation",
            RuleId::CnotZeroControlElision => "cnot_zero_control_elision",
            RuleId::HadamardBasisAncilla => "hadamard_basis_ancilla",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            RuleId::CzControlTargetSwap => "CZ(a,b) = CZ(b,a)",
            RuleId::CzFromCxConjugation => "CZ(a,b) = H(b) CX(a,b) H(b)",
            RuleId::CySplit => "CY(c,t) = CZ(c,t) CX(c,t) S(c)",
            RuleId::PhaseMerge => "S S = Z",
            RuleId::GateCancellation => "G G = I for self-inverse G",
            RuleId::GateCommutationMove => "AB = BA, possibly up to a Pauli correction",
            RuleId::CnotDistribution => "moving a CNOT past one sharing a control/target link adds one CNOT",
            RuleId::PauliPropagation => "P G = G (G^dag P G)",
            RuleId::CnotZeroControlElision => "controlled gates with a |0> control (and Z-type gates on |0>) vanish",
            RuleId::HadamardBasisAncilla => "CX into a fresh |+> ancilla vanishes",
        }
    }

    pub fn state_dependent(self) -> bool {
        matches!(self, RuleId::CnotZeroControlElision | RuleId::HadamardBasisAncilla)
    }

    /// Rewrite `w` (time order) if the rule matches. `zero(q)` reports whether
    /// qubit `q` is known to be |0> at the start of the window.
    pub fn try_apply(self, w: &[Gate], zero: &dyn Fn(usize) -> bool) -> Option<Vec<Gate>> {
        use GateKind::*;
        match (self, w) {
            (RuleId::CzControlTargetSwap, [g]) if g.kind == CZ => Some(vec![Gate::cz(g.q[1], g.q[0])]),
            (RuleId::CzFromCxConjugation, [g]) if g.kind == CZ => {
                let [a, b] = g.q;
                Some(vec![Gate::h(b), Gate::cx(a, b), Gate::h(b)])
            }
            (RuleId::CzFromCxConjugation, [h, g]) if h.kind == H && g.kind == CZ && g.touches(h.q[0]) => {
                let q = h.q[0];
                let o = if g.q[0] == q { g.q[1] } else { g.q[0] };
                Some(vec![Gate::cx(o, q), Gate::h(q)])
            }
            (RuleId::CzFromCxConjugation, [g, h]) if h.kind == H && g.kind == CZ && g.touches(h.q[0]) => {
                let q = h.q[0];
                let o = if g.q[0] == q { g.q[1] } else { g.q[0] };
                Some(vec![Gate::h(q), Gate::cx(o, q)])
            }
            (RuleId::CySplit, [g]) if g.kind == CY => {
                let [c, t] = g.q;
                Some(vec![Gate::cz(c, t), Gate::cx(c, t), Gate::one(S, c)])
            }
            (RuleId::PhaseMerge, [a, b]) if a.kind == S && b.kind == S && a.q[0] == b.q[0] => Some(vec![Gate::one(Z, a.q[0])]),
            (RuleId::GateCancellation, [a, b]) if cancels(a, b) => Some(vec![]),
            (RuleId::GateCommutationMove, [a, b]) if a != b => {
                let p = swap_correction(a, b)?;
                let mut out = vec![*b, *a];
                out.extend(pauli_gates(&p));
                Some(out)
            }
            (RuleId::CnotDistribution, [a, b]) if a.kind == CX && b.kind == CX => {
                let gen = if a.q[1] == b.q[0] && a.q[0] != b.q[1] {
                    Gate::cx(a.q[0], b.q[1])
                } else if a.q[0] == b.q[1] && a.q[1] != b.q[0] {
                    Gate::cx(b.q[0], a.q[1])
                } else {
                    return None;
                };
                Some(vec![*b, gen, *a])
            }
            (RuleId::PauliPropagation, [p, g]) if p.kind.is_pauli() && !g.kind.is_pauli() => {
                let n = p.q[0].max(g.q[0]).max(g.q[1]) + 1;
                let letter = p.kind.name().chars().next().expect("non-empty name");
                let pp = PauliString::single(n, p.q[0], letter).ok()?;
                // P then G equals G then (G P G^dag).
                let img = conjugate(&pp, g);
                let mut out = vec![*g];
                out.extend(pauli_gates(&img));
                Some(out)
            }
            (RuleId::CnotZeroControlElision, [g]) => {
                let trivial = match g.kind {
                    CX | CY => zero(g.q[0]),
                    CZ => zero(g.q[0]) || zero(g.q[1]),
                    Z | S => zero(g.q[0]),
                    _ => false,
                };
                trivial.then(Vec::new)
            }
            (RuleId::HadamardBasisAncilla, [h, g]) if h.kind == H && g.kind == CX && g.q[1] == h.q[0] && zero(h.q[0]) => Some(vec![*h]),
            _ => None,
        }
    }
}

/// Explicit single-qubit gates for the letters of `p` (phase dropped).
pub fn pauli_gates(p: &PauliString) -> Vec<Gate> {
    (0..p.n())
        .filter_map(|q| match p.letter(q) {
            'X' => Some(Gate::one(GateKind::X, q)),
            'Y' => Some(Gate::one(GateKind::Y, q)),
            'Z' => Some(Gate::one(GateKind::Z, q)),
            _ => None,
        })
        .collect()
}

fn self_inverse(k: GateKind) -> bool {
    !matches!(k, GateKind::S)
}

/// `a` followed by `b` is the identity.
pub fn cancels(a: &Gate, b: &Gate) -> bool {
    if !self_inverse(a.kind) || a.kind != b.kind {
        return false;
    }
    a == b || (a.kind == GateKind::CZ && a.q[0] == b.q[1] && a.q[1] == b.q[0])
}

/// Basis in which `g` acts diagonally on qubit `q`: 'Z', 'X', 'Y', or none.
fn local_basis(g: &Gate, q: usize) -> Option<char> {
    use GateKind::*;
    match g.kind {
        Z | S | CZ => Some('Z'),
        X => Some('X'),
        Y => Some('Y'),
        CX => Some(if g.q[0] == q { 'Z' } else { 'X' }),
        CY => Some(if g.q[0] == q { 'Z' } else { 'Y' }),
        H => None,
    }
}

/// Whether `a` and `b` commute exactly (structural test, no matrices).
pub fn commute_exact(a: &Gate, b: &Gate) -> bool {
    if a == b {
        return true;
    }
    a.qubits().iter().filter(|q| b.touches(**q)).all(|&q| {
        let la = local_basis(a, q);
        la.is_some() && la == local_basis(b, q)
    })
}

type SwapKey = (Vec<Gate>,);

fn swap_cache() -> &'static Mutex<HashMap<SwapKey, Option<PauliString>>> {
    static C: OnceLock<Mutex<HashMap<SwapKey, Option<PauliString>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Pauli `P` (on the full width of the two gates) with `a;b == b;a;P`, if one
/// exists. Identity when they commute exactly.
pub fn swap_correction(a: &Gate, b: &Gate) -> Option<PauliString> {
    let n = a.q[0].max(a.q[1]).max(b.q[0]).max(b.q[1]) + 1;
    if commute_exact(a, b) {
        return Some(PauliString::identity(n));
    }
    let (qs, local) = localize(&[*a, *b]);
    let key = (local.clone(),);
    let cached = swap_cache().lock().expect("cache lock").get(&key).cloned();
    let local_p = match cached {
        Some(p) => p,
        None => {
            let m = qs.len();
            // a;b means U = B A. We want B A = P A B, so P = B A B^dag A^dag.
            let ua = Unitary::of_gates(m, &local[..1]);
            let ub = Unitary::of_gates(m, &local[1..]);
            let u = ub.mul(&ua).mul(&ub.adjoint()).mul(&ua.adjoint());
            let p = u.as_pauli();
            swap_cache().lock().expect("cache lock").insert(key, p.clone());
            p
        }
    }?;
    let mut out = PauliString::identity(n).with_phase(local_p.phase_exp());
    for (i, &q) in qs.iter().enumerate() {
        out.set_letter(q, local_p.letter(i)).expect("valid letter");
    }
    Some(out)
}

/// Every gate on `n` qubits from the full alphabet.
pub fn alphabet(n: usize) -> Vec<Gate> {
    let mut out = Vec::new();
    for q in 0..n {
        for k in [GateKind::H, GateKind::S, GateKind::X, GateKind::Y, GateKind::Z] {
            out.push(Gate::one(k, q));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b {
                for k in [GateKind::CX, GateKind::CY, GateKind::CZ] {
                    out.push(Gate::two(k, a, b));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessReport {
    pub rule: RuleId,
    pub windows_checked: usize,
    pub failures: Vec<String>,
}

/// Brute-force check of one rule over all windows of length 1 and 2 on 3
/// qubits, and (for state-dependent rules) every choice of |0> qubits.
pub fn check_rule(rule: RuleId) -> SoundnessReport {
    const N: usize = 3;
    let alpha = alphabet(N);
    let mut windows: Vec<Vec<Gate>> = alpha.iter().map(|g| vec![*g]).collect();
    for a in &alpha {
        for b in &alpha {
            windows.push(vec![*a, *b]);
        }
    }
    let zero_sets: Vec<u8> = if rule.state_dependent() { (0..1 << N).collect() } else { vec![0] };
    let mut checked = 0;
    let mut failures = Vec::new();
    for w in &windows {
        for &zs in &zero_sets {
            let zero = |q: usize| zs >> q & 1 == 1;
            let Some(rep) = rule.try_apply(w, &zero) else { continue };
            checked += 1;
            let u = Unitary::of_gates(N, w);
            let v = Unitary::of_gates(N, &rep);
            let ok = if rule.state_dependent() {
                // Columns whose basis label has 0 on every assumed-|0> qubit.
                let cols: Vec<usize> = (0..1 << N).filter(|&j| (0..N).all(|q| !zero(q) || j >> (N - 1 - q) & 1 == 0)).collect();
                u.eq_on_columns(&v, &cols)
            } else {
                u.eq_up_to_phase(&v)
            };
            if !ok {
                failures.push(format!("{:?} -> {:?} (zero mask {zs:03b})", w, rep));
            }
        }
    }
    SoundnessReport { rule, windows_checked: checked, failures }
}

/// Soundness reports for all rules, computed once per process.
pub fn registry() -> &'static [SoundnessReport] {
    static R: OnceLock<Vec<SoundnessReport>> = OnceLock::new();
    R.get_or_init(|| RuleId::ALL.iter().map(|&r| check_rule(r)).collect())
}

/// Panics if any registered rule failed its soundness check.
pub fn ensure_sound() {
    for r in registry() {
        assert!(r.failures.is_empty(), "rule {} is unsound: {:?}", r.rule.name(), &r.failures[..r.failures.len().min(3)]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_rule_is_sound_and_exercised() {
        for r in registry() {
            assert!(r.failures.is_empty(), "{}: {:?}", r.rule.name(), r.failures);
            assert!(r.windows_checked > 0, "{} never matched", r.rule.name());
        }
    }

    #[test]
    fn isolated_cz_becomes_h_cx_h() {
        let out = RuleId::CzFromCxConjugation.try_apply(&[Gate::cz(0, 1)], &|_| false).unwrap();
        assert_eq!(out, vec![Gate::h(1), Gate::cx(0, 1), Gate::h(1)]);
    }

    #[test]
    fn zero_control_cx_removed() {
        let out = RuleId::CnotZeroControlElision.try_apply(&[Gate::cx(0, 1)], &|q| q == 0).unwrap();
        assert!(out.is_empty());
        assert!(RuleId::CnotZeroControlElision.try_apply(&[Gate::cx(0, 1)], &|q| q == 1).is_none());
    }

    #[test]
    fn structural_commutation_agrees_with_matrices() {
        let alpha = alphabet(3);
        for a in &alpha {
            for b in &alpha {
                if commute_exact(a, b) {
                    let ab = Unitary::of_gates(3, &[*a, *b]);
                    let ba = Unitary::of_gates(3, &[*b, *a]);
                    assert!(ab.eq_up_to_phase(&ba), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn cz_past_cx_needs_z_on_control() {
        let p = swap_correction(&Gate::cx(0, 1), &Gate::cz(0, 1)).unwrap();
        assert_eq!(p.to_string().trim_start_matches('-'), "ZI");
    }
}
