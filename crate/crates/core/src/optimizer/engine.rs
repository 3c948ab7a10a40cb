//! The rewrite engine: normalization to H/CX form, then commutation-driven
//! elision by first-improvement hill climbing.

use std::collections::BTreeMap;

use crate::circuit::{Gate, GateKind, Role};
use crate::encoder::ProvenZero;
use crate::optimizer::dataflow::linear_values;
use crate::optimizer::frame::conjugate;
use crate::optimizer::rules::{cancels, commute_exact, pauli_gates, swap_correction, RuleId};
use crate::pauli::PauliString;

/// Per-position "is |0>" flags, from affine values when they fit, otherwise
/// from the conservative proven-zero pass.
pub fn zero_flags(roles: &[Role], gates: &[Gate]) -> Vec<Vec<bool>> {
    if let Some(v) = linear_values(roles, gates) {
        return v.snapshots.iter().map(|s| s.iter().map(|&x| x == 0).collect()).collect();
    }
    let mut pz = ProvenZero::new(roles);
    let mut out = Vec::with_capacity(gates.len() + 1);
    for g in gates {
        out.push((0..roles.len()).map(|q| pz.is_zero(q)).collect());
        pz.observe(g);
    }
    out.push((0..roles.len()).map(|q| pz.is_zero(q)).collect());
    out
}

pub fn two_qubit_count(gates: &[Gate]) -> usize {
    gates.iter().filter(|g| g.kind.arity() == 2).count()
}

#[derive(Clone, Debug)]
pub struct Engine {
    pub roles: Vec<Role>,
    pub gates: Vec<Gate>,
    /// Pauli applied after `gates`.
    pub frame: PauliString,
    pub fired: BTreeMap<&'static str, usize>,
}

impl Engine {
    pub fn new(roles: Vec<Role>, gates: Vec<Gate>, frame: Option<PauliString>) -> Self {
        let n = roles.len();
        Engine { roles, gates, frame: frame.unwrap_or_else(|| PauliString::identity(n)), fired: BTreeMap::new() }
    }

    fn n(&self) -> usize {
        self.roles.len()
    }

    fn fire(&mut self, r: RuleId, times: usize) {
        if times > 0 {
            *self.fired.entry(r.name()).or_insert(0) += times;
        }
    }

    pub fn split_cy(&mut self) {
        let mut out = Vec::with_capacity(self.gates.len());
        let mut count = 0;
        for g in &self.gates {
            match RuleId::CySplit.try_apply(&[*g], &|_| false) {
                Some(rep) => {
                    out.extend(rep);
                    count += 1;
                }
                None => out.push(*g),
            }
        }
        self.gates = out;
        self.fire(RuleId::CySplit, count);
    }

    /// Remove gates that act trivially on |0> qubits.
    pub fn elide(&mut self) -> usize {
        let (gates, removed) = elide_gates(&self.roles, &self.gates);
        self.gates = gates;
        self.fire(RuleId::CnotZeroControlElision, removed);
        removed
    }

    /// Remove CX gates that target a qubit freshly put into |+> from |0> and
    /// not touched otherwise since.
    pub fn hadamard_ancilla(&mut self) -> usize {
        let (gates, removed) = hadamard_ancilla_gates(&self.roles, &self.gates);
        self.gates = gates;
        self.fire(RuleId::HadamardBasisAncilla, removed);
        removed
    }

    pub fn merge_phases(&mut self) {
        let mut count = 0;
        'outer: loop {
            for i in 0..self.gates.len() {
                if self.gates[i].kind != GateKind::S {
                    continue;
                }
                for j in i + 1..self.gates.len() {
                    let h = self.gates[j];
                    if let Some(rep) = RuleId::PhaseMerge.try_apply(&[self.gates[i], h], &|_| false) {
                        self.gates.remove(j);
                        self.gates.splice(i..=i, rep);
                        count += 1;
                        continue 'outer;
                    }
                    if !commute_exact(&self.gates[i], &h) {
                        break;
                    }
                }
            }
            break;
        }
        self.fire(RuleId::PhaseMerge, count);
    }

    /// Push every Pauli gate to the end of the circuit and into the frame.
    pub fn sweep_paulis(&mut self) {
        let n = self.n();
        let mut pending = PauliString::identity(n);
        let mut out = Vec::with_capacity(self.gates.len());
        let mut count = 0;
        for g in &self.gates {
            if g.kind.is_pauli() {
                let letter = g.kind.name().chars().next().expect("non-empty name");
                let p = PauliString::single(n, g.q[0], letter).expect("qubit in range");
                pending = p.multiply(&pending).expect("same width");
                count += 1;
            } else {
                pending = conjugate(&pending, g);
                out.push(*g);
            }
        }
        self.gates = out;
        self.frame = self.frame.multiply(&pending).expect("same width");
        self.fire(RuleId::PauliPropagation, count);
    }

    /// Cancel identical self-inverse pairs separated only by commuting gates.
    pub fn cancel(&mut self) -> usize {
        let (gates, removed) = cancel_gates(&self.gates);
        self.gates = gates;
        self.fire(RuleId::GateCancellation, removed);
        removed
    }

    /// Replace every CZ by CX conjugated with H, moving it next to an
    /// existing H where possible so the H pair is absorbed.
    pub fn convert_cz(&mut self, isolated_ok: bool) {
        loop {
            self.sweep_paulis();
            self.cancel();
            let Some(p) = self.gates.iter().position(|g| g.kind == GateKind::CZ) else { break };
            let zeros = zero_flags(&self.roles, &self.gates);
            if let Some((gates, fired)) = slide_cz(&self.gates, p, true, &zeros).or_else(|| slide_cz(&self.gates, p, false, &zeros)) {
                self.gates = gates;
                for (r, c) in fired {
                    self.fire(r, c);
                }
                continue;
            }
            if !isolated_ok {
                break;
            }
            let g = self.gates[p];
            let rep = RuleId::CzFromCxConjugation.try_apply(&[g], &|_| false).expect("matches a CZ");
            self.gates.splice(p..=p, rep);
            self.fire(RuleId::CzFromCxConjugation, 1);
        }
    }

    /// First-improvement hill climb over CX moves (commutation and
    /// distribution), accepting a move when elision and cancellation then
    /// lower the two-qubit count.
    pub fn hill_climb(&mut self) {
        let tidy = |roles: &[Role], gates: &[Gate]| {
            let (g, e) = elide_gates(roles, gates);
            let (g, h) = hadamard_ancilla_gates(roles, &g);
            let (g, c) = cancel_gates(&g);
            (g, e, h, c)
        };
        let (g, e, h, c) = tidy(&self.roles, &self.gates);
        self.gates = g;
        self.fire(RuleId::CnotZeroControlElision, e);
        self.fire(RuleId::HadamardBasisAncilla, h);
        self.fire(RuleId::GateCancellation, c);
        let mut best = two_qubit_count(&self.gates);
        'improve: loop {
            for p in 0..self.gates.len() {
                if self.gates[p].kind != GateKind::CX {
                    continue;
                }
                for left in [true, false] {
                    for (cand, moves) in cx_moves(&self.gates, p, left) {
                        let (cc, e, h, c) = tidy(&self.roles, &cand);
                        let cost = two_qubit_count(&cc);
                        if cost < best {
                            best = cost;
                            self.gates = cc;
                            for (r, k) in moves {
                                self.fire(r, k);
                            }
                            self.fire(RuleId::CnotZeroControlElision, e);
                            self.fire(RuleId::HadamardBasisAncilla, h);
                            self.fire(RuleId::GateCancellation, c);
                            continue 'improve;
                        }
                    }
                }
            }
            break;
        }
    }
}

pub fn elide_gates(roles: &[Role], gates: &[Gate]) -> (Vec<Gate>, usize) {
    let zeros = zero_flags(roles, gates);
    let mut out = Vec::with_capacity(gates.len());
    for (i, g) in gates.iter().enumerate() {
        let z = &zeros[i];
        if RuleId::CnotZeroControlElision.try_apply(&[*g], &|q| z[q]).is_none() {
            out.push(*g);
        }
    }
    let removed = gates.len() - out.len();
    (out, removed)
}

pub fn hadamard_ancilla_gates(roles: &[Role], gates: &[Gate]) -> (Vec<Gate>, usize) {
    let zeros = zero_flags(roles, gates);
    let mut drop = vec![false; gates.len()];
    for (i, h) in gates.iter().enumerate() {
        if h.kind != GateKind::H || !zeros[i][h.q[0]] {
            continue;
        }
        let b = h.q[0];
        for (j, g) in gates.iter().enumerate().skip(i + 1) {
            if !g.touches(b) {
                continue;
            }
            let z = |q: usize| q == b;
            if RuleId::HadamardBasisAncilla.try_apply(&[*h, *g], &z).is_some() {
                drop[j] = true;
            } else {
                break;
            }
        }
    }
    let out: Vec<Gate> = gates.iter().zip(&drop).filter(|(_, d)| !**d).map(|(g, _)| *g).collect();
    let removed = gates.len() - out.len();
    (out, removed)
}

pub fn cancel_gates(gates: &[Gate]) -> (Vec<Gate>, usize) {
    let mut c = gates.to_vec();
    let mut removed = 0;
    'outer: loop {
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                if cancels(&c[i], &c[j]) {
                    c.remove(j);
                    c.remove(i);
                    removed += 2;
                    continue 'outer;
                }
                if !commute_exact(&c[i], &c[j]) {
                    break;
                }
            }
        }
        break;
    }
    (c, removed)
}

pub type Fired = Vec<(RuleId, usize)>;

/// Move the CZ at `p` left (or right) until it meets an H on one of its
/// qubits, cancels, or hits |0>; `None` if it gets stuck.
fn slide_cz(gates: &[Gate], p: usize, left: bool, zeros: &[Vec<bool>]) -> Option<(Vec<Gate>, Fired)> {
    let mut gs = gates.to_vec();
    let mut p = p;
    let mut fired: Fired = Vec::new();
    let n = zeros[0].len();
    loop {
        let cz = gs[p];
        if left {
            // The prefix before p is unchanged, so the original flags apply.
            let z = &zeros[p];
            if RuleId::CnotZeroControlElision.try_apply(&[cz], &|q| z[q]).is_some() {
                gs.remove(p);
                fired.push((RuleId::CnotZeroControlElision, 1));
                return Some((gs, fired));
            }
            if p == 0 {
                return None;
            }
            let prev = gs[p - 1];
            if let Some(rep) = RuleId::CzFromCxConjugation.try_apply(&[prev, cz], &|_| false) {
                if prev.kind == GateKind::H {
                    if cz.q[0] == prev.q[0] {
                        fired.push((RuleId::CzControlTargetSwap, 1));
                    }
                    gs.splice(p - 1..=p, rep);
                    fired.push((RuleId::CzFromCxConjugation, 1));
                    return Some((gs, fired));
                }
            }
            if cancels(&prev, &cz) {
                gs.drain(p - 1..=p);
                fired.push((RuleId::GateCancellation, 1));
                return Some((gs, fired));
            }
            if prev.kind.is_pauli() {
                let img = conjugate(&single(n, &prev), &cz);
                let mut rep = vec![cz];
                rep.extend(pauli_gates(&img));
                gs.splice(p - 1..=p, rep);
                fired.push((RuleId::PauliPropagation, 1));
                p -= 1;
                continue;
            }
            let corr = swap_correction(&prev, &cz)?;
            let mut rep = vec![cz, prev];
            rep.extend(pauli_gates(&corr));
            gs.splice(p - 1..=p, rep);
            fired.push((RuleId::GateCommutationMove, 1));
            p -= 1;
        } else {
            if p + 1 >= gs.len() {
                return None;
            }
            let next = gs[p + 1];
            if next.kind == GateKind::H && cz.touches(next.q[0]) {
                let rep = RuleId::CzFromCxConjugation.try_apply(&[cz, next], &|_| false)?;
                if cz.q[0] == next.q[0] {
                    fired.push((RuleId::CzControlTargetSwap, 1));
                }
                gs.splice(p..=p + 1, rep);
                fired.push((RuleId::CzFromCxConjugation, 1));
                return Some((gs, fired));
            }
            if cancels(&cz, &next) {
                gs.drain(p..=p + 1);
                fired.push((RuleId::GateCancellation, 1));
                return Some((gs, fired));
            }
            if next.kind.is_pauli() {
                // CZ P = (CZ P CZ) CZ.
                let img = conjugate(&single(n, &next), &cz);
                let mut rep = pauli_gates(&img);
                let shift = rep.len();
                rep.push(cz);
                gs.splice(p..=p + 1, rep);
                fired.push((RuleId::PauliPropagation, 1));
                p += shift;
                continue;
            }
            let corr = swap_correction(&cz, &next)?;
            let mut rep = vec![next, cz];
            rep.extend(pauli_gates(&corr));
            gs.splice(p..=p + 1, rep);
            fired.push((RuleId::GateCommutationMove, 1));
            p += 1;
        }
    }
}

fn single(n: usize, g: &Gate) -> PauliString {
    let letter = g.kind.name().chars().next().expect("non-empty name");
    PauliString::single(n, g.q[0], letter).expect("qubit in range")
}

/// Every intermediate circuit reached while moving the CX at `p` one step
/// at a time, with the rules used so far.
pub fn cx_moves(gates: &[Gate], p: usize, left: bool) -> Vec<(Vec<Gate>, Fired)> {
    let mut out = Vec::new();
    let mut c = gates.to_vec();
    let g = c[p];
    let mut p = p;
    let mut moves = 0usize;
    let mut dist = 0usize;
    let fired = |moves: usize, dist: usize| {
        let mut f = Vec::new();
        if moves > 0 {
            f.push((RuleId::GateCommutationMove, moves));
        }
        if dist > 0 {
            f.push((RuleId::CnotDistribution, dist));
        }
        f
    };
    loop {
        let (i, j) = if left {
            if p == 0 {
                break;
            }
            (p - 1, p)
        } else {
            if p + 1 >= c.len() {
                break;
            }
            (p, p + 1)
        };
        let h = if left { c[i] } else { c[j] };
        if h == g {
            c.drain(i..=j);
            let mut f = fired(moves, dist);
            f.push((RuleId::GateCancellation, 1));
            out.push((c, f));
            break;
        }
        if commute_exact(&g, &h) {
            c.swap(i, j);
            moves += 1;
            p = if left { p - 1 } else { p + 1 };
            out.push((c.clone(), fired(moves, dist)));
            continue;
        }
        if h.kind != GateKind::CX {
            break;
        }
        let Some(mut rep) = RuleId::CnotDistribution.try_apply(&[c[i], c[j]], &|_| false) else { break };
        if left && c[i].q[0] == c[j].q[1] {
            // The added gate shares its target with the one passed; keep the mover outermost.
            rep.swap(1, 2);
        }
        c.splice(i..=j, rep);
        dist += 1;
        p = if left { p - 1 } else { p + 2 };
        out.push((c.clone(), fired(moves, dist)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_control_cx_is_removed() {
        let roles = vec![Role::AncillaZero, Role::LogicalInput];
        let mut e = Engine::new(roles, vec![Gate::cx(0, 1)], None);
        e.elide();
        assert!(e.gates.is_empty());
    }

    #[test]
    fn isolated_cz_converts() {
        let roles = vec![Role::LogicalInput, Role::LogicalInput];
        let mut e = Engine::new(roles, vec![Gate::cz(0, 1)], None);
        e.convert_cz(true);
        assert_eq!(e.gates, vec![Gate::h(1), Gate::cx(0, 1), Gate::h(1)]);
    }

    #[test]
    fn cancels_through_commuting_gates() {
        let gates = vec![Gate::cx(0, 1), Gate::cx(0, 2), Gate::cx(0, 1)];
        let (out, removed) = cancel_gates(&gates);
        assert_eq!(out, vec![Gate::cx(0, 2)]);
        assert_eq!(removed, 2);
    }
}
