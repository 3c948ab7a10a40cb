//! Affine value tracking for H/CX/Pauli circuits, and the windowed search
//! that rebuilds a stretch of CX gates between Hadamard checkpoints.
//!
//! Each qubit value is an affine form over F2 packed into a `u64`: bit 0 is
//! the constant, the next bits are the logical inputs, then one fresh
//! variable per Hadamard. With ancillas starting in |0>, an H/CX circuit
//! prepares `sum_v (-1)^{sum_t v_t l_t} |F(x, v)>`, where `l_t` is the value
//! the t-th H acts on and `F` the final values. Two circuits with the same
//! checkpoints and final values therefore act identically.

use std::collections::HashMap;

use crate::circuit::{Gate, GateKind, Role};

/// Value of every qubit before each gate, plus the final values.
#[derive(Clone, Debug)]
pub struct Values {
    pub vars: usize,
    pub snapshots: Vec<Vec<u64>>,
}

impl Values {
    pub fn before(&self, i: usize) -> &[u64] {
        &self.snapshots[i]
    }

    pub fn last(&self) -> &[u64] {
        self.snapshots.last().expect("at least one snapshot")
    }
}

/// `None` when more than 63 variables would be needed.
pub fn linear_values(roles: &[Role], gates: &[Gate]) -> Option<Values> {
    let mut next = 1usize;
    let mut cur: Vec<u64> = Vec::with_capacity(roles.len());
    for r in roles {
        if *r == Role::AncillaZero {
            cur.push(0);
        } else {
            if next >= 64 {
                return None;
            }
            cur.push(1 << next);
            next += 1;
        }
    }
    let mut snapshots = Vec::with_capacity(gates.len() + 1);
    for g in gates {
        snapshots.push(cur.clone());
        match g.kind {
            GateKind::H => {
                if next >= 64 {
                    return None;
                }
                cur[g.q[0]] = 1 << next;
                next += 1;
            }
            GateKind::CX | GateKind::CY => cur[g.q[1]] ^= cur[g.q[0]],
            GateKind::X | GateKind::Y => cur[g.q[0]] ^= 1,
            GateKind::Z | GateKind::S | GateKind::CZ => {}
        }
    }
    snapshots.push(cur);
    Some(Values { vars: next, snapshots })
}

/// A Hadamard inside a window: qubit, the value it must act on, and the
/// fresh variable it introduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub q: usize,
    pub ell: u64,
    pub fresh: u64,
}

type LastOp = Option<(usize, usize)>;

struct Search<'a> {
    end: &'a [u64],
    hs: &'a [Checkpoint],
    nodes: u64,
    budget: u64,
    tt: HashMap<(Vec<u64>, u64, LastOp), usize>,
    path: Vec<(usize, usize)>,
}

impl Search<'_> {
    /// Apply every Hadamard whose checkpoint is met, in per-qubit order.
    fn close(&self, vals: &mut [u64], done: &mut u64) {
        loop {
            let mut changed = false;
            for (t, h) in self.hs.iter().enumerate() {
                if *done >> t & 1 == 1 || vals[h.q] != h.ell {
                    continue;
                }
                let earlier_pending = self.hs[..t].iter().enumerate().any(|(s, e)| e.q == h.q && *done >> s & 1 == 0);
                if earlier_pending {
                    continue;
                }
                vals[h.q] = h.fresh;
                *done |= 1 << t;
                changed = true;
            }
            if !changed {
                break;
            }
        }
    }

    fn goal_of(&self, q: usize, done: u64) -> u64 {
        for (t, h) in self.hs.iter().enumerate() {
            if h.q == q && done >> t & 1 == 0 {
                return h.ell;
            }
        }
        self.end[q]
    }

    fn h(&self, vals: &[u64], done: u64) -> usize {
        (0..vals.len()).filter(|&q| vals[q] != self.goal_of(q, done)).count()
    }

    fn dfs(&mut self, vals: &[u64], done: u64, last: Option<(usize, usize)>, g: usize, bound: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        if g + self.h(vals, done) > bound {
            return Some(false);
        }
        let full = (1u64 << self.hs.len()) - 1;
        if done == full && vals == self.end {
            return Some(true);
        }
        let key = (vals.to_vec(), done, last);
        if self.tt.get(&key).is_some_and(|&d| d <= g) {
            return Some(false);
        }
        self.tt.insert(key, g);
        let n = vals.len();
        let mut next = vals.to_vec();
        for a in 0..n {
            if vals[a] == 0 {
                continue;
            }
            for b in 0..n {
                if a == b {
                    continue;
                }
                if let Some((c, t)) = last {
                    // Commuting neighbours are only tried in one order.
                    if (a, b) == (c, t) || (a != t && b != c && (a, b) < (c, t)) {
                        continue;
                    }
                }
                next.copy_from_slice(vals);
                next[b] ^= vals[a];
                let mut d2 = done;
                self.close(&mut next, &mut d2);
                let last2 = if d2 == done { Some((a, b)) } else { None };
                self.path.push((a, b));
                match self.dfs(&next.clone(), d2, last2, g + 1, bound) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                self.path.pop();
            }
        }
        Some(false)
    }
}

/// Shortest CX list (at most `limit` gates) taking `start` to `end` while
/// meeting every checkpoint, found by iterative deepening. `None` if no such
/// list exists within the limit or the node budget runs out.
pub fn window_search(start: &[u64], end: &[u64], hs: &[Checkpoint], limit: usize, budget: u64) -> Option<Vec<(usize, usize)>> {
    assert!(hs.len() < 64, "too many checkpoints in one window");
    let mut s = Search { end, hs, nodes: 0, budget, tt: HashMap::new(), path: Vec::new() };
    let mut v0 = start.to_vec();
    let mut d0 = 0u64;
    s.close(&mut v0, &mut d0);
    for bound in s.h(&v0, d0)..=limit {
        s.tt.clear();
        s.path.clear();
        match s.dfs(&v0, d0, None, 0, bound) {
            Some(true) => return Some(s.path),
            Some(false) => {}
            None => return None,
        }
    }
    None
}

/// Gate list for a search result, with each H placed as soon as its
/// checkpoint is met.
pub fn rebuild(start: &[u64], hs: &[Checkpoint], ops: &[(usize, usize)]) -> Vec<Gate> {
    let mut vals = start.to_vec();
    let mut done = 0u64;
    let mut out = Vec::new();
    let close = |vals: &mut Vec<u64>, done: &mut u64, out: &mut Vec<Gate>| loop {
        let mut changed = false;
        for (t, h) in hs.iter().enumerate() {
            if *done >> t & 1 == 1 || vals[h.q] != h.ell {
                continue;
            }
            if hs[..t].iter().enumerate().any(|(s, e)| e.q == h.q && *done >> s & 1 == 0) {
                continue;
            }
            vals[h.q] = h.fresh;
            *done |= 1 << t;
            out.push(Gate::h(h.q));
            changed = true;
        }
        if !changed {
            break;
        }
    };
    close(&mut vals, &mut done, &mut out);
    for &(a, b) in ops {
        vals[b] ^= vals[a];
        out.push(Gate::cx(a, b));
        close(&mut vals, &mut done, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_follow_cx_and_h() {
        let roles = vec![Role::AncillaZero, Role::LogicalInput];
        let gates = vec![Gate::cx(1, 0), Gate::h(1), Gate::cx(1, 0)];
        let v = linear_values(&roles, &gates).unwrap();
        assert_eq!(v.before(0), &[0, 0b10]);
        assert_eq!(v.before(1), &[0b10, 0b10]);
        assert_eq!(v.last(), &[0b110, 0b100]);
    }

    #[test]
    fn window_search_finds_shorter_equivalent() {
        // CX(0,1) CX(1,2) CX(0,1) on inputs: same as CX(1,2) CX(0,2).
        let roles = vec![Role::LogicalInput; 3];
        let gates = vec![Gate::cx(0, 1), Gate::cx(1, 2), Gate::cx(0, 1)];
        let v = linear_values(&roles, &gates).unwrap();
        let ops = window_search(v.before(0), v.last(), &[], 2, 10_000).unwrap();
        assert_eq!(ops.len(), 2);
        let rebuilt = rebuild(v.before(0), &[], &ops);
        assert_eq!(linear_values(&roles, &rebuilt).unwrap().last(), v.last());
    }
}
