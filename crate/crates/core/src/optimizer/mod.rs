//! Circuit optimization: a rewrite-rule engine, CNOT-block extraction and
//! resynthesis over invertible F2 matrices, and a value-level search across
//! Hadamard checkpoints.

pub mod dataflow;
pub mod engine;
pub mod frame;
pub mod linear;
pub mod rules;
pub mod unitary;

use std::collections::{BTreeMap, HashSet};
use std::ops::Range;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateCounts, GateKind};
use crate::error::{Error, Result};
use crate::simulator::{circuits_equivalent, Scope};

pub use dataflow::{linear_values, rebuild, window_search, Checkpoint, Values};
use engine::{cancel_gates, cx_moves, elide_gates, hadamard_ancilla_gates};
pub use engine::{two_qubit_count, Engine};
pub use linear::{block_to_matrix, gaussian_reduction, reduction_to_circuit, resynthesize, search_reduction, LinearMatrix, Strategy};
pub use rules::{ensure_sound, registry, RuleId, SoundnessReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Rewrite rules only.
    #[default]
    Rules,
    /// Rules, then block resynthesis and windowed search, repeated.
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rules" => Ok(Level::Rules),
            "full" => Ok(Level::Full),
            _ => Err(Error::Circuit(format!("unknown level '{s}' (expected rules or full)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetGates {
    #[serde(rename = "cnot-h")]
    CnotH,
}

impl FromStr for TargetGates {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cnot-h" | "cnot_h" => Ok(TargetGates::CnotH),
            _ => Err(Error::Circuit(format!("unknown target gate set '{s}' (expected cnot-h)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizeConfig {
    pub level: Level,
    /// Node budget for each resynthesis search.
    pub search_budget: u64,
    pub target_gates: Option<TargetGates>,
    /// Largest number of Hadamards spanned by one search window.
    pub window: usize,
    /// Random moves tried on the plateau after the deterministic passes.
    pub explore_iterations: usize,
    pub seed: u64,
    /// Stop as soon as the two-qubit count reaches this value.
    pub stop_at: Option<usize>,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        OptimizeConfig {
            level: Level::Rules,
            search_budget: 200_000,
            target_gates: Some(TargetGates::CnotH),
            window: 2,
            explore_iterations: 0,
            seed: 0,
            stop_at: None,
        }
    }
}

impl OptimizeConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Circuit(format!("bad optimizer config: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimizationReport {
    pub before: BTreeMap<String, usize>,
    pub after: BTreeMap<String, usize>,
    pub two_qubit_before: usize,
    pub two_qubit_after: usize,
    pub rules_fired: BTreeMap<String, usize>,
    pub blocks_resynthesized: usize,
    pub windows_resynthesized: usize,
    pub explore_iterations: usize,
    pub verified: bool,
}

impl OptimizationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn counts_map(c: &GateCounts) -> BTreeMap<String, usize> {
    c.0.iter().map(|(k, v)| (k.name().to_string(), *v)).collect()
}

fn finish(c: &Circuit, e: Engine) -> Circuit {
    let mut out = c.clone();
    out.gates = e.gates;
    out.pauli_frame = if e.frame.is_identity_up_to_phase() { None } else { Some(e.frame) };
    out
}

fn rules_engine(c: &Circuit, config: &OptimizeConfig) -> Engine {
    ensure_sound();
    let mut e = Engine::new(c.roles.clone(), c.gates.clone(), c.pauli_frame.clone());
    e.split_cy();
    e.elide();
    e.merge_phases();
    e.sweep_paulis();
    e.convert_cz(config.target_gates == Some(TargetGates::CnotH));
    e.sweep_paulis();
    e.cancel();
    e.hill_climb();
    e
}

/// Rewrite-rule stage alone. The result carries any residual Pauli in its
/// frame.
pub fn apply_rules(c: &Circuit, config: &OptimizeConfig) -> Circuit {
    finish(c, rules_engine(c, config))
}

/// Single-qubit gates moved left past gates on other qubits, so CX gates
/// gather into longer runs.
pub fn gather_cnots(gates: &[Gate]) -> Vec<Gate> {
    let mut c = gates.to_vec();
    loop {
        let mut changed = false;
        for i in 1..c.len() {
            if c[i].kind.arity() == 1 && c[i - 1].kind == GateKind::CX && !c[i - 1].touches(c[i].q[0]) {
                c.swap(i - 1, i);
                changed = true;
            }
        }
        if !changed {
            return c;
        }
    }
}

/// Mirror of [`gather_cnots`]: single-qubit gates moved right.
pub fn gather_cnots_right(gates: &[Gate]) -> Vec<Gate> {
    let mut c = gates.to_vec();
    loop {
        let mut changed = false;
        for i in (1..c.len()).rev() {
            if c[i - 1].kind.arity() == 1 && c[i].kind == GateKind::CX && !c[i].touches(c[i - 1].q[0]) {
                c.swap(i - 1, i);
                changed = true;
            }
        }
        if !changed {
            return c;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnotBlock {
    /// Position in the gathered gate list.
    pub range: Range<usize>,
    pub gates: Vec<Gate>,
}

/// Maximal runs of CX gates after [`gather_cnots`].
pub fn extract_cnot_blocks(c: &Circuit) -> Vec<CnotBlock> {
    blocks_of(&gather_cnots(&c.gates))
}

fn blocks_of(gates: &[Gate]) -> Vec<CnotBlock> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, g) in gates.iter().chain(std::iter::once(&Gate::h(0))).enumerate() {
        match (g.kind == GateKind::CX && i < gates.len(), start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push(CnotBlock { range: s..i, gates: gates[s..i].to_vec() });
                start = None;
            }
            _ => {}
        }
    }
    out
}

/// Replace each CX block by a shorter equivalent when the search finds one.
fn resynthesize_blocks(n: usize, gates: &[Gate], budget: u64) -> Result<(Vec<Gate>, usize)> {
    let gathered = gather_cnots(gates);
    let blocks = blocks_of(&gathered);
    let mut out = Vec::with_capacity(gathered.len());
    let mut last = 0;
    let mut replaced = 0;
    for b in blocks {
        out.extend_from_slice(&gathered[last..b.range.start]);
        last = b.range.end;
        let m = block_to_matrix(n, &b.gates)?;
        let new =
            if b.gates.len() > 1 { search_reduction(&m, b.gates.len() - 1, budget).map(|ops| reduction_to_circuit(&ops)) } else { None };
        match new {
            Some(g) if g.len() < b.gates.len() => {
                out.extend(g);
                replaced += 1;
            }
            _ => out.extend(b.gates),
        }
    }
    out.extend_from_slice(&gathered[last..]);
    Ok((out, replaced))
}

/// Windows already shown to have no shorter rebuild within the budget.
pub type WindowMemo = HashSet<Vec<u64>>;

/// First window (spanning `w` Hadamards) whose CX gates can be rebuilt with
/// fewer, keeping every Hadamard checkpoint and the window's final values.
pub fn improve_window(c: &Circuit, gates: &[Gate], w: usize, budget: u64, memo: &mut WindowMemo) -> Option<Vec<Gate>> {
    let vals = linear_values(&c.roles, gates)?;
    let hidx: Vec<usize> = gates.iter().enumerate().filter(|(_, g)| g.kind == GateKind::H).map(|(i, _)| i).collect();
    if hidx.len() < w {
        return None;
    }
    // Window j runs from just after H number j-1 to just before H number j+w.
    for j in 0..=hidx.len() - w {
        let s = if j == 0 { 0 } else { hidx[j - 1] + 1 };
        let e = if j + w < hidx.len() { hidx[j + w] } else { gates.len() };
        let seg = &gates[s..e];
        if seg.iter().any(|g| !matches!(g.kind, GateKind::H | GateKind::CX)) {
            continue;
        }
        let ncx = seg.iter().filter(|g| g.kind == GateKind::CX).count();
        if ncx < 2 {
            continue;
        }
        let hs: Vec<Checkpoint> = (s..e)
            .filter(|&i| gates[i].kind == GateKind::H)
            .map(|i| {
                let q = gates[i].q[0];
                Checkpoint { q, ell: vals.before(i)[q], fresh: vals.before(i + 1)[q] }
            })
            .collect();
        let mut key: Vec<u64> = vals.before(s).to_vec();
        key.extend_from_slice(vals.before(e));
        key.extend(hs.iter().flat_map(|h| [h.q as u64, h.ell, h.fresh]));
        key.push(ncx as u64);
        if memo.contains(&key) {
            continue;
        }
        match window_search(vals.before(s), vals.before(e), &hs, ncx - 1, budget) {
            Some(ops) => {
                let mut out = gates[..s].to_vec();
                out.extend(rebuild(vals.before(s), &hs, &ops));
                out.extend_from_slice(&gates[e..]);
                return Some(out);
            }
            None => {
                memo.insert(key);
            }
        }
    }
    None
}

fn tidy(roles: &[crate::circuit::Role], gates: &[Gate]) -> Vec<Gate> {
    let (g, _) = elide_gates(roles, gates);
    let (g, _) = hadamard_ancilla_gates(roles, &g);
    cancel_gates(&g).0
}

fn reached(config: &OptimizeConfig, gates: &[Gate]) -> bool {
    config.stop_at.is_some_and(|t| two_qubit_count(gates) <= t)
}

/// Deterministic passes: block resynthesis and windowed search until
/// neither finds anything.
fn resynthesis_passes(
    c: &Circuit,
    e: &mut Engine,
    config: &OptimizeConfig,
    memo: &mut WindowMemo,
    stats: &mut (usize, usize),
) -> Result<()> {
    while !reached(config, &e.gates) {
        let (gates, replaced) = resynthesize_blocks(c.n, &e.gates, config.search_budget)?;
        if replaced > 0 && two_qubit_count(&gates) < two_qubit_count(&e.gates) {
            stats.0 += replaced;
            e.gates = gates;
            e.hill_climb();
            continue;
        }
        let found = (0..=config.window).find_map(|w| improve_window(c, &e.gates, w, config.search_budget, memo));
        match found {
            Some(gates) => {
                stats.1 += 1;
                e.gates = gates;
                e.hill_climb();
            }
            None => break,
        }
    }
    Ok(())
}

/// Random walk over equal-cost forms reached by CX moves and Hadamard
/// placement, with occasional one-gate uphill steps, trying small-window
/// rebuilds along the way. The best circuit seen is kept.
fn explore(c: &Circuit, e: &mut Engine, config: &OptimizeConfig, memo: &mut WindowMemo, stats: &mut (usize, usize)) -> (Vec<Gate>, usize) {
    let start = e.gates.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cur = start.to_vec();
    let mut best = cur.clone();
    let mut iterations = 0;
    let small = config.window.min(1);
    for _ in 0..config.explore_iterations {
        if reached(config, &best) {
            break;
        }
        iterations += 1;
        if rng.gen_bool(0.8) {
            let cxs: Vec<usize> = (0..cur.len()).filter(|&i| cur[i].kind == GateKind::CX).collect();
            if cxs.is_empty() {
                break;
            }
            let p = cxs[rng.gen_range(0..cxs.len())];
            let cands = cx_moves(&cur, p, rng.gen_bool(0.5));
            if cands.is_empty() {
                continue;
            }
            let (moved, fired) = &cands[rng.gen_range(0..cands.len())];
            let cand = tidy(&c.roles, moved);
            let slack = usize::from(rng.gen_bool(0.05));
            if two_qubit_count(&cand) <= two_qubit_count(&cur) + slack {
                cur = cand;
                for (r, k) in fired {
                    *e.fired.entry(r.name()).or_insert(0) += k;
                }
            }
        } else if rng.gen_bool(0.5) {
            cur = gather_cnots(&cur);
        } else {
            cur = gather_cnots_right(&cur);
        }
        for variant in [gather_cnots(&cur), gather_cnots_right(&cur)] {
            for w in 0..=small {
                if let Some(g) = improve_window(c, &variant, w, config.search_budget, memo) {
                    if two_qubit_count(&g) < two_qubit_count(&cur) {
                        stats.1 += 1;
                        cur = tidy(&c.roles, &g);
                    }
                }
            }
        }
        if two_qubit_count(&cur) < two_qubit_count(&best) {
            best = cur.clone();
        }
    }
    (best, iterations)
}

/// Rules, then (at the full level) block resynthesis and windowed search
/// until neither helps. The result is checked against the input by
/// simulation on every logical basis input; a mismatch is an error.
pub fn optimize(c: &Circuit, config: &OptimizeConfig) -> Result<(Circuit, OptimizationReport)> {
    c.validate()?;
    let before = c.gate_counts();
    let mut e = rules_engine(c, config);
    let mut stats = (0, 0);
    let mut explored = 0;
    if config.level == Level::Full {
        let mut memo = WindowMemo::new();
        resynthesis_passes(c, &mut e, config, &mut memo, &mut stats)?;
        if config.explore_iterations > 0 && !reached(config, &e.gates) {
            let (best, its) = explore(c, &mut e, config, &mut memo, &mut stats);
            explored = its;
            if two_qubit_count(&best) < two_qubit_count(&e.gates) {
                e.gates = best;
                if !reached(config, &e.gates) {
                    e.hill_climb();
                }
            }
        }
    }
    let rules_fired: BTreeMap<String, usize> = e.fired.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let mut out = finish(c, e);
    if two_qubit_count(&out.gates) > two_qubit_count(&c.gates) {
        out = c.clone();
    }
    if !circuits_equivalent(c, &out, Scope::AncillaRestricted, true)? {
        return Err(Error::Equivalence(format!("optimized '{}' differs from its input", c.name)));
    }
    let after = out.gate_counts();
    let report = OptimizationReport {
        before: counts_map(&before),
        after: counts_map(&after),
        two_qubit_before: before.two_qubit(),
        two_qubit_after: after.two_qubit(),
        rules_fired,
        blocks_resynthesized: stats.0,
        windows_resynthesized: stats.1,
        explore_iterations: explored,
        verified: true,
    };
    Ok((out, report))
}
