//! CNOT blocks as invertible matrices over F2, and their resynthesis.
//!
//! `CX(c -> t)` is the row operation `R_t <- R_t + R_c`. A block's matrix is
//! the product of its row operations applied to the identity in gate order.

use std::collections::HashMap;

use crate::bits::{BitMatrix, Bits};
use crate::circuit::{Gate, GateKind};
use crate::error::{Error, Result};

/// Invertible n x n matrix over F2, one `u64` per row (bit `j` = column `j`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMatrix {
    n: usize,
    rows: Vec<u64>,
}

impl LinearMatrix {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 64, "linear blocks are limited to 64 qubits");
        LinearMatrix { n, rows: (0..n).map(|i| 1u64 << i).collect() }
    }

    pub fn from_bit_matrix(m: &BitMatrix) -> Result<Self> {
        if m.n_rows() != m.n_cols() || m.n_cols() > 64 {
            return Err(Error::Dimension { expected: m.n_rows(), found: m.n_cols() });
        }
        let rows = m.rows().iter().map(|r| r.ones().fold(0u64, |a, j| a | 1 << j)).collect();
        let out = LinearMatrix { n: m.n_rows(), rows };
        if !out.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(out)
    }

    /// Rows written as '0'/'1' strings, column 1 first.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let m = BitMatrix::parse_rows(rows).ok_or(Error::Parse { pos: 0, msg: "malformed matrix rows".into() })?;
        LinearMatrix::from_bit_matrix(&m)
    }

    pub fn to_bit_matrix(&self) -> BitMatrix {
        let rows = self.rows.iter().map(|&r| Bits::from_bools((0..self.n).map(|j| r >> j & 1 == 1))).collect();
        BitMatrix::from_rows(self.n, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// `R_t <- R_t + R_c`.
    pub fn add_row(&mut self, c: usize, t: usize) {
        self.rows[t] ^= self.rows[c];
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }

    pub fn is_invertible(&self) -> bool {
        self.to_bit_matrix().is_invertible()
    }
}

impl std::fmt::Display for LinearMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_bit_matrix())
    }
}

/// Matrix of a CX-only block on `n` qubits.
pub fn block_to_matrix(n: usize, block: &[Gate]) -> Result<LinearMatrix> {
    let mut m = LinearMatrix::identity(n);
    for g in block {
        if g.kind != GateKind::CX {
            return Err(Error::Circuit(format!("{g} in a CNOT block")));
        }
        if g.q[0] >= n || g.q[1] >= n {
            return Err(Error::Dimension { expected: n, found: g.q[0].max(g.q[1]) + 1 });
        }
        m.add_row(g.q[0], g.q[1]);
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Gaussian,
    /// Iterative deepening bounded by a node budget.
    Search {
        budget: u64,
    },
}

/// Row operations `(c, t)` that reduce `m` to the identity: forward
/// elimination to upper-triangular form, then back substitution.
pub fn gaussian_reduction(m: &LinearMatrix) -> Result<Vec<(usize, usize)>> {
    let n = m.n;
    let mut a = m.clone();
    let mut ops = Vec::new();
    for c in 0..n {
        if a.rows[c] >> c & 1 == 0 {
            let p = (c + 1..n).find(|&r| a.rows[r] >> c & 1 == 1).ok_or(Error::Singular)?;
            a.add_row(p, c);
            ops.push((p, c));
        }
        for r in c + 1..n {
            if a.rows[r] >> c & 1 == 1 {
                a.add_row(c, r);
                ops.push((c, r));
            }
        }
    }
    for c in (0..n).rev() {
        for r in 0..c {
            if a.rows[r] >> c & 1 == 1 {
                a.add_row(c, r);
                ops.push((c, r));
            }
        }
    }
    debug_assert!(a.is_identity());
    Ok(ops)
}

/// A reduction sequence applied in reverse order is a circuit for `m`.
pub fn reduction_to_circuit(ops: &[(usize, usize)]) -> Vec<Gate> {
    ops.iter().rev().map(|&(c, t)| Gate::cx(c, t)).collect()
}

type LastOp = Option<(usize, usize)>;

/// Shortest reduction found with at most `budget` node expansions, or `None`
/// if nothing shorter than `limit` operations was found.
///
/// Iterative deepening. A matrix, its inverse and both transposes need the
/// same number of operations, and each operation fixes at most one row, so
/// the largest count of wrong rows or columns among them is a lower bound.
pub fn search_reduction(m: &LinearMatrix, limit: usize, budget: u64) -> Option<Vec<(usize, usize)>> {
    let n = m.n;
    let wrong = |rows: &[u64]| {
        let mut r = 0;
        let mut cols = 0u64;
        for (i, &x) in rows.iter().enumerate() {
            let d = x ^ 1 << i;
            r += (d != 0) as u32;
            cols |= d;
        }
        r.max(cols.count_ones()) as usize
    };
    struct Ctx {
        n: usize,
        nodes: u64,
        budget: u64,
        seen: HashMap<(Vec<u64>, LastOp), usize>,
        path: Vec<(usize, usize)>,
    }
    fn dfs(ctx: &mut Ctx, a: &mut Vec<u64>, inv: &mut Vec<u64>, g: usize, bound: usize, wrong: &dyn Fn(&[u64]) -> usize) -> Option<bool> {
        ctx.nodes += 1;
        if ctx.nodes > ctx.budget {
            return None;
        }
        let hv = wrong(a).max(wrong(inv));
        if g + hv > bound {
            return Some(false);
        }
        if hv == 0 {
            return Some(true);
        }
        let key = (a.clone(), ctx.path.last().copied());
        match ctx.seen.get(&key) {
            Some(&d) if d <= g => return Some(false),
            _ => {
                ctx.seen.insert(key, g);
            }
        }
        for c in 0..ctx.n {
            for t in 0..ctx.n {
                if t == c {
                    continue;
                }
                // Commuting neighbours are explored in one order only.
                if let Some(&(pc, pt)) = ctx.path.last() {
                    if (pc, pt) == (c, t) || (pt != c && t != pc && (pc, pt) > (c, t)) {
                        continue;
                    }
                }
                // A <- E A, A^-1 <- A^-1 E: column c of the inverse gains column t.
                a[t] ^= a[c];
                let flip = |inv: &mut Vec<u64>| {
                    for r in inv.iter_mut() {
                        if *r >> t & 1 == 1 {
                            *r ^= 1 << c;
                        }
                    }
                };
                flip(inv);
                ctx.path.push((c, t));
                let r = dfs(ctx, a, inv, g + 1, bound, wrong);
                if r != Some(true) {
                    ctx.path.pop();
                    a[t] ^= a[c];
                    flip(inv);
                }
                match r {
                    Some(false) => {}
                    other => return other,
                }
            }
        }
        Some(false)
    }
    let mut a = m.rows.clone();
    let mut inv = inverse_rows(&m.rows)?;
    let mut ctx = Ctx { n, nodes: 0, budget, seen: HashMap::new(), path: Vec::new() };
    for bound in wrong(&a).max(wrong(&inv))..limit {
        ctx.seen.clear();
        match dfs(&mut ctx, &mut a, &mut inv, 0, bound, &wrong) {
            Some(true) => return Some(ctx.path),
            Some(false) => continue,
            None => return None,
        }
    }
    None
}

fn inverse_rows(rows: &[u64]) -> Option<Vec<u64>> {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r] >> c & 1 == 1)?;
        a.swap(c, p);
        inv.swap(c, p);
        for r in 0..n {
            if r != c && a[r] >> c & 1 == 1 {
                a[r] ^= a[c];
                inv[r] ^= inv[c];
            }
        }
    }
    Some(inv)
}

/// CNOT gates whose block matrix equals `m`. `Search` never returns more
/// gates than `Gaussian`.
pub fn resynthesize(m: &LinearMatrix, strategy: Strategy) -> Result<Vec<Gate>> {
    if !m.is_invertible() {
        return Err(Error::Singular);
    }
    let gauss = gaussian_reduction(m)?;
    let ops = match strategy {
        Strategy::Gaussian => gauss,
        Strategy::Search { budget } => search_reduction(m, gauss.len(), budget).unwrap_or(gauss),
    };
    Ok(reduction_to_circuit(&ops))
}
