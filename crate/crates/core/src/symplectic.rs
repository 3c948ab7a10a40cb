//! Check matrices, reduction to standard form, and logical operators.

use crate::bits::{BitMatrix, Bits};
use crate::error::{Error, Result};
use crate::pauli::PauliString;

/// (n-k) x 2n check matrix with per-row signs (`phase_exp` 0 or 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckMatrix {
    pub n: usize,
    pub k: usize,
    pub rows: BitMatrix,
    pub signs: Vec<u8>,
}

impl CheckMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.n_rows()
    }

    pub fn x_part(&self) -> BitMatrix {
        self.rows.block(0, self.n_rows(), 0, self.n)
    }

    pub fn z_part(&self) -> BitMatrix {
        self.rows.block(0, self.n_rows(), self.n, self.n)
    }

    /// Row `i` as a signed Pauli string.
    pub fn generator(&self, i: usize) -> PauliString {
        PauliString::from_symplectic_row(self.rows.row(i)).expect("check matrix rows have even width").with_phase(self.signs[i])
    }

    pub fn generators(&self) -> Vec<PauliString> {
        (0..self.n_rows()).map(|i| self.generator(i)).collect()
    }

    /// Rows formatted as `xxxx|zzzz`.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.n_rows())
            .map(|i| {
                let r = self.rows.row(i);
                format!("{}|{}", r.slice(0, self.n), r.slice(self.n, self.n))
            })
            .collect()
    }
}

/// Validate generators and lay them out as a check matrix.
pub fn build_check_matrix(generators: &[PauliString]) -> Result<CheckMatrix> {
    let Some(first) = generators.first() else {
        return Err(Error::Dimension { expected: 1, found: 0 });
    };
    let n = first.n();
    for (i, g) in generators.iter().enumerate() {
        if g.n() != n {
            return Err(Error::Dimension { expected: n, found: g.n() });
        }
        if !g.is_hermitian() {
            return Err(Error::NonHermitian { index: i + 1, phase_exp: g.phase_exp() });
        }
    }
    if generators.len() > n {
        return Err(Error::RankDeficient { rank: n, expected: generators.len() });
    }
    for a in 0..generators.len() {
        for b in a + 1..generators.len() {
            if generators[a].anticommutes_unchecked(&generators[b]) {
                return Err(Error::NonCommuting { a: a + 1, b: b + 1 });
            }
        }
    }
    let rows = BitMatrix::from_rows(2 * n, generators.iter().map(|g| g.to_symplectic_row()).collect());
    let rank = rows.rank();
    if rank != generators.len() {
        return Err(Error::RankDeficient { rank, expected: generators.len() });
    }
    Ok(CheckMatrix { n, k: n - generators.len(), rows, signs: generators.iter().map(|g| g.phase_exp()).collect() })
}

/// Block-diagonal check matrix `[H1 | 0 ; 0 | H2]` of a CSS code.
pub fn css_check_matrix(h1: &BitMatrix, h2: &BitMatrix) -> Result<CheckMatrix> {
    let n = if h1.n_rows() > 0 { h1.n_cols() } else { h2.n_cols() };
    for (m, _) in [(h1, 0), (h2, 1)] {
        if m.n_rows() > 0 && m.n_cols() != n {
            return Err(Error::Dimension { expected: n, found: m.n_cols() });
        }
    }
    for (a, ra) in h2.rows().iter().enumerate() {
        for (b, rb) in h1.rows().iter().enumerate() {
            if ra.dot(rb) {
                return Err(Error::NotOrthogonal { a: a + 1, b: b + 1 });
            }
        }
    }
    let zero = Bits::zeros(n);
    let mut gens = Vec::new();
    for r in h1.rows() {
        gens.push(PauliString::from_bits(r.clone(), zero.clone(), 0)?);
    }
    for r in h2.rows() {
        gens.push(PauliString::from_bits(zero.clone(), r.clone(), 0)?);
    }
    build_check_matrix(&gens)
}

/// The sub-blocks of a standard-form check matrix. With `m = n-k`:
///
/// ```text
/// [ I  A1 A2 | B  C1 C2 ]   r rows
/// [ 0  0  0  | D  I  E  ]   m-r rows
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    pub a1: BitMatrix,
    pub a2: BitMatrix,
    pub b: BitMatrix,
    pub c1: BitMatrix,
    pub c2: BitMatrix,
    pub d: BitMatrix,
    pub e: BitMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    /// Reduced rows in the permuted qubit order; `signs` are the regenerated
    /// signs of each row.
    pub base: CheckMatrix,
    /// Rank of the X part.
    pub r: usize,
    /// `qubit_perm[j]` is the original (0-based) qubit now at position `j`.
    pub qubit_perm: Vec<usize>,
    /// Sorted original generator indices (0-based) whose product gives each row.
    pub row_recipe: Vec<Vec<usize>>,
}

/// How the sign of each reduced row is treated by downstream synthesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignPolicy {
    /// Every reduced row is taken with sign +1 (the binary formalism's
    /// convention; the resulting code may differ from the input generators'
    /// code by a Pauli frame).
    #[default]
    Canonical,
    /// Refuse when any regenerated sign is -1.
    Strict,
    /// Use regenerated signs; the encoder appends a Pauli correction.
    Regenerated,
}

impl StandardForm {
    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn k(&self) -> usize {
        self.base.k
    }

    pub fn m(&self) -> usize {
        self.base.n - self.base.k
    }

    /// Rows with sign +1.
    pub fn canonical_generators(&self) -> Vec<PauliString> {
        self.base.generators().into_iter().map(|g| g.with_phase(0)).collect()
    }

    /// Rows with their regenerated signs.
    pub fn regenerated_generators(&self) -> Vec<PauliString> {
        self.base.generators()
    }

    pub fn generators(&self, policy: SignPolicy) -> Result<Vec<PauliString>> {
        match policy {
            SignPolicy::Canonical => Ok(self.canonical_generators()),
            SignPolicy::Regenerated => Ok(self.regenerated_generators()),
            SignPolicy::Strict => {
                if let Some(row) = self.base.signs.iter().position(|&s| s != 0) {
                    return Err(Error::NegativeSign {
                        row: row + 1,
                        detail: format!(
                            "product of generators {:?} is -{}",
                            self.row_recipe[row].iter().map(|i| i + 1).collect::<Vec<_>>(),
                            self.base.generator(row).with_phase(0)
                        ),
                    });
                }
                Ok(self.canonical_generators())
            }
        }
    }

    pub fn negative_rows(&self) -> Vec<usize> {
        self.base.signs.iter().enumerate().filter(|(_, &s)| s != 0).map(|(i, _)| i).collect()
    }

    pub fn blocks(&self) -> Blocks {
        extract_blocks(self)
    }
}

/// Reduce a check matrix to standard form by Gaussian elimination.
pub fn standard_form(h: &CheckMatrix) -> StandardForm {
    let n = h.n;
    let m = h.n_rows();
    let mut rows = h.rows.clone();
    let mut recipe: Vec<Bits> = (0..m)
        .map(|i| {
            let mut b = Bits::zeros(m);
            b.set(i, true);
            b
        })
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();

    let add = |rows: &mut BitMatrix, recipe: &mut Vec<Bits>, src: usize, dst: usize| {
        rows.add_row(src, dst);
        let s = recipe[src].clone();
        recipe[dst].xor_assign(&s);
    };
    let swap_qubits = |rows: &mut BitMatrix, perm: &mut Vec<usize>, a: usize, b: usize| {
        rows.swap_cols(a, b);
        rows.swap_cols(a + n, b + n);
        perm.swap(a, b);
    };

    // X part: full reduction over all rows.
    let mut r = 0;
    let mut col = 0;
    while r < m && col < n {
        let Some(p) = (r..m).find(|&i| rows.get(i, col)) else {
            let cand = (col + 1..n).find(|&c| (r..m).any(|i| rows.get(i, c)));
            match cand {
                Some(c) => {
                    swap_qubits(&mut rows, &mut perm, col, c);
                    continue;
                }
                None => break,
            }
        };
        if p != r {
            rows.swap_rows(p, r);
            recipe.swap(p, r);
        }
        for i in 0..m {
            if i != r && rows.get(i, col) {
                add(&mut rows, &mut recipe, r, i);
            }
        }
        r += 1;
        col += 1;
    }

    // Z part of the remaining rows, columns r.. only.
    let mut s = r;
    let mut col = r;
    while s < m && col < n {
        let Some(p) = (s..m).find(|&i| rows.get(i, n + col)) else {
            let cand = (col + 1..n).find(|&c| (s..m).any(|i| rows.get(i, n + c)));
            match cand {
                Some(c) => {
                    swap_qubits(&mut rows, &mut perm, col, c);
                    continue;
                }
                None => break,
            }
        };
        if p != s {
            rows.swap_rows(p, s);
            recipe.swap(p, s);
        }
        for i in r..m {
            if i != s && rows.get(i, n + col) {
                add(&mut rows, &mut recipe, s, i);
            }
        }
        s += 1;
        col += 1;
    }

    // Regenerate signs from the original generators in the permuted frame.
    let originals: Vec<PauliString> = h.generators().iter().map(|g| g.permuted(&inverse(&perm))).collect();
    let mut signs = Vec::with_capacity(m);
    let mut recipes = Vec::with_capacity(m);
    for (i, rec) in recipe.iter().enumerate() {
        let idx: Vec<usize> = rec.ones().collect();
        let mut p = PauliString::identity(n);
        for &j in &idx {
            p = p.multiply(&originals[j]).expect("same width");
        }
        debug_assert_eq!(&p.to_symplectic_row(), rows.row(i));
        signs.push(p.phase_exp());
        recipes.push(idx);
    }

    StandardForm { base: CheckMatrix { n, k: h.k, rows, signs }, r, qubit_perm: perm, row_recipe: recipes }
}

/// `inv[perm[j]] = j`.
pub fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (j, &p) in perm.iter().enumerate() {
        inv[p] = j;
    }
    inv
}

pub fn extract_blocks(s: &StandardForm) -> Blocks {
    let (n, k, r) = (s.n(), s.k(), s.r);
    let m = n - k;
    let rows = &s.base.rows;
    Blocks {
        a1: rows.block(0, r, r, m - r),
        a2: rows.block(0, r, m, k),
        b: rows.block(0, r, n, r),
        c1: rows.block(0, r, n + r, m - r),
        c2: rows.block(0, r, n + m, k),
        d: rows.block(r, m - r, n, r),
        e: rows.block(r, m - r, n + m, k),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalOperators {
    pub xbar: Vec<PauliString>,
    pub zbar: Vec<PauliString>,
}

/// `Xbar = [0 E^T I | (E^T C1^T + C2^T) 0 0]`, `Zbar = [0 0 0 | A2^T 0 I]`.
pub fn logical_operators(s: &StandardForm) -> LogicalOperators {
    let (n, k, r) = (s.n(), s.k(), s.r);
    let m = n - k;
    let b = s.blocks();
    let et = b.e.transpose();
    let v1 = et.mul(&b.c1.transpose()).add(&b.c2.transpose());
    let a2t = b.a2.transpose();
    let mut xbar = Vec::with_capacity(k);
    let mut zbar = Vec::with_capacity(k);
    for i in 0..k {
        let mut x = Bits::zeros(n);
        let mut z = Bits::zeros(n);
        for j in 0..m - r {
            x.set(r + j, et.get(i, j));
        }
        x.set(m + i, true);
        for j in 0..r {
            z.set(j, v1.get(i, j));
        }
        xbar.push(PauliString::from_bits(x, z, 0).expect("equal widths"));

        let x = Bits::zeros(n);
        let mut z = Bits::zeros(n);
        for j in 0..r {
            z.set(j, a2t.get(i, j));
        }
        z.set(m + i, true);
        zbar.push(PauliString::from_bits(x, z, 0).expect("equal widths"));
    }
    LogicalOperators { xbar, zbar }
}

/// Solve `A v = b` over F2; returns one solution if any exists.
pub fn solve(a: &BitMatrix, b: &Bits) -> Option<Bits> {
    let (rows, cols) = (a.n_rows(), a.n_cols());
    let mut aug = BitMatrix::zeros(rows, cols + 1);
    for i in 0..rows {
        for j in a.row(i).ones() {
            aug.set(i, j, true);
        }
        aug.set(i, cols, b.get(i));
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| aug.get(i, c)) else { continue };
        aug.swap_rows(p, r);
        for i in 0..rows {
            if i != r && aug.get(i, c) {
                aug.add_row(r, i);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..rows).any(|i| aug.get(i, cols)) {
        return None;
    }
    let mut v = Bits::zeros(cols);
    for (i, &c) in pivots.iter().enumerate() {
        v.set(c, aug.get(i, cols));
    }
    Some(v)
}

/// A Pauli that anticommutes exactly with the generators flagged in `flip`
/// and commutes with the rest.
pub fn sign_flipper(gens: &[PauliString], flip: &[bool]) -> Option<PauliString> {
    let n = gens.first()?.n();
    // <v, g> = v_x . g_z + v_z . g_x, so the system rows are g with halves swapped.
    let a = BitMatrix::from_rows(2 * n, gens.iter().map(|g| g.z().concat(g.x())).collect());
    let v = solve(&a, &Bits::from_bools(flip.iter().copied()))?;
    PauliString::from_symplectic_row(&v).ok()
}
