//! Packed bit vectors over F2.

use std::fmt;

const W: usize = 64;

/// A fixed-length vector of bits, packed into 64-bit words. Bit 0 is the
/// first (leftmost when printed) position.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits { len, words: vec![0; len.div_ceil(W)] }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(it: I) -> Self {
        let v: Vec<bool> = it.into_iter().collect();
        let mut b = Bits::zeros(v.len());
        for (i, x) in v.into_iter().enumerate() {
            b.set(i, x);
        }
        b
    }

    /// Parse a string of '0'/'1' characters (other characters are rejected).
    pub fn parse(s: &str) -> Option<Self> {
        let mut out = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                _ => return None,
            }
        }
        Some(Bits::from_bools(out))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / W] >> (i % W)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let m = 1u64 << (i % W);
        if v {
            self.words[i / W] |= m;
        } else {
            self.words[i / W] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / W] ^= 1u64 << (i % W);
    }

    pub fn swap(&mut self, i: usize, j: usize) {
        let (a, b) = (self.get(i), self.get(j));
        self.set(i, b);
        self.set(j, a);
    }

    pub fn xor_assign(&mut self, other: &Bits) {
        assert_eq!(self.len, other.len, "bit length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.xor_assign(other);
        r
    }

    pub fn and_count(&self, other: &Bits) -> u32 {
        assert_eq!(self.len, other.len, "bit length mismatch");
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum()
    }

    /// Inner product over F2.
    pub fn dot(&self, other: &Bits) -> bool {
        self.and_count(other) % 2 == 1
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn any(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Bits `[start, start+len)` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> Bits {
        Bits::from_bools((start..start + len).map(|i| self.get(i)))
    }

    pub fn concat(&self, other: &Bits) -> Bits {
        Bits::from_bools(self.iter().chain(other.iter()))
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({self})")
    }
}

/// Dense row-major matrix over F2.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<Bits>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { cols, rows: vec![Bits::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    /// Build from rows; every row must have `cols` bits.
    pub fn from_rows(cols: usize, rows: Vec<Bits>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row width mismatch");
        }
        BitMatrix { cols, rows }
    }

    /// Parse rows written as '0'/'1' strings.
    pub fn parse_rows(rows: &[&str]) -> Option<Self> {
        let parsed: Option<Vec<Bits>> = rows.iter().map(|r| Bits::parse(r)).collect();
        let parsed = parsed?;
        let cols = parsed.first().map_or(0, |r| r.len());
        if parsed.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(BitMatrix { cols, rows: parsed })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v)
    }

    pub fn row(&self, r: usize) -> &Bits {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    pub fn row_mut(&mut self, r: usize) -> &mut Bits {
        &mut self.rows[r]
    }

    /// `row[dst] ^= row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let s = self.rows[src].clone();
        self.rows[dst].xor_assign(&s);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.rows {
            r.swap(a, b);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows.len(), "matrix shape mismatch");
        let mut out = BitMatrix::zeros(self.rows.len(), other.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for k in r.ones() {
                out.rows[i].xor_assign(&other.rows[k]);
            }
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows.len(), other.rows.len());
        assert_eq!(self.cols, other.cols);
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.xor(b)).collect();
        BitMatrix { cols: self.cols, rows }
    }

    /// Sub-block with rows `[r0, r0+nr)` and columns `[c0, c0+nc)`.
    pub fn block(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> BitMatrix {
        let rows = (r0..r0 + nr).map(|r| self.rows[r].slice(c0, nc)).collect();
        BitMatrix { cols: nc, rows }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..m.rows.len()).find(|&r| m.rows[r].get(c)) else { continue };
            m.rows.swap(rank, p);
            for r in 0..m.rows.len() {
                if r != rank && m.rows[r].get(c) {
                    m.add_row(rank, r);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows.len() == self.cols && self.rank() == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.rows.len() == self.cols && self.rows.iter().enumerate().all(|(i, r)| r.count_ones() == 1 && r.get(i))
    }
}

impl std::fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let b = Bits::parse("01101001").unwrap();
        assert_eq!(b.to_string(), "01101001");
        assert_eq!(b.count_ones(), 4);
        assert!(Bits::parse("01a").is_none());
    }

    #[test]
    fn multiword() {
        let mut b = Bits::zeros(130);
        b.set(0, true);
        b.set(64, true);
        b.set(129, true);
        assert_eq!(b.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        let c = b.xor(&b);
        assert!(!c.any());
    }

    #[test]
    fn rank_of_identity_and_singular() {
        assert_eq!(BitMatrix::identity(5).rank(), 5);
        let m = BitMatrix::parse_rows(&["110", "011", "101"]).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(!m.is_invertible());
    }

    #[test]
    fn transpose_mul() {
        let a = BitMatrix::parse_rows(&["110", "011"]).unwrap();
        let t = a.transpose();
        assert_eq!(t.to_string(), "10\n11\n01");
        assert_eq!(a.mul(&t).to_string(), "01\n10");
    }
}
