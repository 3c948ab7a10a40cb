//! Pauli strings in letter form: `i^phase_exp * P_1 (x) ... (x) P_n` where each
//! `P_j` is one of I, X, Y, Z and `Y = iXZ`. Qubit 1 is the leftmost letter.

use std::fmt;
use std::str::FromStr;

use crate::bits::Bits;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: Bits,
    z: Bits,
    phase_exp: u8,
}

/// Exponent of `i` picked up by the single-qubit product `P(x1,z1) * P(x2,z2)`
/// in letter form.
#[inline]
fn g(x1: bool, z1: bool, x2: bool, z2: bool) -> i32 {
    let (x2i, z2i) = (x2 as i32, z2 as i32);
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => z2i - x2i,
        (true, false) => z2i * (2 * x2i - 1),
        (false, true) => x2i * (1 - 2 * z2i),
    }
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString { x: Bits::zeros(n), z: Bits::zeros(n), phase_exp: 0 }
    }

    pub fn from_bits(x: Bits, z: Bits, phase_exp: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::Dimension { expected: x.len(), found: z.len() });
        }
        Ok(PauliString { x, z, phase_exp: phase_exp % 4 })
    }

    /// Single-qubit Pauli `letter` on 0-based qubit `q` of an `n`-qubit register.
    pub fn single(n: usize, q: usize, letter: char) -> Result<Self> {
        let mut p = PauliString::identity(n);
        p.set_letter(q, letter)?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &Bits {
        &self.x
    }

    pub fn z(&self) -> &Bits {
        &self.z
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase_exp = phase_exp % 4;
        self
    }

    /// Multiply by `i^k`.
    pub fn times_i(mut self, k: u8) -> Self {
        self.phase_exp = (self.phase_exp + k) % 4;
        self
    }

    pub fn negated(self) -> Self {
        self.times_i(2)
    }

    pub fn letter(&self, q: usize) -> char {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    pub fn set_letter(&mut self, q: usize, letter: char) -> Result<()> {
        let (x, z) = match letter {
            'I' => (false, false),
            'X' => (true, false),
            'Z' => (false, true),
            'Y' => (true, true),
            _ => return Err(Error::Parse { pos: q, msg: format!("'{letter}' is not a Pauli letter") }),
        };
        self.x.set(q, x);
        self.z.set(q, z);
        Ok(())
    }

    pub fn weight(&self) -> usize {
        (0..self.n()).filter(|&q| self.x.get(q) || self.z.get(q)).count()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        !self.x.any() && !self.z.any()
    }

    /// Real sign (phase_exp 0 or 2).
    pub fn is_hermitian(&self) -> bool {
        self.phase_exp.is_multiple_of(2)
    }

    /// Number of Y letters.
    pub fn y_count(&self) -> u32 {
        self.x.and_count(&self.z)
    }

    fn check_dim(&self, other: &PauliString) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::Dimension { expected: self.n(), found: other.n() });
        }
        Ok(())
    }

    /// Phase-tracked product `self * other`.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_dim(other)?;
        let mut e = self.phase_exp as i32 + other.phase_exp as i32;
        for q in 0..self.n() {
            e += g(self.x.get(q), self.z.get(q), other.x.get(q), other.z.get(q));
        }
        Ok(PauliString { x: self.x.xor(&other.x), z: self.z.xor(&other.z), phase_exp: e.rem_euclid(4) as u8 })
    }

    /// Symplectic inner product is zero.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_dim(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    pub(crate) fn anticommutes_unchecked(&self, other: &PauliString) -> bool {
        (self.x.and_count(&other.z) + self.z.and_count(&other.x)) % 2 == 1
    }

    /// The `x | z` row of length 2n; phase is dropped.
    pub fn to_symplectic_row(&self) -> Bits {
        self.x.concat(&self.z)
    }

    pub fn from_symplectic_row(row: &Bits) -> Result<PauliString> {
        if !row.len().is_multiple_of(2) {
            return Err(Error::Dimension { expected: row.len() + 1, found: row.len() });
        }
        let n = row.len() / 2;
        Ok(PauliString { x: row.slice(0, n), z: row.slice(n, n), phase_exp: 0 })
    }

    /// Relabel qubits: the letter on qubit `q` moves to position `perm[q]`.
    pub fn permuted(&self, perm: &[usize]) -> PauliString {
        let mut out = PauliString::identity(self.n()).with_phase(self.phase_exp);
        for (q, &to) in perm.iter().enumerate().take(self.n()) {
            out.x.set(to, self.x.get(q));
            out.z.set(to, self.z.get(q));
        }
        out
    }

    /// Action on a computational basis label `b` (bit q = qubit q):
    /// returns `(i-exponent, new label)`.
    pub fn act_on_basis(&self, b: &Bits) -> (u8, Bits) {
        let sign = self.z.and_count(b) % 2;
        let e = self.phase_exp as u32 + self.y_count() + 2 * sign;
        ((e % 4) as u8, b.xor(&self.x))
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let (phase, body, offset) = if let Some(rest) = t.strip_prefix("-i") {
            (3, rest, 2)
        } else if let Some(rest) = t.strip_prefix("+i") {
            (1, rest, 2)
        } else if let Some(rest) = t.strip_prefix('i') {
            (1, rest, 1)
        } else if let Some(rest) = t.strip_prefix('-') {
            (2, rest, 1)
        } else if let Some(rest) = t.strip_prefix('+') {
            (0, rest, 1)
        } else {
            (0, t, 0)
        };
        if body.is_empty() {
            return Err(Error::Parse { pos: offset, msg: "empty Pauli string".into() });
        }
        let n = body.chars().count();
        let mut p = PauliString::identity(n).with_phase(phase);
        for (q, c) in body.chars().enumerate() {
            p.set_letter(q, c).map_err(|_| Error::Parse { pos: offset + q, msg: format!("unexpected character '{c}'") })?;
        }
        Ok(p)
    }
}

/// Free-function form of parsing.
pub fn parse_pauli(text: &str) -> Result<PauliString> {
    text.parse()
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["", "i", "-", "-i"][self.phase_exp as usize])?;
        for q in 0..self.n() {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn parse_generators() {
        let m1 = p("XXXXXXXX");
        assert_eq!(m1.x().to_string(), "11111111");
        assert_eq!(m1.z().to_string(), "00000000");
        assert_eq!(m1.phase_exp(), 0);
        let id = p("IIIIIIII");
        assert!(id.is_identity_up_to_phase());
        let m5 = p("IYXZXZIY");
        assert_eq!(m5.x().to_string(), "01101001");
        assert_eq!(m5.z().to_string(), "01010101");
        assert_eq!(m5.phase_exp(), 0);
    }

    #[test]
    fn parse_prefixes() {
        assert_eq!(p("iX").phase_exp(), 1);
        assert_eq!(p("-X").phase_exp(), 2);
        assert_eq!(p("-iX").phase_exp(), 3);
        assert_eq!(p("+Z").phase_exp(), 0);
        assert_eq!(p("-iXY").to_string(), "-iXY");
    }

    #[test]
    fn parse_errors_name_position() {
        match "XXQX".parse::<PauliString>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        match "-XA".parse::<PauliString>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!("".parse::<PauliString>().is_err());
        assert!("-".parse::<PauliString>().is_err());
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let r = p("X").multiply(&p("Z")).unwrap();
        assert_eq!(r.letter(0), 'Y');
        assert_eq!(r.phase_exp(), 3);
        let r = p("Z").multiply(&p("X")).unwrap();
        assert_eq!(r.phase_exp(), 1);
        let r = p("Y").multiply(&p("Y")).unwrap();
        assert!(r.is_identity_up_to_phase());
        assert_eq!(r.phase_exp(), 0);
    }

    #[test]
    fn generators_square_to_identity() {
        for g in ["XXXXXXXX", "ZZZZZZZZ", "IXIXYZYZ", "IXZYIXZY", "IYXZXZIY"] {
            let s = p(g).multiply(&p(g)).unwrap();
            assert!(s.is_identity_up_to_phase());
            assert_eq!(s.phase_exp(), 0);
        }
    }

    #[test]
    fn m1_m2_product() {
        let r = p("XXXXXXXX").multiply(&p("ZZZZZZZZ")).unwrap();
        assert_eq!(r.to_string(), "YYYYYYYY");
    }

    #[test]
    fn commutation() {
        assert!(!p("XIII").commutes(&p("ZIII")).unwrap());
        assert!(p("XXXXXXXX").commutes(&p("ZZZZZZZZ")).unwrap());
        assert!(!p("XIIIIIII").commutes(&p("ZZZZZZZZ")).unwrap());
        assert!(matches!(p("XX").commutes(&p("X")), Err(Error::Dimension { .. })));
    }

    #[test]
    fn symplectic_round_trip() {
        let m = p("IXZYIXZY");
        let row = m.to_symplectic_row();
        assert_eq!(row.to_string(), "0101010100110011");
        assert_eq!(PauliString::from_symplectic_row(&row).unwrap(), m);
    }

    #[test]
    fn basis_action() {
        // Y|0> = i|1>, Y|1> = -i|0>
        let y = p("Y");
        let (e, b) = y.act_on_basis(&Bits::parse("0").unwrap());
        assert_eq!((e, b.to_string().as_str()), (1, "1"));
        let (e, b) = y.act_on_basis(&Bits::parse("1").unwrap());
        assert_eq!((e, b.to_string().as_str()), (3, "0"));
    }
}
