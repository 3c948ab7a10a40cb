//! Syndromes of Pauli errors and single-error lookup decoding.

use std::collections::HashMap;
use std::fmt;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::pauli::PauliString;

/// Bit `i` is 1 iff the error anticommutes with generator `i`. Rendered with
/// generator 1 as the most significant bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syndrome(pub Bits);

impl Syndrome {
    pub fn value(&self) -> u64 {
        self.0.iter().fold(0, |v, b| (v << 1) | b as u64)
    }

    pub fn is_zero(&self) -> bool {
        !self.0.any()
    }

    pub fn from_value(value: u64, len: usize) -> Syndrome {
        Syndrome(Bits::from_bools((0..len).map(|i| value >> (len - 1 - i) & 1 == 1)))
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn syndrome_of(e: &PauliString, gens: &[PauliString]) -> Result<Syndrome> {
    let mut bits = Bits::zeros(gens.len());
    for (i, g) in gens.iter().enumerate() {
        bits.set(i, !e.commutes(g)?);
    }
    Ok(Syndrome(bits))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded {
    Correction(PauliString),
    Uncorrectable,
}

#[derive(Clone, Debug)]
pub struct SyndromeTable {
    /// Rows in the order X1, Z1, Y1, X2, ..., Yn, then the identity.
    pub entries: Vec<(PauliString, Syndrome)>,
    inverse: HashMap<Syndrome, usize>,
    m: usize,
}

impl SyndromeTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, s: &Syndrome) -> Option<&PauliString> {
        self.inverse.get(s).map(|&i| &self.entries[i].0)
    }

    /// Aligned text: error, syndrome bits, decimal value.
    pub fn to_table(&self) -> String {
        let n = self.entries.first().map_or(0, |e| e.0.n());
        let head_err = "Error";
        let mut s = format!("{:<w$}  {:<m$}  {}\n", head_err, "Syndrome", "Decimal", w = (2 * n).max(head_err.len()), m = self.m.max(8));
        for (e, syn) in &self.entries {
            let spaced: Vec<String> = (0..e.n()).map(|q| e.letter(q).to_string()).collect();
            s.push_str(&format!(
                "{:<w$}  {:<m$}  {}\n",
                spaced.join(" "),
                syn.to_string(),
                syn.value(),
                w = (2 * n).max(head_err.len()),
                m = self.m.max(8)
            ));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(e, s)| serde_json::json!({"error": e.to_string(), "syndrome": s.to_string(), "decimal": s.value()}))
            .collect();
        serde_json::to_string_pretty(&rows).expect("tables serialize")
    }
}

/// All weight-1 X/Z/Y errors plus the identity; syndromes must be distinct.
pub fn build_syndrome_table(gens: &[PauliString]) -> Result<SyndromeTable> {
    let n = gens.first().map(|g| g.n()).ok_or(Error::Dimension { expected: 1, found: 0 })?;
    let mut entries = Vec::with_capacity(3 * n + 1);
    for q in 0..n {
        for l in ['X', 'Z', 'Y'] {
            let e = PauliString::single(n, q, l)?;
            let s = syndrome_of(&e, gens)?;
            entries.push((e, s));
        }
    }
    let id = PauliString::identity(n);
    let s = syndrome_of(&id, gens)?;
    entries.push((id, s));
    let mut inverse: HashMap<Syndrome, usize> = HashMap::new();
    for (i, (e, s)) in entries.iter().enumerate() {
        if let Some(&j) = inverse.get(s) {
            let other = &entries[j].0;
            return Err(Error::SyndromeCollision { a: other.to_string(), b: e.to_string(), syndrome: s.to_string() });
        }
        inverse.insert(s.clone(), i);
    }
    Ok(SyndromeTable { entries, inverse, m: gens.len() })
}

pub fn decode(s: &Syndrome, t: &SyndromeTable) -> Decoded {
    match t.lookup(s) {
        Some(p) => Decoded::Correction(p.clone()),
        None => Decoded::Uncorrectable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collision_is_reported() {
        let gens: Vec<PauliString> = ["XX", "ZZ"].iter().map(|s| s.parse().unwrap()).collect();
        match build_syndrome_table(&gens) {
            Err(Error::SyndromeCollision { a, b, .. }) => {
                assert_eq!(a, "XI");
                assert_eq!(b, "IX");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syndrome_values() {
        let s = Syndrome::from_value(6, 5);
        assert_eq!(s.to_string(), "00110");
        assert_eq!(s.value(), 6);
    }
}
