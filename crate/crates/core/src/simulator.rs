//! Dense statevector simulation. Qubit 0 (printed as qubit 1) is the most
//! significant bit of the amplitude index, so labels read like `|10001110>`.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::bits::Bits;
use crate::circuit::{Circuit, Gate, GateKind, Role};
use crate::error::{Error, Result};
use crate::pauli::PauliString;

pub const TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn i_pow(e: u8) -> Complex64 {
    [ONE, I, -ONE, -I][(e % 4) as usize]
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(n: usize) -> Self {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Self {
        assert!(n < 31, "dense simulation limited to 30 qubits");
        let mut amps = vec![ZERO; 1 << n];
        amps[index] = ONE;
        StateVector { n, amps }
    }

    /// Basis state from a label such as `"00101011"`.
    pub fn from_label(label: &str) -> Result<Self> {
        let n = label.len();
        Ok(Self::basis(n, parse_label(label)?))
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1 << n {
            return Err(Error::Dimension { expected: 1 << n, found: amps.len() });
        }
        Ok(StateVector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, label: &str) -> Result<Complex64> {
        if label.len() != self.n {
            return Err(Error::Dimension { expected: self.n, found: label.len() });
        }
        Ok(self.amps[parse_label(label)?])
    }

    #[inline]
    fn mask(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let nrm = self.norm();
        if nrm < TOL {
            return Err(Error::ZeroNorm("cannot normalize the zero vector".into()));
        }
        for a in &mut self.amps {
            *a /= nrm;
        }
        Ok(())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> bool {
        self.n == other.n && self.amps.iter().zip(&other.amps).all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Unit `c` with `self == c * other` (within `tol`), if one exists.
    pub fn phase_relative_to(&self, other: &StateVector, tol: f64) -> Option<Complex64> {
        if self.n != other.n {
            return None;
        }
        let idx = other.amps.iter().position(|a| a.norm() > tol)?;
        let c = self.amps[idx] / other.amps[idx];
        if (c.norm() - 1.0).abs() > tol.max(1e-9) {
            return None;
        }
        let ok = self.amps.iter().zip(&other.amps).all(|(a, b)| (a - c * b).norm() <= tol);
        ok.then_some(c)
    }

    pub fn eq_up_to_global_phase(&self, other: &StateVector, tol: f64) -> bool {
        self.phase_relative_to(other, tol).is_some()
    }

    fn apply_1q(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let b = self.mask(q);
        for i in 0..self.amps.len() {
            if i & b == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | b]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | b] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    fn apply_controlled(&mut self, c: usize, t: usize, m: [[Complex64; 2]; 2]) {
        let (cb, tb) = (self.mask(c), self.mask(t));
        for i in 0..self.amps.len() {
            if i & cb != 0 && i & tb == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | tb]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | tb] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn apply_gate(&mut self, g: &Gate) {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let x = [[ZERO, ONE], [ONE, ZERO]];
        let y = [[ZERO, -I], [I, ZERO]];
        let z = [[ONE, ZERO], [ZERO, -ONE]];
        match g.kind {
            GateKind::H => self.apply_1q(g.q[0], [[h, h], [h, -h]]),
            GateKind::S => self.apply_1q(g.q[0], [[ONE, ZERO], [ZERO, I]]),
            GateKind::X => self.apply_1q(g.q[0], x),
            GateKind::Y => self.apply_1q(g.q[0], y),
            GateKind::Z => self.apply_1q(g.q[0], z),
            GateKind::CX => self.apply_controlled(g.q[0], g.q[1], x),
            GateKind::CY => self.apply_controlled(g.q[0], g.q[1], y),
            GateKind::CZ => self.apply_controlled(g.q[0], g.q[1], z),
        }
    }

    /// Apply a Pauli string (with its phase).
    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::Dimension { expected: self.n, found: p.n() });
        }
        let (xm, zm) = (self.index_mask(p.x()), self.index_mask(p.z()));
        let base = i_pow(p.phase_exp() + (p.y_count() % 4) as u8);
        let mut out = vec![ZERO; self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let s = if (i & zm).count_ones() % 2 == 1 { -base } else { base };
            out[i ^ xm] = s * a;
        }
        self.amps = out;
        Ok(())
    }

    fn index_mask(&self, bits: &Bits) -> usize {
        bits.ones().fold(0, |m, q| m | self.mask(q))
    }

    /// Append `m` qubits in |0> after the existing ones.
    pub fn extend_zeros(&self, m: usize) -> StateVector {
        let mut amps = vec![ZERO; 1 << (self.n + m)];
        for (i, a) in self.amps.iter().enumerate() {
            amps[i << m] = *a;
        }
        StateVector { n: self.n + m, amps }
    }

    /// Probability that qubit `q` reads 1.
    pub fn prob_one(&self, q: usize) -> f64 {
        let b = self.mask(q);
        self.amps.iter().enumerate().filter(|(i, _)| i & b != 0).map(|(_, a)| a.norm_sqr()).sum()
    }

    /// Non-negligible amplitudes as `(label, amplitude)` in index order.
    pub fn kets(&self, tol: f64) -> Vec<(String, Complex64)> {
        self.amps.iter().enumerate().filter(|(_, a)| a.norm() > tol).map(|(i, a)| (format_label(i, self.n), *a)).collect()
    }

    /// JSON object `{label: [re, im]}` of the non-negligible amplitudes.
    pub fn dump_json(&self, tol: f64) -> String {
        let map: serde_json::Map<String, serde_json::Value> =
            self.kets(tol).into_iter().map(|(l, a)| (l, serde_json::json!([a.re, a.im]))).collect();
        serde_json::to_string_pretty(&map).expect("amplitude maps serialize")
    }
}

pub fn parse_label(label: &str) -> Result<usize> {
    let mut idx = 0usize;
    for (pos, c) in label.chars().enumerate() {
        idx = (idx << 1)
            | match c {
                '0' => 0,
                '1' => 1,
                _ => return Err(Error::Parse { pos, msg: format!("'{c}' is not a bit") }),
            };
    }
    Ok(idx)
}

pub fn format_label(index: usize, n: usize) -> String {
    (0..n).map(|q| if index >> (n - 1 - q) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Apply every gate of `c`, then its Pauli frame.
pub fn run(c: &Circuit, input: &StateVector) -> Result<StateVector> {
    if input.n() != c.n {
        return Err(Error::Dimension { expected: c.n, found: input.n() });
    }
    let mut v = input.clone();
    for g in &c.gates {
        v.apply_gate(g);
    }
    if let Some(f) = &c.pauli_frame {
        v.apply_pauli(f)?;
    }
    Ok(v)
}

/// Basis input with ancillas at 0 and logical inputs set from `bits`
/// (in qubit order).
pub fn logical_input(c: &Circuit, bits: &[bool]) -> Result<StateVector> {
    let inputs = c.logical_inputs();
    if inputs.len() != bits.len() {
        return Err(Error::Dimension { expected: inputs.len(), found: bits.len() });
    }
    let mut idx = 0;
    for (&q, &b) in inputs.iter().zip(bits) {
        if b {
            idx |= 1 << (c.n - 1 - q);
        }
    }
    Ok(StateVector::basis(c.n, idx))
}

/// All `2^k` bit patterns, first bit most significant.
pub fn all_bit_patterns(k: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1usize << k).map(move |v| (0..k).map(|i| v >> (k - 1 - i) & 1 == 1).collect())
}

/// `run(c, logical_input(c, bits))`.
pub fn encode(c: &Circuit, bits: &[bool]) -> Result<StateVector> {
    run(c, &logical_input(c, bits)?)
}

/// `P |0...0>` for a Pauli `P`: a single basis amplitude.
fn pauli_on_zero(p: &PauliString) -> (usize, Complex64) {
    let n = p.n();
    let idx = p.x().ones().fold(0, |m, q| m | 1 << (n - 1 - q));
    (idx, i_pow(p.phase_exp() + (p.y_count() % 4) as u8))
}

/// `Xbar^bits * prod_i (I + g_i) |0...0>`, normalized. Built purely from the
/// Pauli algebra; no circuit is involved.
pub fn projector_encode_generators(gens: &[PauliString], xbar: &[PauliString], bits: &[bool]) -> Result<StateVector> {
    let n = gens.first().map(|g| g.n()).or_else(|| xbar.first().map(|x| x.n())).ok_or(Error::Dimension { expected: 1, found: 0 })?;
    if bits.len() != xbar.len() {
        return Err(Error::Dimension { expected: xbar.len(), found: bits.len() });
    }
    let mut lx = PauliString::identity(n);
    for (x, &b) in xbar.iter().zip(bits) {
        if b {
            lx = lx.multiply(x)?;
        }
    }
    let mut amps = vec![ZERO; 1 << n];
    let m = gens.len();
    for subset in 0..1usize << m {
        let mut p = lx.clone();
        for (i, g) in gens.iter().enumerate() {
            if subset >> i & 1 == 1 {
                p = p.multiply(g)?;
            }
        }
        let (idx, a) = pauli_on_zero(&p);
        amps[idx] += a;
    }
    let mut v = StateVector { n, amps };
    v.normalize().map_err(|_| Error::ZeroNorm("projector sum vanished; generator signs are inconsistent".into()))?;
    Ok(v)
}

/// `g v == v` within `TOL`.
pub fn check_stabilized(v: &StateVector, g: &PauliString) -> bool {
    let mut w = v.clone();
    if w.apply_pauli(g).is_err() {
        return false;
    }
    w.approx_eq(v, TOL)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// All `2^n` basis inputs.
    Full,
    /// Only inputs with every `ancilla_zero` qubit at |0>.
    AncillaRestricted,
}

/// Compare two circuits input by input. With `up_to_global_phase` one common
/// phase factor is allowed across all inputs.
pub fn circuits_equivalent(c1: &Circuit, c2: &Circuit, scope: Scope, up_to_global_phase: bool) -> Result<bool> {
    if c1.n != c2.n {
        return Err(Error::Dimension { expected: c1.n, found: c2.n });
    }
    let inputs: Vec<StateVector> = match scope {
        Scope::Full => (0..1usize << c1.n).map(|i| StateVector::basis(c1.n, i)).collect(),
        Scope::AncillaRestricted => {
            if c1.roles != c2.roles {
                return Err(Error::Circuit("circuits have different qubit roles".into()));
            }
            let k = c1.logical_inputs().len();
            all_bit_patterns(k).map(|b| logical_input(c1, &b)).collect::<Result<_>>()?
        }
    };
    let mut phase: Option<Complex64> = None;
    for input in &inputs {
        let (a, b) = (run(c1, input)?, run(c2, input)?);
        if !up_to_global_phase {
            if !a.approx_eq(&b, TOL) {
                return Ok(false);
            }
            continue;
        }
        match phase {
            None => match a.phase_relative_to(&b, TOL) {
                Some(p) => phase = Some(p),
                None => return Ok(false),
            },
            Some(p) => {
                let scaled = StateVector { n: b.n, amps: b.amps.iter().map(|x| p * x).collect() };
                if !a.approx_eq(&scaled, TOL) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Syndrome extraction on a copy of `encoded` with `error` applied. Ancilla
/// outcomes must be deterministic.
pub fn measure_syndrome(encoded: &StateVector, error: &PauliString, syndrome_circuit: &Circuit) -> Result<Bits> {
    let n = encoded.n();
    let m = syndrome_circuit.n - n;
    if error.n() != n {
        return Err(Error::Dimension { expected: n, found: error.n() });
    }
    let mut v = encoded.clone();
    v.apply_pauli(error)?;
    let v = run(syndrome_circuit, &v.extend_zeros(m))?;
    let mut out = Bits::zeros(syndrome_circuit.measure.len());
    for (i, &q) in syndrome_circuit.measure.iter().enumerate() {
        let p = v.prob_one(q);
        if p > TOL && p < 1.0 - TOL {
            return Err(Error::NonDeterministic { ancilla: i + 1 });
        }
        out.set(i, p > 0.5);
    }
    Ok(out)
}

/// Roles used by [`measure_syndrome`] circuits: data qubits then ancillas.
pub fn syndrome_roles(n: usize, m: usize) -> Vec<Role> {
    let mut roles = vec![Role::Data; n];
    roles.extend(std::iter::repeat_n(Role::AncillaZero, m));
    roles
}
