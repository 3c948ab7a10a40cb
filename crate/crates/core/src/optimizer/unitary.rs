//! Small dense unitaries over a handful of qubits, used to check rewrite
//! rules and to find Pauli corrections when two gates are swapped.

use num_complex::Complex64;

use crate::circuit::{Gate, GateKind};
use crate::pauli::PauliString;
use crate::simulator::TOL;

#[derive(Clone, Debug)]
pub struct Unitary {
    n: usize,
    /// Row-major `2^n x 2^n`.
    m: Vec<Complex64>,
}

impl Unitary {
    pub fn identity(n: usize) -> Self {
        let d = 1 << n;
        let mut m = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            m[i * d + i] = Complex64::new(1.0, 0.0);
        }
        Unitary { n, m }
    }

    fn dim(&self) -> usize {
        1 << self.n
    }

    /// Unitary of a gate sequence (time order) on `n` qubits.
    pub fn of_gates(n: usize, gates: &[Gate]) -> Self {
        let d = 1 << n;
        let mut u = Unitary::identity(n);
        // Column j is the image of basis state j.
        for j in 0..d {
            let mut v = crate::simulator::StateVector::basis(n, j);
            for g in gates {
                v.apply_gate(g);
            }
            for i in 0..d {
                u.m[i * d + j] = v.amps()[i];
            }
        }
        u
    }

    pub fn of_pauli(p: &PauliString) -> Self {
        let n = p.n();
        let d = 1 << n;
        let mut u = Unitary { n, m: vec![Complex64::new(0.0, 0.0); d * d] };
        for j in 0..d {
            let mut v = crate::simulator::StateVector::basis(n, j);
            v.apply_pauli(p).expect("matching width");
            for i in 0..d {
                u.m[i * d + j] = v.amps()[i];
            }
        }
        u
    }

    /// `self * other` (apply `other` first).
    pub fn mul(&self, other: &Unitary) -> Unitary {
        let d = self.dim();
        let mut m = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.m[i * d + k];
                if a.norm() < TOL {
                    continue;
                }
                for j in 0..d {
                    m[i * d + j] += a * other.m[k * d + j];
                }
            }
        }
        Unitary { n: self.n, m }
    }

    pub fn adjoint(&self) -> Unitary {
        let d = self.dim();
        let mut m = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                m[j * d + i] = self.m[i * d + j].conj();
            }
        }
        Unitary { n: self.n, m }
    }

    /// Equal up to a global phase.
    pub fn eq_up_to_phase(&self, other: &Unitary) -> bool {
        let Some(idx) = other.m.iter().position(|a| a.norm() > TOL) else { return false };
        let c = self.m[idx] / other.m[idx];
        (c.norm() - 1.0).abs() < 1e-9 && self.m.iter().zip(&other.m).all(|(a, b)| (a - c * b).norm() < 1e-9)
    }

    /// Equal on the columns of basis states `cols`, up to one global phase.
    pub fn eq_on_columns(&self, other: &Unitary, cols: &[usize]) -> bool {
        let d = self.dim();
        let mut phase: Option<Complex64> = None;
        for &j in cols {
            for i in 0..d {
                let (a, b) = (self.m[i * d + j], other.m[i * d + j]);
                if b.norm() > TOL && phase.is_none() {
                    phase = Some(a / b);
                }
                let c = phase.unwrap_or(Complex64::new(1.0, 0.0));
                if (a - c * b).norm() > 1e-9 {
                    return false;
                }
            }
        }
        true
    }

    /// The Pauli string this unitary equals (exactly, with phase), if any.
    pub fn as_pauli(&self) -> Option<PauliString> {
        let n = self.n;
        for code in 0..1usize << (2 * n) {
            let mut p = PauliString::identity(n);
            for q in 0..n {
                let l = ['I', 'X', 'Z', 'Y'][code >> (2 * q) & 3];
                p.set_letter(q, l).expect("valid letter");
            }
            let u = Unitary::of_pauli(&p);
            if let Some(idx) = u.m.iter().position(|a| a.norm() > TOL) {
                let c = self.m[idx] / u.m[idx];
                if self.m.iter().zip(&u.m).all(|(a, b)| (a - c * b).norm() < 1e-9) {
                    let powers = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
                    let e = powers.iter().position(|&(re, im)| (c - Complex64::new(re, im)).norm() < 1e-9)?;
                    return Some(p.with_phase(e as u8));
                }
            }
        }
        None
    }
}

/// Qubits touched by `gates`, sorted, and the gates relabelled onto 0..len.
pub fn localize(gates: &[Gate]) -> (Vec<usize>, Vec<Gate>) {
    let mut qs: Vec<usize> = gates.iter().flat_map(|g| g.qubits().to_vec()).collect();
    qs.sort_unstable();
    qs.dedup();
    let max = qs.last().copied().unwrap_or(0);
    let mut map = vec![usize::MAX; max + 1];
    for (i, &q) in qs.iter().enumerate() {
        map[q] = i;
    }
    let local = gates.iter().map(|g| g.mapped(&map)).collect();
    (qs, local)
}

/// Whether `kind` is diagonal in the computational basis.
pub fn is_diagonal(kind: GateKind) -> bool {
    matches!(kind, GateKind::S | GateKind::Z | GateKind::CZ)
}
