//! Heisenberg-picture propagation of Pauli strings through Clifford gates.

use crate::circuit::{Gate, GateKind};
use crate::pauli::PauliString;

fn letters(n: usize, spec: &[(usize, char)], negate: bool) -> PauliString {
    let mut p = PauliString::identity(n);
    for &(q, l) in spec {
        p.set_letter(q, l).expect("valid letter");
    }
    if negate {
        p.negated()
    } else {
        p
    }
}

/// `(G X_q G^dag, G Z_q G^dag)` for a qubit `q` touched by `g`.
fn images(n: usize, g: &Gate, q: usize) -> (PauliString, PauliString) {
    let [a, b] = g.q;
    let x = |spec: &[(usize, char)]| letters(n, spec, false);
    let neg = |spec: &[(usize, char)]| letters(n, spec, true);
    match g.kind {
        GateKind::H => (x(&[(q, 'Z')]), x(&[(q, 'X')])),
        GateKind::S => (x(&[(q, 'Y')]), x(&[(q, 'Z')])),
        GateKind::X => (x(&[(q, 'X')]), neg(&[(q, 'Z')])),
        GateKind::Y => (neg(&[(q, 'X')]), neg(&[(q, 'Z')])),
        GateKind::Z => (neg(&[(q, 'X')]), x(&[(q, 'Z')])),
        GateKind::CX if q == a => (x(&[(a, 'X'), (b, 'X')]), x(&[(a, 'Z')])),
        GateKind::CX => (x(&[(b, 'X')]), x(&[(a, 'Z'), (b, 'Z')])),
        GateKind::CY if q == a => (x(&[(a, 'X'), (b, 'Y')]), x(&[(a, 'Z')])),
        GateKind::CY => (x(&[(a, 'Z'), (b, 'X')]), x(&[(a, 'Z'), (b, 'Z')])),
        GateKind::CZ => {
            let o = if q == a { b } else { a };
            (x(&[(q, 'X'), (o, 'Z')]), x(&[(q, 'Z')]))
        }
    }
}

/// `G P G^dag`, phase included.
pub fn conjugate(p: &PauliString, g: &Gate) -> PauliString {
    let n = p.n();
    let qs = g.qubits();
    // Split P = i^e * rest * prod_{q in qs} X_q^x Z_q^z, with Y = iXZ on the local part.
    let mut rest = p.clone();
    let mut local = PauliString::identity(n);
    let mut extra = 0u8;
    for &q in qs {
        let (xq, zq) = (p.x().get(q), p.z().get(q));
        rest.set_letter(q, 'I').expect("valid letter");
        if xq && zq {
            extra += 1;
        }
        let (ix, iz) = images(n, g, q);
        if xq {
            local = local.multiply(&ix).expect("same width");
        }
        if zq {
            local = local.multiply(&iz).expect("same width");
        }
    }
    rest.multiply(&local).expect("same width").times_i(extra)
}
