//! Property-based checks over random Paulis, matrices, codes and circuits.

use proptest::prelude::*;
use stabforge::optimizer::frame::conjugate;
use stabforge::optimizer::rules::{check_rule, RuleId};
use stabforge::optimizer::{block_to_matrix, resynthesize, LinearMatrix, Strategy as Resynthesis};
use stabforge::simulator::encode;
use stabforge::*;

fn pauli(n: usize) -> impl Strategy<Value = PauliString> {
    (prop::collection::vec(0u8..4, n), 0u8..4).prop_map(|(letters, phase)| {
        let s: String = letters.iter().map(|&l| ['I', 'X', 'Y', 'Z'][l as usize]).collect();
        s.parse::<PauliString>().unwrap().times_i(phase)
    })
}

fn invertible(max_n: usize) -> impl Strategy<Value = LinearMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..4 * n * n).prop_map(move |ops| {
            let mut m = LinearMatrix::identity(n);
            for (c, t) in ops {
                if c != t {
                    m.add_row(c, t);
                }
            }
            m
        })
    })
}

fn gate(n: usize) -> impl Strategy<Value = Gate> {
    (0..GateKind::ALL.len(), 0..n, 0..n).prop_filter_map("distinct qubits", move |(k, a, b)| {
        let kind = GateKind::ALL[k];
        match kind.arity() {
            1 => Some(Gate::one(kind, a)),
            _ if a != b => Some(Gate::two(kind, a, b)),
            _ => None,
        }
    })
}

fn clifford_gate(n: usize) -> impl Strategy<Value = Gate> {
    (0..3usize, 0..n, 0..n).prop_filter_map("distinct qubits", |(k, a, b)| match k {
        0 => Some(Gate::h(a)),
        1 => Some(Gate::one(GateKind::S, a)),
        _ if a != b => Some(Gate::cx(a, b)),
        _ => None,
    })
}

/// `Z` on the first `m` of `n` qubits pushed through a random Clifford circuit.
fn code_generators() -> impl Strategy<Value = Vec<PauliString>> {
    (2..=6usize).prop_flat_map(|n| (Just(n), 1..=n, prop::collection::vec(clifford_gate(n), 0..30))).prop_map(|(n, m, gates)| {
        (0..m)
            .map(|i| {
                let mut p = PauliString::single(n, i, 'Z').unwrap();
                for g in &gates {
                    p = conjugate(&p, g);
                }
                p
            })
            .collect()
    })
}

fn encoder_circuit() -> impl Strategy<Value = Circuit> {
    (1..=3usize, 1..=3usize).prop_flat_map(|(m, k)| (Just(m), Just(k), prop::collection::vec(gate(m + k), 0..25))).prop_map(
        |(m, k, gates)| {
            let mut c = Circuit::encoder_layout("random", m, k);
            for g in gates {
                c.push(g);
            }
            c
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_is_associative(a in pauli(5), b in pauli(5), c in pauli(5)) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutation_matches_product_order(a in pauli(6), b in pauli(6)) {
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        if a.commutes(&b).unwrap() {
            prop_assert_eq!(ab, ba);
        } else {
            prop_assert_eq!(ab, ba.negated());
        }
    }

    #[test]
    fn symplectic_row_round_trip(a in pauli(7)) {
        let bare = a.clone().with_phase(0);
        let back = PauliString::from_symplectic_row(&bare.to_symplectic_row()).unwrap();
        prop_assert_eq!(back.x(), a.x());
        prop_assert_eq!(back.z(), a.z());
        prop_assert!(back.is_hermitian());
    }

    #[test]
    fn syndromes_are_linear(a in pauli(8), b in pauli(8)) {
        let c = StabilizerCode::load("eight_qubit").unwrap();
        let sum = c.syndrome_of(&a).unwrap().0.xor(&c.syndrome_of(&b).unwrap().0);
        prop_assert_eq!(c.syndrome_of(&a.multiply(&b).unwrap()).unwrap().0, sum);
    }

    #[test]
    fn json_round_trip(c in encoder_circuit()) {
        prop_assert_eq!(from_json(&to_json(&c)).unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn resynthesis_round_trip(m in invertible(8)) {
        let g = resynthesize(&m, Resynthesis::Gaussian).unwrap();
        let s = resynthesize(&m, Resynthesis::Search { budget: 2_000 }).unwrap();
        prop_assert_eq!(block_to_matrix(m.n(), &g).unwrap(), m.clone());
        prop_assert_eq!(block_to_matrix(m.n(), &s).unwrap(), m.clone());
        prop_assert!(s.len() <= g.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn simulation_preserves_norm(gates in prop::collection::vec(gate(6), 50), start in 0usize..64) {
        let mut c = Circuit::new("random", vec![Role::Data; 6]);
        for q in 0..6 {
            c.push(Gate::h(q));
        }
        for g in gates {
            c.push(g);
        }
        let v = run(&c, &StateVector::basis(6, start)).unwrap();
        prop_assert!((v.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn pauli_conjugation_matches_simulation(p in pauli(3), g in gate(3), start in 0usize..8) {
        // g P |s> == (g P g^-1) g |s>
        let mut c = Circuit::new("g", vec![Role::Data; 3]);
        c.push(g);
        let mut lhs = StateVector::basis(3, start);
        lhs.apply_pauli(&p).unwrap();
        let lhs = run(&c, &lhs).unwrap();
        let mut rhs = run(&c, &StateVector::basis(3, start)).unwrap();
        rhs.apply_pauli(&conjugate(&p, &g)).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 1e-10));
    }

    #[test]
    fn rewrites_preserve_behaviour(c in encoder_circuit()) {
        let rules = apply_rules(&c, &OptimizeConfig::default());
        prop_assert!(circuits_equivalent(&c, &rules, Scope::AncillaRestricted, true).unwrap());
        let (full, report) = optimize(&c, &OptimizeConfig { level: Level::Full, search_budget: 2_000, ..Default::default() }).unwrap();
        prop_assert!(report.verified);
        prop_assert!(full.gate_counts().two_qubit() <= c.gate_counts().two_qubit() + c.gate_counts().get(GateKind::CY));
        prop_assert!(circuits_equivalent(&c, &full, Scope::AncillaRestricted, true).unwrap());
    }

    #[test]
    fn random_codes_get_working_encoders(gens in code_generators()) {
        let h = build_check_matrix(&gens).unwrap();
        let def = CodeDefinition { name: "random".into(), n: h.n, k: h.k, generators: gens.clone(), notes: Vec::new() };
        let code = StabilizerCode::from_definition(&def).unwrap();
        let s = &code.standard;
        prop_assert_eq!(standard_form(&s.base).qubit_perm, (0..h.n).collect::<Vec<_>>());
        for gs in [GateSet::Mixed, GateSet::CnotCz] {
            let enc = code.encoder(&EncoderOptions { gate_set: gs, ..Default::default() }).unwrap();
            let check = code.verify_encoder(&enc, SignPolicy::Canonical).unwrap();
            prop_assert!(check.passed(), "{:?}", check);
        }
        let bits = vec![false; code.k()];
        let enc = code.encoder(&EncoderOptions::default()).unwrap();
        let v = encode(&enc, &bits).unwrap();
        // The original generators hold up to sign once qubits are put back.
        let perm = stabforge::symplectic::inverse(&s.qubit_perm);
        for g in &gens {
            let p = g.clone().with_phase(0).permuted(&perm);
            let mut w = v.clone();
            w.apply_pauli(&p).unwrap();
            let overlap = w.inner(&v);
            prop_assert!((overlap.norm() - 1.0).abs() < 1e-9, "{} overlap {}", g, overlap);
        }
    }
}

#[test]
fn every_rule_is_sound_on_three_qubits() {
    for rule in RuleId::ALL {
        let r = check_rule(rule);
        assert!(r.windows_checked > 0, "{}", rule.name());
        assert!(r.failures.is_empty(), "{}: {:?}", rule.name(), r.failures);
    }
}

#[test]
fn deleting_a_gate_breaks_equivalence() {
    let c = StabilizerCode::load("eight_qubit").unwrap();
    let enc = c.encoder(&EncoderOptions::default()).unwrap();
    for i in 0..enc.len() {
        let mut broken = enc.clone();
        broken.gates.remove(i);
        let check = c.verify_encoder(&broken, SignPolicy::Canonical).unwrap();
        assert!(!check.passed(), "gate {i} is redundant");
    }
}
