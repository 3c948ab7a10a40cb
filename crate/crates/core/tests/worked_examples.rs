//! Worked values for the shipped codes: check matrices, gates, blocks,
//! serialization and the optimizer at each level.

use num_complex::Complex64;
use stabforge::optimizer::{block_to_matrix, resynthesize, LinearMatrix, RuleId, Strategy};
use stabforge::simulator::{all_bit_patterns, encode};
use stabforge::*;

fn code(name: &str) -> StabilizerCode {
    StabilizerCode::load(name).unwrap()
}

fn encoder(c: &StabilizerCode, gate_set: GateSet) -> Circuit {
    c.encoder(&EncoderOptions { gate_set, ..Default::default() }).unwrap()
}

fn paulis(list: &[&str]) -> Vec<PauliString> {
    list.iter().map(|s| s.parse().unwrap()).collect()
}

// --- codes ---------------------------------------------------------------

#[test]
fn eight_qubit_check_matrix_rows() {
    let c = code("eight_qubit");
    assert_eq!(
        c.check.row_strings(),
        vec!["11111111|00000000", "00000000|11111111", "01011010|00001111", "01010101|00110011", "01101001|01010101",]
    );
    assert_eq!((c.n(), c.k(), c.standard.r), (8, 3, 4));
}

#[test]
fn steane_is_css_with_one_logical() {
    let h = BitMatrix::parse_rows(&["1111000", "1100110", "1010101"]).unwrap();
    let css = css_check_matrix(&h, &h).unwrap();
    let c = code("steane");
    assert_eq!(css.row_strings(), c.check.row_strings());
    assert_eq!((c.n(), c.k(), c.standard.r), (7, 1, 3));
    let x = &c.logicals.xbar[0];
    let z = &c.logicals.zbar[0];
    assert!(!x.commutes(z).unwrap());
    for g in c.generators(SignPolicy::Canonical).unwrap() {
        assert!(g.commutes(x).unwrap() && g.commutes(z).unwrap());
    }
}

#[test]
fn thirteen_qubit_dimensions() {
    let c = code("thirteen_qubit");
    assert_eq!((c.n(), c.k()), (13, 7));
    assert_eq!(c.logicals.xbar.len(), 7);
    assert_eq!(c.logicals.zbar.len(), 7);
}

#[test]
fn logicals_pair_up() {
    for name in ["eight_qubit", "steane", "thirteen_qubit"] {
        let c = code(name);
        let (x, z) = (&c.logicals.xbar, &c.logicals.zbar);
        for i in 0..c.k() {
            for j in 0..c.k() {
                assert_eq!(x[i].commutes(&z[j]).unwrap(), i != j, "{name} X{i} Z{j}");
                assert!(x[i].commutes(&x[j]).unwrap());
                assert!(z[i].commutes(&z[j]).unwrap());
            }
        }
    }
}

#[test]
fn regenerated_signs_differ_only_where_reported() {
    let c = code("eight_qubit");
    let canon = c.generators(SignPolicy::Canonical).unwrap();
    let regen = c.standard.regenerated_generators();
    for (i, (a, b)) in canon.iter().zip(&regen).enumerate() {
        let negative = c.standard.negative_rows().contains(&i);
        assert_eq!(a.clone().negated() == *b, negative, "row {i}");
    }
}

#[test]
fn stab_parser_reports_line_numbers() {
    let err = parse_stab("name: bad\nn: 2\nk: 0\nXI\nZI\n", "bad.stab").unwrap_err();
    assert!(err.to_string().contains("bad.stab"), "{err}");
    assert!(StabilizerCode::load("no_such_code").is_err());
}

// --- paulis ----------------------------------------------------------------

#[test]
fn products_and_phases() {
    let x: PauliString = "X".parse().unwrap();
    let z: PauliString = "Z".parse().unwrap();
    assert_eq!(x.multiply(&z).unwrap().to_string(), "-iY");
    assert_eq!(z.multiply(&x).unwrap().to_string(), "iY");
    let m = paulis(&["IXIXYZYZ", "IXZYIXZY"]);
    assert!(m[0].commutes(&m[1]).unwrap());
    assert!(m[0].multiply(&m[0]).unwrap().is_identity_up_to_phase());
    assert_eq!(m[0].multiply(&m[0]).unwrap().phase_exp(), 0);
    assert!("XQ".parse::<PauliString>().is_err());
}

// --- gates and states ------------------------------------------------------

#[test]
fn two_qubit_gate_actions() {
    let on = |g: Gate, label: &str| {
        let mut c = Circuit::new("g", vec![Role::Data; 2]);
        c.push(g);
        run(&c, &StateVector::from_label(label).unwrap()).unwrap()
    };
    assert!(on(Gate::cx(0, 1), "10").approx_eq(&StateVector::from_label("11").unwrap(), 1e-12));
    assert!(on(Gate::cx(0, 1), "01").approx_eq(&StateVector::from_label("01").unwrap(), 1e-12));
    let cz = on(Gate::cz(0, 1), "11");
    assert!((cz.amplitude("11").unwrap() - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    let cy = on(Gate::two(GateKind::CY, 0, 1), "10");
    assert!((cy.amplitude("11").unwrap() - Complex64::new(0.0, 1.0)).norm() < 1e-12);
}

#[test]
fn encoders_agree_across_gate_sets() {
    for name in ["eight_qubit", "steane", "thirteen_qubit"] {
        let c = code(name);
        let a = encoder(&c, GateSet::Mixed);
        let b = encoder(&c, GateSet::CnotCz);
        assert!(circuits_equivalent(&a, &b, Scope::AncillaRestricted, false).unwrap(), "{name}");
    }
}

#[test]
fn unstripped_encoder_is_equivalent_and_longer() {
    let c = code("eight_qubit");
    let full = c.encoder(&EncoderOptions { strip: false, ..Default::default() }).unwrap();
    let stripped = encoder(&c, GateSet::Mixed);
    assert!(full.len() >= stripped.len());
    assert!(circuits_equivalent(&full, &stripped, Scope::AncillaRestricted, false).unwrap());
}

#[test]
fn encoded_states_are_orthonormal() {
    let c = code("eight_qubit");
    let enc = encoder(&c, GateSet::Mixed);
    let states: Vec<StateVector> = all_bit_patterns(3).map(|b| encode(&enc, &b).unwrap()).collect();
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let ip = a.inner(b).norm();
            assert!((ip - if i == j { 1.0 } else { 0.0 }).abs() < 1e-10, "{i} {j} {ip}");
        }
    }
}

#[test]
fn logical_x_acts_on_codewords() {
    let c = code("eight_qubit");
    let enc = encoder(&c, GateSet::Mixed);
    let mut v = encode(&enc, &[false, false, false]).unwrap();
    v.apply_pauli(&c.logicals.xbar[1]).unwrap();
    assert!(v.eq_up_to_global_phase(&encode(&enc, &[false, true, false]).unwrap(), 1e-10));
}

// --- syndromes -------------------------------------------------------------

#[test]
fn table_formats() {
    let t = code("eight_qubit").syndrome_table().unwrap();
    let text = t.to_table();
    assert_eq!(text.lines().count(), 26);
    let first: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(first, ["X", "I", "I", "I", "I", "I", "I", "I", "00001", "1"]);
    let json: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 25);
    assert_eq!(json[3]["decimal"], 21);
}

#[test]
fn two_qubit_errors_are_not_all_corrected() {
    let c = code("eight_qubit");
    let t = c.syndrome_table().unwrap();
    let e: PauliString = "XXIIIIII".parse().unwrap();
    match decode(&c.syndrome_of(&e).unwrap(), &t) {
        Decoded::Correction(p) => assert_ne!(p, e),
        Decoded::Uncorrectable => {}
    }
}

// --- CNOT blocks -----------------------------------------------------------

#[test]
fn distribution_circuits_share_a_matrix() {
    let expected = LinearMatrix::parse_rows(&["100", "010", "101"]).unwrap();
    let left = [Gate::cx(0, 2)];
    let middle = [Gate::cx(0, 1), Gate::cx(1, 2), Gate::cx(0, 1), Gate::cx(1, 2)];
    let right = [Gate::cx(1, 2), Gate::cx(0, 1), Gate::cx(1, 2), Gate::cx(0, 1)];
    for block in [&left[..], &middle, &right] {
        assert_eq!(block_to_matrix(3, block).unwrap(), expected);
    }
    assert_eq!(resynthesize(&expected, Strategy::Search { budget: 1000 }).unwrap(), vec![Gate::cx(0, 2)]);
}

#[test]
fn rules_level_blocks_resynthesize() {
    let c = code("eight_qubit");
    let opt = apply_rules(&encoder(&c, GateSet::CnotCz), &OptimizeConfig::default());
    let blocks = extract_cnot_blocks(&opt);
    assert!(!blocks.is_empty());
    for b in &blocks {
        let m = block_to_matrix(opt.n, &b.gates).unwrap();
        let g = resynthesize(&m, Strategy::Gaussian).unwrap();
        assert_eq!(block_to_matrix(opt.n, &g).unwrap(), m);
    }
    let covered: usize = blocks.iter().map(|b| b.gates.len()).sum();
    assert_eq!(covered, opt.gate_counts().get(GateKind::CX));
}

// --- optimizer -------------------------------------------------------------

#[test]
fn rules_level_counts() {
    let rules = OptimizeConfig::default();
    let eight = code("eight_qubit");
    let (o, report) = optimize(&encoder(&eight, GateSet::CnotCz), &rules).unwrap();
    let n = o.gate_counts();
    assert!(n.get(GateKind::CX) <= 19, "{n}");
    assert_eq!(n.two_qubit(), n.get(GateKind::CX));
    assert_eq!(n.get(GateKind::H), 4);
    assert!(report.verified);
    assert!(report.rules_fired.contains_key(RuleId::CzFromCxConjugation.name()));

    let (s, _) = optimize(&encoder(&code("steane"), GateSet::Mixed), &rules).unwrap();
    assert_eq!(s.gate_counts(), GateCounts::of(&[(GateKind::H, 3), (GateKind::CX, 10)]));
}

#[test]
fn mixed_gate_set_reaches_the_same_form() {
    let (o, _) = optimize(&encoder(&code("eight_qubit"), GateSet::Mixed), &OptimizeConfig::default()).unwrap();
    let n = o.gate_counts();
    assert_eq!(n.two_qubit(), n.get(GateKind::CX));
    assert!(circuits_equivalent(&encoder(&code("eight_qubit"), GateSet::Mixed), &o, Scope::AncillaRestricted, true).unwrap());
}

#[test]
fn without_target_gates_a_lone_cz_survives() {
    let mut c = Circuit::new("cz", vec![Role::LogicalInput; 2]);
    c.push(Gate::cz(0, 1));
    let keep = OptimizeConfig { target_gates: None, ..Default::default() };
    assert_eq!(optimize(&c, &keep).unwrap().0.gates, vec![Gate::cz(0, 1)]);
    let (o, _) = optimize(&c, &OptimizeConfig::default()).unwrap();
    assert_eq!(o.gate_counts(), GateCounts::of(&[(GateKind::H, 2), (GateKind::CX, 1)]));
}

#[test]
fn optimize_config_rejects_unknown_keys() {
    assert!(OptimizeConfig::from_json(r#"{"level": "full", "window": 3}"#).is_ok());
    assert!(OptimizeConfig::from_json(r#"{"level": "fast"}"#).is_err());
    assert!(OptimizeConfig::from_json(r#"{"windw": 3}"#).is_err());
    assert!(Pipeline::from_json(r#"{"code": "steane", "gate_set": "mixed", "extra": 1}"#).is_err());
}

#[test]
fn report_json_lists_counts() {
    let (_, report) = optimize(&encoder(&code("steane"), GateSet::Mixed), &OptimizeConfig::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(v["after"]["CX"], 10);
    assert_eq!(v["two_qubit_before"], 11);
}

// --- serialization ---------------------------------------------------------

#[test]
fn json_round_trip_of_encoders() {
    for name in ["eight_qubit", "steane", "thirteen_qubit"] {
        let c = encoder(&code(name), GateSet::Mixed);
        let back = from_json(&to_json(&c)).unwrap();
        assert_eq!(back, c);
    }
    let gold = golden("eight_qubit").unwrap().unwrap();
    assert_eq!(from_json(&to_json(&gold)).unwrap(), gold);
}

#[test]
fn json_rejects_bad_documents() {
    assert!(from_json("{").is_err());
    assert!(from_json(r#"{"name":"x","n":1,"roles":["data"],"gates":[{"kind":"CX","q":[1,1]}]}"#).is_err());
    assert!(from_json(r#"{"name":"x","n":1,"roles":["data"],"gates":[{"kind":"T","q":[1]}]}"#).is_err());
}

/// Minimal reader for the QASM subset we emit.
fn parse_qasm(text: &str) -> (usize, Vec<(String, Vec<usize>)>) {
    let mut n = 0;
    let mut ops = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with("//") || line.starts_with("OPENQASM") || line.starts_with("include") {
            continue;
        }
        let body = line.strip_suffix(';').expect("statements end with ;");
        if let Some(r) = body.strip_prefix("qreg q[") {
            n = r.trim_end_matches(']').parse().unwrap();
            continue;
        }
        let (name, args) = body.split_once(' ').unwrap();
        let qs = args.split(',').map(|a| a.trim_start_matches("q[").trim_end_matches(']').parse().unwrap()).collect();
        ops.push((name.to_string(), qs));
    }
    (n, ops)
}

#[test]
fn qasm_parses_back() {
    let c = encoder(&code("eight_qubit"), GateSet::Mixed);
    let text = to_qasm(&c);
    assert!(text.starts_with("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n"));
    let (n, ops) = parse_qasm(&text);
    assert_eq!(n, 8);
    assert_eq!(ops.len(), c.len());
    for (g, (name, qs)) in c.gates.iter().zip(&ops) {
        assert_eq!(name, &g.kind.name().to_ascii_lowercase());
        assert_eq!(qs.as_slice(), g.qubits());
    }
}

#[test]
fn qasm_writes_frame_and_measurements() {
    let syn = code("eight_qubit").syndrome_circuit(SignPolicy::Canonical).unwrap();
    let text = to_qasm(&syn);
    assert!(text.contains("creg s[5];"));
    assert_eq!(text.matches("measure ").count(), 5);
    let gold = golden("eight_qubit").unwrap().unwrap();
    let expanded = gold.with_frame_as_gates();
    let frame_gates = gold.pauli_frame.as_ref().map_or(0, |p| p.weight());
    assert_eq!(expanded.len(), gold.len() + frame_gates);
    let (_, ops) = parse_qasm(&to_qasm(&gold));
    assert_eq!(ops.len(), gold.len() + frame_gates);
}
