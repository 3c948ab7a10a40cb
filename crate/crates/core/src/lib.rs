//! Synthesis, optimization and verification of encoder and syndrome
//! circuits for stabilizer codes.

pub mod bits;
pub mod circuit;
pub mod code;
pub mod encoder;
pub mod error;
pub mod library;
pub mod optimizer;
pub mod pauli;
pub mod pipeline;
pub mod simulator;
pub mod symplectic;
pub mod syndrome;

pub use bits::{BitMatrix, Bits};
pub use circuit::{from_json, gate_counts, to_json, to_qasm, Circuit, Gate, GateCounts, GateKind, Role};
pub use code::{EncoderCheck, StabilizerCode};
pub use encoder::{
    build_encoder, strip_trivial_gates, synthesize_encoder, synthesize_syndrome_circuit, EncoderOptions, GateSet, ProvenZero,
};
pub use error::{Error, Result};
pub use library::{builtin, load_stab, parse_stab, resolve_code, CodeDefinition};
pub use optimizer::{apply_rules, extract_cnot_blocks, optimize, Level, OptimizationReport, OptimizeConfig, TargetGates};
pub use pauli::{parse_pauli, PauliString};
pub use pipeline::{golden, Pipeline, PipelineRun};
pub use simulator::{circuits_equivalent, run, Scope, StateVector};
pub use symplectic::{
    build_check_matrix, css_check_matrix, extract_blocks, logical_operators, standard_form, CheckMatrix, LogicalOperators, SignPolicy,
    StandardForm,
};
pub use syndrome::{build_syndrome_table, decode, syndrome_of, Decoded, Syndrome, SyndromeTable};
