use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("generators {a} and {b} do not commute")]
    NonCommuting { a: usize, b: usize },

    #[error("generators are linearly dependent (rank {rank}, expected {expected})")]
    RankDeficient { rank: usize, expected: usize },

    #[error("generator {index} has phase i^{phase_exp}; stabilizer generators must be Hermitian")]
    NonHermitian { index: usize, phase_exp: u8 },

    #[error("rows {a} and {b} violate H2*H1^T = 0")]
    NotOrthogonal { a: usize, b: usize },

    #[error("standard-form row {row} regenerates with sign -1: {detail}")]
    NegativeSign { row: usize, detail: String },

    #[error("syndrome collision: {a} and {b} share syndrome {syndrome}")]
    SyndromeCollision { a: String, b: String, syndrome: String },

    #[error("matrix is not invertible")]
    Singular,

    #[error("invalid circuit: {0}")]
    Circuit(String),

    #[error("non-deterministic measurement on ancilla {ancilla} (input is not a codeword)")]
    NonDeterministic { ancilla: usize },

    #[error("zero-norm state: {0}")]
    ZeroNorm(String),

    #[error("equivalence check failed: {0}")]
    Equivalence(String),

    #[error("{path}:{line}: {msg}")]
    StabFile { path: String, line: usize, msg: String },

    #[error("io error on {path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
