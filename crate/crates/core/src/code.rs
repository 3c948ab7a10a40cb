//! A stabilizer code with its standard form, logical operators and the
//! circuits and tables derived from them.
//!
//! All circuits and states live in the standard-form qubit order.

use crate::circuit::Circuit;
use crate::encoder::{build_encoder, synthesize_syndrome_circuit, EncoderOptions};
use crate::error::{Error, Result};
use crate::library::{resolve_code, CodeDefinition};
use crate::pauli::PauliString;
use crate::simulator::{all_bit_patterns, check_stabilized, encode, measure_syndrome, projector_encode_generators, StateVector, TOL};
use crate::symplectic::{build_check_matrix, logical_operators, standard_form, CheckMatrix, LogicalOperators, SignPolicy, StandardForm};
use crate::syndrome::{build_syndrome_table, decode, Decoded, Syndrome, SyndromeTable};

#[derive(Clone, Debug)]
pub struct StabilizerCode {
    pub name: String,
    pub check: CheckMatrix,
    pub standard: StandardForm,
    pub logicals: LogicalOperators,
}

/// Outcome of checking an encoder circuit against the code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncoderCheck {
    pub states: usize,
    /// Logical inputs whose output is not a +1 eigenstate of every generator.
    pub unstabilized: Vec<String>,
    /// Logical inputs whose output differs from the projector oracle.
    pub oracle_mismatch: Vec<String>,
}

impl EncoderCheck {
    pub fn passed(&self) -> bool {
        self.unstabilized.is_empty() && self.oracle_mismatch.is_empty()
    }
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl StabilizerCode {
    pub fn from_definition(def: &CodeDefinition) -> Result<Self> {
        let check = build_check_matrix(&def.generators)?;
        let standard = standard_form(&check);
        let logicals = logical_operators(&standard);
        Ok(StabilizerCode { name: def.name.clone(), check, standard, logicals })
    }

    /// Path, fixture directory, or built-in name.
    pub fn load(arg: &str) -> Result<Self> {
        Self::from_definition(&resolve_code(arg)?)
    }

    pub fn n(&self) -> usize {
        self.standard.n()
    }

    pub fn k(&self) -> usize {
        self.standard.k()
    }

    pub fn generators(&self, policy: SignPolicy) -> Result<Vec<PauliString>> {
        self.standard.generators(policy)
    }

    pub fn encoder(&self, opts: &EncoderOptions) -> Result<Circuit> {
        let mut c = build_encoder(&self.standard, &self.logicals, opts)?;
        c.name = format!("{} {}", self.name, c.name);
        Ok(c)
    }

    pub fn syndrome_circuit(&self, policy: SignPolicy) -> Result<Circuit> {
        synthesize_syndrome_circuit(&self.standard, policy)
    }

    pub fn syndrome_table(&self) -> Result<SyndromeTable> {
        build_syndrome_table(&self.standard.canonical_generators())
    }

    pub fn syndrome_of(&self, e: &PauliString) -> Result<Syndrome> {
        crate::syndrome::syndrome_of(e, &self.standard.canonical_generators())
    }

    /// Codeword for `bits` built from the stabilizer algebra alone.
    pub fn projector_encode(&self, bits: &[bool], policy: SignPolicy) -> Result<StateVector> {
        projector_encode_generators(&self.generators(policy)?, &self.logicals.xbar, bits)
    }

    /// Run `c` on every logical basis input and compare with the oracle
    /// (each state up to its own global phase) and the signed generators.
    pub fn verify_encoder(&self, c: &Circuit, policy: SignPolicy) -> Result<EncoderCheck> {
        if c.n != self.n() || c.logical_inputs().len() != self.k() {
            return Err(Error::Dimension { expected: self.n(), found: c.n });
        }
        let gens = self.generators(policy)?;
        let mut check = EncoderCheck { states: 0, unstabilized: Vec::new(), oracle_mismatch: Vec::new() };
        for bits in all_bit_patterns(self.k()) {
            check.states += 1;
            let v = encode(c, &bits)?;
            if !gens.iter().all(|g| check_stabilized(&v, g)) {
                check.unstabilized.push(bit_string(&bits));
            }
            let o = self.projector_encode(&bits, policy)?;
            if !v.eq_up_to_global_phase(&o, TOL) {
                check.oracle_mismatch.push(bit_string(&bits));
            }
        }
        Ok(check)
    }

    /// Encode, apply `error`, measure, decode, correct, and compare with the
    /// clean codeword up to global phase.
    pub fn roundtrip_correct(&self, encoder: &Circuit, bits: &[bool], error: &PauliString) -> Result<bool> {
        let syn_circuit = self.syndrome_circuit(SignPolicy::Canonical)?;
        let table = self.syndrome_table()?;
        let clean = encode(encoder, bits)?;
        let s = Syndrome(measure_syndrome(&clean, error, &syn_circuit)?);
        let mut v = clean.clone();
        v.apply_pauli(error)?;
        match decode(&s, &table) {
            Decoded::Correction(p) => v.apply_pauli(&p)?,
            Decoded::Uncorrectable => return Ok(false),
        }
        Ok(v.eq_up_to_global_phase(&clean, TOL))
    }
}
