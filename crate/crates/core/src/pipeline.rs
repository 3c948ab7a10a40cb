//! Shipped end-to-end pipelines: code, encoder gate set, optimizer settings.

use serde::Deserialize;

use crate::circuit::Circuit;
use crate::code::StabilizerCode;
use crate::encoder::{EncoderOptions, GateSet};
use crate::error::{Error, Result};
use crate::optimizer::{optimize, OptimizationReport, OptimizeConfig};

/// Pipelines whose results match the published counts, plus `*_search`
/// variants that let the search run without a stopping count.
pub const SHIPPED_PIPELINES: [(&str, &str); 5] = [
    ("eight_qubit", include_str!("../fixtures/pipelines/eight_qubit.json")),
    ("steane", include_str!("../fixtures/pipelines/steane.json")),
    ("thirteen_qubit", include_str!("../fixtures/pipelines/thirteen_qubit.json")),
    ("steane_search", include_str!("../fixtures/pipelines/steane_search.json")),
    ("thirteen_qubit_search", include_str!("../fixtures/pipelines/thirteen_qubit_search.json")),
];

pub const GOLDEN: [(&str, &str); 5] = [
    ("eight_qubit", include_str!("../fixtures/golden/eight_qubit.json")),
    ("steane", include_str!("../fixtures/golden/steane.json")),
    ("thirteen_qubit", include_str!("../fixtures/golden/thirteen_qubit.json")),
    ("steane_search", include_str!("../fixtures/golden/steane_search.json")),
    ("thirteen_qubit_search", include_str!("../fixtures/golden/thirteen_qubit_search.json")),
];

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pipeline {
    pub code: String,
    pub gate_set: String,
    #[serde(default = "yes")]
    pub strip: bool,
    #[serde(default)]
    pub optimizer: OptimizeConfig,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub code: StabilizerCode,
    pub encoder: Circuit,
    pub optimized: Circuit,
    pub report: OptimizationReport,
}

impl Pipeline {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Circuit(format!("bad pipeline: {e}")))
    }

    pub fn shipped(name: &str) -> Option<Self> {
        SHIPPED_PIPELINES.iter().find(|(n, _)| *n == name).map(|(_, t)| Self::from_json(t).expect("shipped pipeline parses"))
    }

    pub fn run(&self) -> Result<PipelineRun> {
        let code = StabilizerCode::load(&self.code)?;
        let gate_set: GateSet = self.gate_set.parse()?;
        let encoder = code.encoder(&EncoderOptions { gate_set, strip: self.strip, ..Default::default() })?;
        let (mut optimized, report) = optimize(&encoder, &self.optimizer)?;
        optimized.name = format!("{} optimized", code.name);
        Ok(PipelineRun { code, encoder, optimized, report })
    }
}

/// Checked-in optimized circuit for a shipped pipeline.
pub fn golden(name: &str) -> Option<Result<Circuit>> {
    GOLDEN.iter().find(|(n, _)| *n == name).map(|(_, t)| crate::circuit::from_json(t))
}
