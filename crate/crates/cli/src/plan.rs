//! TOML experiment plans.
//!
//! Top-level keys are defaults for every `[[experiment]]` table; each
//! experiment may override them. Omitted algorithm parameters keep their
//! built-in defaults. Unknown keys are rejected with their location.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use tgsr_core::harness::{BudgetMode, ExperimentPlan, OutputFormat};
use tgsr_core::{BenchmarkId, Registry};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Bool(b) => write!(f, "{b}"),
            ParamValue::Int(i) => write!(f, "{i}"),
            ParamValue::Float(x) => write!(f, "{x:?}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub success_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, rename = "experiment", skip_serializing_if = "Vec::is_empty")]
    pub experiments: Vec<ExperimentEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentEntry {
    pub algorithm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// All five benchmarks when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub benchmarks: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub success_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, ParamValue>,
}

pub const DEFAULT_RUNS: usize = 30;
pub const DEFAULT_DIMENSION: usize = 30;

impl PlanFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read plan file {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("invalid plan file {}", path.display()))
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    /// Expands every experiment into one plan per benchmark and checks
    /// each against the registry, so nothing runs unless everything is valid.
    pub fn expand(&self, registry: &Registry) -> Result<Vec<ExperimentPlan>> {
        let mut plans = Vec::new();
        for (i, e) in self.experiments.iter().enumerate() {
            let context = || format!("experiment #{} ({})", i + 1, e.algorithm);
            let params: Vec<(String, String)> =
                e.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
            registry.create(&e.algorithm, &params).with_context(context)?;

            let budget_text = e.budget.as_ref().or(self.budget.as_ref());
            let budget = match budget_text {
                Some(b) => b.parse::<BudgetMode>().with_context(context)?,
                None => BudgetMode::Paper,
            };
            let runs = e.runs.or(self.runs).unwrap_or(DEFAULT_RUNS);
            if runs == 0 {
                bail!("{}: runs must be at least 1", context());
            }
            let benchmarks: Vec<BenchmarkId> = match &e.benchmarks {
                Some(names) => names
                    .iter()
                    .map(|n| n.parse::<BenchmarkId>())
                    .collect::<Result<_, _>>()
                    .with_context(context)?,
                None => BenchmarkId::ALL.to_vec(),
            };
            for benchmark in benchmarks {
                let plan = ExperimentPlan {
                    algorithm: e.algorithm.clone(),
                    label: e.label.clone(),
                    params: params.clone(),
                    benchmark,
                    dimension: e.dimension.or(self.dimension).unwrap_or(DEFAULT_DIMENSION),
                    bounds: e.bounds.map(|[lo, hi]| (lo, hi)),
                    runs,
                    base_seed: e.base_seed.or(self.base_seed).unwrap_or(0),
                    success_threshold: e.success_threshold.or(self.success_threshold),
                    budget,
                };
                plan.validate().with_context(context)?;
                tgsr_core::make_benchmark(benchmark, plan.dimension).with_context(context)?;
                plans.push(plan);
            }
        }
        Ok(plans)
    }
}
