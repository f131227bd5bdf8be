//! Batches of seeded runs per (algorithm, benchmark) and their summary
//! statistics.
//!
//! Run `k` of a plan uses seed `base_seed + k`, so a record depends only on
//! the plan and its index, whatever order or thread it ran on.

pub mod output;
pub mod stats;
pub mod table;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{make_benchmark, BenchmarkId};
use crate::objective::Objective;
use crate::optimizer::RunRecord;
use crate::registry::Registry;

pub use output::{write_json, write_results, write_summary_csv, write_traces, OutputFormat};
pub use stats::{mean, median, quantile, sample_std, summarize, ExperimentStats};
pub use table::{compare_table, ComparisonTable};

/// Evaluation default used by the equal-budget mode.
pub const DEFAULT_EQUAL_BUDGET: u64 = 40_000;

/// How long each run is allowed to go.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetMode {
    /// Each algorithm's own `max_iter`.
    Paper,
    /// Every algorithm re-targeted to this many objective evaluations.
    EqualEvaluations(u64),
}

impl fmt::Display for BudgetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetMode::Paper => f.write_str("paper"),
            BudgetMode::EqualEvaluations(n) => write!(f, "equal:{n}"),
        }
    }
}

impl FromStr for BudgetMode {
    type Err = Error;

    /// `paper`, `equal` (default budget) or `equal:<evaluations>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPlan(format!("unknown budget mode '{s}'"));
        match s.split_once(':') {
            None if s == "paper" => Ok(BudgetMode::Paper),
            None if s == "equal" => Ok(BudgetMode::EqualEvaluations(DEFAULT_EQUAL_BUDGET)),
            Some(("equal", n)) => match n.parse::<u64>() {
                Ok(n) if n > 0 => Ok(BudgetMode::EqualEvaluations(n)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

/// One (algorithm, benchmark) cell of an experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub algorithm: String,
    /// Row name in reports; defaults to the algorithm name.
    pub label: Option<String>,
    /// Parameter overrides applied on top of the algorithm defaults.
    pub params: Vec<(String, String)>,
    pub benchmark: BenchmarkId,
    pub dimension: usize,
    /// Replaces the benchmark's default box on every coordinate.
    pub bounds: Option<(f64, f64)>,
    pub runs: usize,
    pub base_seed: u64,
    /// `None` means `1e-2 * (1 + |known optimum|)`.
    pub success_threshold: Option<f64>,
    pub budget: BudgetMode,
}

impl ExperimentPlan {
    /// 30 runs from seed 0 at the algorithm's own budget.
    pub fn new(algorithm: impl Into<String>, benchmark: BenchmarkId, dimension: usize) -> Self {
        Self {
            algorithm: algorithm.into(),
            label: None,
            params: Vec::new(),
            benchmark,
            dimension,
            bounds: None,
            runs: 30,
            base_seed: 0,
            success_threshold: None,
            budget: BudgetMode::Paper,
        }
    }

    pub fn label(&self) -> &str {
        self.label.as_deref().unwrap_or(&self.algorithm)
    }

    pub fn seed(&self, run: usize) -> u64 {
        self.base_seed.wrapping_add(run as u64)
    }

    pub fn seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.runs).map(|k| self.seed(k))
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::InvalidPlan("runs must be at least 1".into()));
        }
        if let Some(t) = self.success_threshold {
            if t.is_nan() {
                return Err(Error::InvalidPlan("success threshold is NaN".into()));
            }
        }
        Ok(())
    }
}

pub fn default_success_threshold(known_optimum: f64) -> f64 {
    1e-2 * (1.0 + known_optimum.abs())
}

/// Plan, resolved parameters, statistics and every run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub plan: ExperimentPlan,
    /// Parameters actually used, after overrides and budget adjustment.
    pub resolved_params: Vec<(String, String)>,
    pub success_threshold: f64,
    pub stats: ExperimentStats,
    pub records: Vec<RunRecord>,
}

/// Runs every seed of `plan`, on up to `jobs` worker threads.
pub fn run_experiment(plan: &ExperimentPlan, registry: &Registry, jobs: usize) -> Result<ExperimentResult> {
    plan.validate()?;
    let mut optimizer = registry.create(&plan.algorithm, &plan.params)?;
    if let BudgetMode::EqualEvaluations(n) = plan.budget {
        optimizer.set_evaluation_budget(n);
    }
    let mut objective = make_benchmark(plan.benchmark, plan.dimension)?;
    if let Some((lo, hi)) = plan.bounds {
        objective = objective.with_bounds(lo, hi)?;
    }
    let threshold = plan
        .success_threshold
        .unwrap_or_else(|| default_success_threshold(objective.known_optimum()));

    let seeds: Vec<u64> = plan.seeds().collect();
    let run = |seed: &u64| optimizer.run(&objective, *seed);
    let records: Vec<RunRecord> = if jobs <= 1 {
        seeds.iter().map(run).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidPlan(format!("cannot start {jobs} workers: {e}")))?
            .install(|| seeds.par_iter().map(run).collect())
    };

    let finals: Vec<f64> = records.iter().map(RunRecord::final_fitness).collect();
    let evaluations: Vec<u64> = records.iter().map(|r| r.evaluations).collect();
    Ok(ExperimentResult {
        plan: plan.clone(),
        resolved_params: optimizer
            .params()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        success_threshold: threshold,
        stats: summarize(&finals, &evaluations, threshold),
        records,
    })
}
