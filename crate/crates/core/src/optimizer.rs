use std::fmt;

use serde::{Deserialize, Serialize};

use crate::candidate::Candidate;
use crate::objective::Objective;

/// Result of one seeded optimization run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    /// Best fitness seen so far, recorded once per iteration.
    pub trace: Vec<f64>,
    pub final_best: Candidate,
    pub evaluations: u64,
}

impl RunRecord {
    pub fn final_fitness(&self) -> f64 {
        self.final_best.fitness()
    }

    pub fn is_monotone(&self) -> bool {
        self.trace.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Common contract of every optimizer in the registry.
pub trait Optimizer: Send + Sync + fmt::Debug {
    /// Registry name, e.g. `"tgsr"`.
    fn name(&self) -> &'static str;

    /// Current parameter values as `key=value` pairs.
    fn params(&self) -> Vec<(&'static str, String)>;

    /// Re-targets the iteration count so a run spends about `evaluations`
    /// objective evaluations.
    fn set_evaluation_budget(&mut self, evaluations: u64);

    fn run(&self, objective: &dyn Objective, seed: u64) -> RunRecord;
}
