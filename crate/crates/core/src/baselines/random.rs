//! Uniform random search: the best of `budget` independent samples.

use crate::candidate::{Candidate, Evaluator};
use crate::error::Result;
use crate::objective::Objective;
use crate::optimizer::{Optimizer, RunRecord};
use crate::params::{invalid, parse, unknown, ParamSet};
use crate::rng::RngStream;

#[derive(Clone, Debug, PartialEq)]
pub struct RandomSearchParams {
    /// Number of samples (objective evaluations).
    pub budget: u64,
    /// Samples per trace entry; the last block may be shorter.
    pub block: u64,
}

impl Default for RandomSearchParams {
    fn default() -> Self {
        Self {
            budget: 4000,
            block: 40,
        }
    }
}

impl ParamSet for RandomSearchParams {
    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "budget" => self.budget = parse(key, value)?,
            "block" => self.block = parse(key, value)?,
            _ => return Err(unknown("random", key)),
        }
        Ok(())
    }

    fn entries(&self) -> Vec<(&'static str, String)> {
        vec![
            ("budget", self.budget.to_string()),
            ("block", self.block.to_string()),
        ]
    }

    fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(invalid("budget", 0, "must be at least 1"));
        }
        if self.block == 0 {
            return Err(invalid("block", 0, "must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct RandomSearch {
    params: RandomSearchParams,
}

impl RandomSearch {
    pub fn new(params: RandomSearchParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }
}

impl Optimizer for RandomSearch {
    fn name(&self) -> &'static str {
        "random"
    }

    fn params(&self) -> Vec<(&'static str, String)> {
        self.params.entries()
    }

    fn set_evaluation_budget(&mut self, evaluations: u64) {
        self.params.budget = evaluations.max(1);
    }

    fn run(&self, objective: &dyn Objective, seed: u64) -> RunRecord {
        let mut eval = Evaluator::new(objective);
        let mut rng = RngStream::new(seed).fork(0);
        let space = objective.space();
        let mut best: Option<Candidate> = None;
        let mut trace = Vec::new();
        for k in 1..=self.params.budget {
            let c = Candidate::evaluate(space.random_position(&mut rng), &mut eval);
            if best.as_ref().is_none_or(|b| c.is_better_than(b)) {
                best = Some(c);
            }
            if k % self.params.block == 0 || k == self.params.budget {
                trace.push(best.as_ref().map(Candidate::fitness).unwrap_or(f64::NAN));
            }
        }
        RunRecord {
            seed,
            trace,
            final_best: best.expect("budget is at least 1"),
            evaluations: eval.evaluations(),
        }
    }
}

pub(crate) fn factory(overrides: &[(String, String)]) -> Result<Box<dyn Optimizer>> {
    let mut params = RandomSearchParams::default();
    params.apply(overrides)?;
    Ok(Box::new(RandomSearch::new(params)?))
}
