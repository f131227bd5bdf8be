//! Differential evolution, rand/1/bin.
//!
//! For each target `x_i`, three distinct others `a, b, c` form the mutant
//! `x_a + F (x_b - x_c)`; binomial crossover with rate `CR` (and one forced
//! coordinate) gives the trial, which replaces the target when it is no
//! worse. Generations are synchronous: trials are built from the previous
//! generation only.

use crate::candidate::{best_index, Candidate, Evaluator};
use crate::error::Result;
use crate::objective::Objective;
use crate::optimizer::{Optimizer, RunRecord};
use crate::params::{fmt_f64, invalid, parse, unknown, ParamSet};
use crate::rng::RngStream;

#[derive(Clone, Debug, PartialEq)]
pub struct DeaParams {
    pub population: usize,
    pub max_iter: usize,
    pub f_weight: f64,
    pub crossover: f64,
}

impl Default for DeaParams {
    fn default() -> Self {
        Self {
            population: 50,
            max_iter: 100,
            f_weight: 1.25,
            crossover: 0.3,
        }
    }
}

impl ParamSet for DeaParams {
    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "population" => self.population = parse(key, value)?,
            "max_iter" => self.max_iter = parse(key, value)?,
            "f_weight" => self.f_weight = parse(key, value)?,
            "crossover" => self.crossover = parse(key, value)?,
            _ => return Err(unknown("dea", key)),
        }
        Ok(())
    }

    fn entries(&self) -> Vec<(&'static str, String)> {
        vec![
            ("population", self.population.to_string()),
            ("max_iter", self.max_iter.to_string()),
            ("f_weight", fmt_f64(self.f_weight)),
            ("crossover", fmt_f64(self.crossover)),
        ]
    }

    fn validate(&self) -> Result<()> {
        if self.population < 4 {
            return Err(invalid("population", self.population, "must be at least 4"));
        }
        if self.max_iter == 0 {
            return Err(invalid("max_iter", 0, "must be at least 1"));
        }
        if !self.f_weight.is_finite() || self.f_weight < 0.0 {
            return Err(invalid("f_weight", self.f_weight, "must be a finite value >= 0"));
        }
        if !(0.0..=1.0).contains(&self.crossover) {
            return Err(invalid("crossover", self.crossover, "must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// rand/1 mutant for explicit donors.
pub fn mutant(a: &[f64], b: &[f64], c: &[f64], f: f64) -> Vec<f64> {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((a, b), c)| a + f * (b - c))
        .collect()
}

/// Binomial crossover: coordinate `d` comes from the mutant when
/// `draws[d] < cr` or `d == forced`.
pub fn binomial_crossover(target: &[f64], mutant: &[f64], cr: f64, draws: &[f64], forced: usize) -> Vec<f64> {
    target
        .iter()
        .zip(mutant)
        .zip(draws)
        .enumerate()
        .map(|(d, ((t, m), u))| if *u < cr || d == forced { *m } else { *t })
        .collect()
}

/// Three distinct indices in `0..n`, all different from `target`.
fn pick_donors(n: usize, target: usize, rng: &mut RngStream) -> [usize; 3] {
    let mut picked = [usize::MAX; 3];
    for k in 0..3 {
        picked[k] = loop {
            let i = rng.index(n);
            if i != target && !picked[..k].contains(&i) {
                break i;
            }
        };
    }
    picked
}

#[derive(Clone, Debug, Default)]
pub struct Dea {
    params: DeaParams,
}

const INIT_STREAM: u64 = 0;
const EVOLVE_STREAM: u64 = 1;

impl Dea {
    pub fn new(params: DeaParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    pub fn params(&self) -> &DeaParams {
        &self.params
    }

    /// One synchronous generation. Returns the new population.
    pub fn generation(&self, population: &[Candidate], eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Vec<Candidate> {
        let dim = eval.space().dimension();
        population
            .iter()
            .enumerate()
            .map(|(i, target)| {
                let [a, b, c] = pick_donors(population.len(), i, rng);
                let m = mutant(
                    population[a].position(),
                    population[b].position(),
                    population[c].position(),
                    self.params.f_weight,
                );
                let forced = rng.index(dim);
                let draws: Vec<f64> = (0..dim).map(|_| rng.uniform()).collect();
                let trial = binomial_crossover(target.position(), &m, self.params.crossover, &draws, forced);
                let trial = Candidate::evaluate(trial, eval);
                if trial.fitness() <= target.fitness() {
                    trial
                } else {
                    target.clone()
                }
            })
            .collect()
    }
}

impl Optimizer for Dea {
    fn name(&self) -> &'static str {
        "dea"
    }

    fn params(&self) -> Vec<(&'static str, String)> {
        self.params.entries()
    }

    fn set_evaluation_budget(&mut self, evaluations: u64) {
        let n = self.params.population as u64;
        self.params.max_iter = (evaluations.saturating_sub(n) / n).max(1) as usize;
    }

    fn run(&self, objective: &dyn Objective, seed: u64) -> RunRecord {
        let mut eval = Evaluator::new(objective);
        let root = RngStream::new(seed);
        let mut init = root.fork(INIT_STREAM);
        let mut population: Vec<Candidate> = (0..self.params.population)
            .map(|_| Candidate::evaluate(objective.space().random_position(&mut init), &mut eval))
            .collect();
        let mut rng = root.fork(EVOLVE_STREAM);
        let mut trace = Vec::with_capacity(self.params.max_iter);
        for _ in 0..self.params.max_iter {
            population = self.generation(&population, &mut eval, &mut rng);
            trace.push(population[best_index(&population)].fitness());
        }
        let final_best = population[best_index(&population)].clone();
        RunRecord {
            seed,
            trace,
            final_best,
            evaluations: eval.evaluations(),
        }
    }
}

pub(crate) fn factory(overrides: &[(String, String)]) -> Result<Box<dyn Optimizer>> {
    let mut params = DeaParams::default();
    params.apply(overrides)?;
    Ok(Box::new(Dea::new(params)?))
}
