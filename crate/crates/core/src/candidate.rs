use serde::{Deserialize, Serialize};

use crate::objective::Objective;
use crate::space::SearchSpace;

/// Counts objective evaluations for one run.
pub struct Evaluator<'a> {
    objective: &'a dyn Objective,
    count: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(objective: &'a dyn Objective) -> Self {
        Self {
            objective,
            count: 0,
        }
    }

    pub fn objective(&self) -> &'a dyn Objective {
        self.objective
    }

    pub fn space(&self) -> &'a SearchSpace {
        self.objective.space()
    }

    pub fn evaluations(&self) -> u64 {
        self.count
    }

    pub fn evaluate(&mut self, x: &[f64]) -> f64 {
        self.count += 1;
        self.objective.evaluate(x)
    }
}

/// A position together with its objective value. Fitness is computed once,
/// when the candidate is built, and never recomputed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    position: Vec<f64>,
    fitness: f64,
}

impl Candidate {
    /// Clamps `position` into the search space and evaluates it.
    pub fn evaluate(mut position: Vec<f64>, eval: &mut Evaluator<'_>) -> Self {
        eval.space().clamp(&mut position);
        let fitness = eval.evaluate(&position);
        Self { position, fitness }
    }

    /// Builds a candidate from an already known fitness.
    pub fn from_parts(position: Vec<f64>, fitness: f64) -> Self {
        Self { position, fitness }
    }

    pub fn position(&self) -> &[f64] {
        &self.position
    }

    pub fn fitness(&self) -> f64 {
        self.fitness
    }

    pub fn into_position(self) -> Vec<f64> {
        self.position
    }

    /// Strictly lower fitness. NaN never counts as better.
    pub fn is_better_than(&self, other: &Candidate) -> bool {
        self.fitness < other.fitness || (other.fitness.is_nan() && !self.fitness.is_nan())
    }
}

/// Ordered list of candidates with the index of the fittest cached.
#[derive(Clone, Debug, PartialEq)]
pub struct Population {
    members: Vec<Candidate>,
    best: usize,
}

/// Index of the minimal-fitness candidate; ties go to the lowest index.
pub fn best_index(members: &[Candidate]) -> usize {
    let mut best = 0;
    for (i, c) in members.iter().enumerate().skip(1) {
        if c.is_better_than(&members[best]) {
            best = i;
        }
    }
    best
}

impl Population {
    /// # Panics
    ///
    /// Panics on an empty member list.
    pub fn new(members: Vec<Candidate>) -> Self {
        assert!(!members.is_empty(), "population must not be empty");
        let best = best_index(&members);
        Self { members, best }
    }

    /// `size` uniform random members.
    pub fn random(size: usize, eval: &mut Evaluator<'_>, rng: &mut crate::RngStream) -> Self {
        let space = eval.space();
        let members = (0..size)
            .map(|_| Candidate::evaluate(space.random_position(rng), eval))
            .collect();
        Self::new(members)
    }

    pub fn members(&self) -> &[Candidate] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Candidate> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn best_index(&self) -> usize {
        self.best
    }

    pub fn best(&self) -> &Candidate {
        &self.members[self.best]
    }
}
