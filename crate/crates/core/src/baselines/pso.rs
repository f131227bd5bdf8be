//! Global-best particle swarm.
//!
//! ```text
//! v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x)
//! x <- clamp(x + v)
//! ```
//!
//! `r1`, `r2` are drawn per coordinate. Velocities start at zero and are
//! limited to `velocity_clamp * (ub - lb)` per coordinate. The global best
//! is refreshed once per iteration, after every particle has moved.

use crate::candidate::{best_index, Candidate, Evaluator};
use crate::error::Result;
use crate::objective::Objective;
use crate::optimizer::{Optimizer, RunRecord};
use crate::params::{fmt_f64, invalid, parse, unknown, ParamSet};
use crate::rng::RngStream;

#[derive(Clone, Debug, PartialEq)]
pub struct PsoParams {
    pub swarm_size: usize,
    pub max_iter: usize,
    pub inertia: f64,
    pub c1: f64,
    pub c2: f64,
    /// Velocity limit as a fraction of each coordinate's range.
    pub velocity_clamp: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            swarm_size: 100,
            max_iter: 100,
            inertia: 0.72,
            c1: 2.0,
            c2: 2.0,
            velocity_clamp: 0.2,
        }
    }
}

impl ParamSet for PsoParams {
    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "swarm_size" => self.swarm_size = parse(key, value)?,
            "max_iter" => self.max_iter = parse(key, value)?,
            "inertia" => self.inertia = parse(key, value)?,
            "c1" => self.c1 = parse(key, value)?,
            "c2" => self.c2 = parse(key, value)?,
            "velocity_clamp" => self.velocity_clamp = parse(key, value)?,
            _ => return Err(unknown("pso", key)),
        }
        Ok(())
    }

    fn entries(&self) -> Vec<(&'static str, String)> {
        vec![
            ("swarm_size", self.swarm_size.to_string()),
            ("max_iter", self.max_iter.to_string()),
            ("inertia", fmt_f64(self.inertia)),
            ("c1", fmt_f64(self.c1)),
            ("c2", fmt_f64(self.c2)),
            ("velocity_clamp", fmt_f64(self.velocity_clamp)),
        ]
    }

    fn validate(&self) -> Result<()> {
        if self.swarm_size < 2 {
            return Err(invalid("swarm_size", self.swarm_size, "must be at least 2"));
        }
        if self.max_iter == 0 {
            return Err(invalid("max_iter", 0, "must be at least 1"));
        }
        for (key, v) in [("inertia", self.inertia), ("c1", self.c1), ("c2", self.c2)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(key, v, "must be a finite value >= 0"));
            }
        }
        if !(self.velocity_clamp > 0.0 && self.velocity_clamp.is_finite()) {
            return Err(invalid("velocity_clamp", self.velocity_clamp, "must be > 0"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Pso {
    params: PsoParams,
}

const INIT_STREAM: u64 = 0;
const MOVE_STREAM: u64 = 1;

impl Pso {
    pub fn new(params: PsoParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    pub fn params(&self) -> &PsoParams {
        &self.params
    }

    /// Runs from explicit starting positions with zero velocity.
    pub fn run_from(&self, objective: &dyn Objective, positions: Vec<Vec<f64>>, seed: u64) -> RunRecord {
        let mut eval = Evaluator::new(objective);
        let swarm: Vec<Candidate> = positions
            .into_iter()
            .map(|x| Candidate::evaluate(x, &mut eval))
            .collect();
        self.run_swarm(swarm, eval, seed)
    }

    fn run_swarm(&self, mut swarm: Vec<Candidate>, mut eval: Evaluator<'_>, seed: u64) -> RunRecord {
        let p = &self.params;
        let space = eval.space();
        let dim = space.dimension();
        let vmax: Vec<f64> = (0..dim).map(|i| p.velocity_clamp * space.width(i)).collect();
        let mut velocity = vec![vec![0.0; dim]; swarm.len()];
        let mut personal = swarm.clone();
        let mut global = personal[best_index(&personal)].clone();
        let mut rng = RngStream::new(seed).fork(MOVE_STREAM);
        let mut trace = Vec::with_capacity(p.max_iter);

        for _ in 0..p.max_iter {
            for ((particle, v), pbest) in swarm.iter_mut().zip(&mut velocity).zip(&mut personal) {
                let mut x = particle.position().to_vec();
                for d in 0..dim {
                    let (r1, r2) = (rng.uniform(), rng.uniform());
                    let vd = p.inertia * v[d]
                        + p.c1 * r1 * (pbest.position()[d] - x[d])
                        + p.c2 * r2 * (global.position()[d] - x[d]);
                    v[d] = vd.clamp(-vmax[d], vmax[d]);
                    x[d] += v[d];
                }
                *particle = Candidate::evaluate(x, &mut eval);
                if particle.is_better_than(pbest) {
                    *pbest = particle.clone();
                }
            }
            let best = &personal[best_index(&personal)];
            if best.is_better_than(&global) {
                global = best.clone();
            }
            trace.push(global.fitness());
        }

        RunRecord {
            seed,
            trace,
            final_best: global,
            evaluations: eval.evaluations(),
        }
    }
}

impl Optimizer for Pso {
    fn name(&self) -> &'static str {
        "pso"
    }

    fn params(&self) -> Vec<(&'static str, String)> {
        self.params.entries()
    }

    fn set_evaluation_budget(&mut self, evaluations: u64) {
        let n = self.params.swarm_size as u64;
        self.params.max_iter = (evaluations.saturating_sub(n) / n).max(1) as usize;
    }

    fn run(&self, objective: &dyn Objective, seed: u64) -> RunRecord {
        let mut eval = Evaluator::new(objective);
        let mut rng = RngStream::new(seed).fork(INIT_STREAM);
        let swarm = (0..self.params.swarm_size)
            .map(|_| Candidate::evaluate(objective.space().random_position(&mut rng), &mut eval))
            .collect();
        self.run_swarm(swarm, eval, seed)
    }
}

pub(crate) fn factory(overrides: &[(String, String)]) -> Result<Box<dyn Optimizer>> {
    let mut params = PsoParams::default();
    params.apply(overrides)?;
    Ok(Box::new(Pso::new(params)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{make_benchmark, BenchmarkId};

    #[test]
    fn table_defaults() {
        let p = PsoParams::default();
        assert_eq!((p.swarm_size, p.max_iter, p.inertia, p.c1, p.c2), (100, 100, 0.72, 2.0, 2.0));
    }

    #[test]
    fn swarm_at_optimum_is_a_fixed_point() {
        let f = make_benchmark(BenchmarkId::Rosenbrock, 4).unwrap();
        let pso = Pso::new(PsoParams { swarm_size: 5, max_iter: 20, ..Default::default() }).unwrap();
        let rec = pso.run_from(&f, vec![vec![1.0; 4]; 5], 3);
        assert_eq!(rec.trace, vec![0.0; 20]);
        assert_eq!(rec.final_best.position(), &[1.0; 4]);
    }

    #[test]
    fn deterministic_monotone_and_bounded() {
        let f = make_benchmark(BenchmarkId::Rastrigin, 10).unwrap();
        let pso = Pso::new(PsoParams { max_iter: 50, ..Default::default() }).unwrap();
        let a = pso.run(&f, 12);
        assert_eq!(a, pso.run(&f, 12));
        assert!(a.is_monotone());
        assert!(f.space().contains(a.final_best.position()));
        assert_eq!(a.evaluations, 100 + 100 * 50);
    }

    #[test]
    fn rejects_bad_params() {
        let mut p = PsoParams::default();
        assert!(p.apply(&[("swarm_size".into(), "1".into())]).is_err());
        let mut p = PsoParams::default();
        assert!(p.apply(&[("c1".into(), "-1".into())]).is_err());
    }
}
