//! The Great Salmon Run optimizer.
//!
//! Each iteration shuffles the population and splits it into two pathways:
//!
//! * **ocean** (`floor(mu * population)` members): the first
//!   `ceil(scout_fraction * ocean)` members are scouts that take
//!   bound-scaled steps whose length decays as `(1 - t/T)^b`; the rest are
//!   fishers, sorted by fitness, each extrapolated away from the group best
//!   along `m1 + beta * (m1 - m2)`;
//! * **canyon** (the remainder): every member samples around the pathway
//!   best along `best + cos(phi_i) * (best - local)` with an independent
//!   angle per coordinate.
//!
//! A proposal replaces its parent only when strictly better. The pathways
//! are then regrouped and each member except the best is re-initialized
//! with probability `waterfall_prob`.
//!
//! Minimization throughout. All proposals are clamped into the search box
//! before evaluation.

use std::fmt;
use std::str::FromStr;

use crate::candidate::{best_index, Candidate, Evaluator, Population};
use crate::error::Result;
use crate::objective::Objective;
use crate::optimizer::{Optimizer, RunRecord};
use crate::params::{fmt_f64, invalid, parse, unknown, ParamSet};
use crate::rng::RngStream;
use crate::space::SearchSpace;

/// Direction of the second scout branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScoutVariant {
    /// `x + delta(t, x - lb)`: both branches step towards the upper bound.
    Verbatim,
    /// `x - delta(t, x - lb)`: the second branch steps towards the lower bound.
    Symmetric,
}

/// Which candidate the canyon pathway moves around.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BearReference {
    /// Best member of the canyon group.
    Canyon,
    /// Best member of the whole population at the start of the iteration.
    Global,
}

macro_rules! text_enum {
    ($ty:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        impl $ty {
            pub fn as_str(self) -> &'static str {
                match self { $($ty::$variant => $text),+ }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $ty {
            type Err = ();
            fn from_str(s: &str) -> std::result::Result<Self, ()> {
                match s { $($text => Ok($ty::$variant),)+ _ => Err(()) }
            }
        }
    };
}

text_enum!(ScoutVariant { Verbatim => "verbatim", Symmetric => "symmetric" });
text_enum!(BearReference { Canyon => "canyon", Global => "global" });

#[derive(Clone, Debug, PartialEq)]
pub struct TgsrParams {
    /// Share of the population sent through the ocean pathway.
    pub mu: f64,
    pub population: usize,
    pub max_iter: usize,
    /// Exponent `b` of the scout step decay.
    pub decay_exponent: f64,
    /// Per-member, per-iteration re-initialization probability.
    pub waterfall_prob: f64,
    /// Share of the ocean pathway acting as scouts.
    pub scout_fraction: f64,
    /// Draw `b ~ U(1, decay_exponent_max)` on every scout move instead of
    /// using `decay_exponent`.
    pub random_decay: bool,
    pub decay_exponent_max: f64,
    pub scout_variant: ScoutVariant,
    pub bear_reference: BearReference,
    /// Never re-initialize the current best member.
    pub protect_best: bool,
}

impl Default for TgsrParams {
    fn default() -> Self {
        Self {
            mu: 0.75,
            population: 40,
            max_iter: 10,
            decay_exponent: 1.6,
            waterfall_prob: 0.1,
            scout_fraction: 0.5,
            random_decay: false,
            decay_exponent_max: 2.0,
            scout_variant: ScoutVariant::Verbatim,
            bear_reference: BearReference::Canyon,
            protect_best: true,
        }
    }
}

impl ParamSet for TgsrParams {
    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "mu" => self.mu = parse(key, value)?,
            "population" => self.population = parse(key, value)?,
            "max_iter" => self.max_iter = parse(key, value)?,
            "decay_exponent" => self.decay_exponent = parse(key, value)?,
            "waterfall_prob" => self.waterfall_prob = parse(key, value)?,
            "scout_fraction" => self.scout_fraction = parse(key, value)?,
            "random_decay" => self.random_decay = parse(key, value)?,
            "decay_exponent_max" => self.decay_exponent_max = parse(key, value)?,
            "scout_variant" => {
                self.scout_variant = value
                    .parse()
                    .map_err(|_| invalid(key, value, "expected verbatim or symmetric"))?
            }
            "bear_reference" => {
                self.bear_reference = value
                    .parse()
                    .map_err(|_| invalid(key, value, "expected canyon or global"))?
            }
            "protect_best" => self.protect_best = parse(key, value)?,
            _ => return Err(unknown("tgsr", key)),
        }
        Ok(())
    }

    fn entries(&self) -> Vec<(&'static str, String)> {
        vec![
            ("mu", fmt_f64(self.mu)),
            ("population", self.population.to_string()),
            ("max_iter", self.max_iter.to_string()),
            ("decay_exponent", fmt_f64(self.decay_exponent)),
            ("waterfall_prob", fmt_f64(self.waterfall_prob)),
            ("scout_fraction", fmt_f64(self.scout_fraction)),
            ("random_decay", self.random_decay.to_string()),
            ("decay_exponent_max", fmt_f64(self.decay_exponent_max)),
            ("scout_variant", self.scout_variant.to_string()),
            ("bear_reference", self.bear_reference.to_string()),
            ("protect_best", self.protect_best.to_string()),
        ]
    }

    fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0 && self.mu < 1.0) {
            return Err(invalid("mu", self.mu, "must lie in (0, 1)"));
        }
        // Room for at least one scout and one fisher pair.
        if self.population < 6 {
            return Err(invalid("population", self.population, "must be at least 6"));
        }
        if self.max_iter == 0 {
            return Err(invalid("max_iter", 0, "must be at least 1"));
        }
        if !(self.decay_exponent.is_finite() && self.decay_exponent > 1.0) {
            return Err(invalid("decay_exponent", self.decay_exponent, "must be > 1"));
        }
        if !(0.0..=1.0).contains(&self.waterfall_prob) {
            return Err(invalid("waterfall_prob", self.waterfall_prob, "must lie in [0, 1]"));
        }
        if !(self.scout_fraction > 0.0 && self.scout_fraction < 1.0) {
            return Err(invalid("scout_fraction", self.scout_fraction, "must lie in (0, 1)"));
        }
        if self.random_decay && !(self.decay_exponent_max > 1.0 && self.decay_exponent_max.is_finite()) {
            return Err(invalid("decay_exponent_max", self.decay_exponent_max, "must be > 1"));
        }
        Ok(())
    }
}

impl TgsrParams {
    /// Ocean and canyon group sizes.
    pub fn pathway_sizes(&self) -> (usize, usize) {
        pathway_sizes(self.mu, self.population)
    }

    /// Number of scouts in an ocean group of `ocean` members.
    pub fn scout_count(&self, ocean: usize) -> usize {
        ((self.scout_fraction * ocean as f64).ceil() as usize).min(ocean)
    }

    /// Expected objective evaluations per iteration.
    pub fn expected_evaluations_per_iteration(&self) -> f64 {
        let (ocean, canyon) = self.pathway_sizes();
        let scouts = self.scout_count(ocean);
        let fishers = ocean - scouts;
        let bears = match self.bear_reference {
            BearReference::Canyon => canyon.saturating_sub(1) as f64,
            // The global best sits in the canyon with probability canyon/population.
            BearReference::Global => {
                canyon as f64 - canyon as f64 / self.population as f64
            }
        };
        let exposed = if self.protect_best {
            self.population - 1
        } else {
            self.population
        };
        scouts as f64 + fishers.saturating_sub(1) as f64 + bears + exposed as f64 * self.waterfall_prob
    }
}

/// `(floor(mu * population), population - floor(mu * population))`.
pub fn pathway_sizes(mu: f64, population: usize) -> (usize, usize) {
    let ocean = ((mu * population as f64).floor() as usize).min(population);
    (ocean, population - ocean)
}

/// `(1 - t/T)^b`, the step envelope of a scout at iteration `t` of `T`.
pub fn decay_factor(t: usize, max_iter: usize, b: f64) -> f64 {
    let remaining = 1.0 - t as f64 / max_iter as f64;
    remaining.max(0.0).powf(b)
}

/// One coordinate of the scout step: `y * u * (1 - t/T)^b`.
pub fn decay(t: usize, max_iter: usize, b: f64, y: f64, u: f64) -> f64 {
    y * u * decay_factor(t, max_iter, b)
}

/// Scout proposal for explicit draws (before clamping). `towards_upper`
/// selects the `ub - x` branch; `unit` holds one uniform draw per coordinate.
pub fn scout_position(
    current: &[f64],
    space: &SearchSpace,
    envelope: f64,
    towards_upper: bool,
    variant: ScoutVariant,
    unit: &[f64],
) -> Vec<f64> {
    current
        .iter()
        .zip(unit)
        .enumerate()
        .map(|(i, (&x, &u))| {
            if towards_upper {
                x + (space.upper()[i] - x) * u * envelope
            } else {
                let step = (x - space.lower()[i]) * u * envelope;
                match variant {
                    ScoutVariant::Verbatim => x + step,
                    ScoutVariant::Symmetric => x - step,
                }
            }
        })
        .collect()
}

/// Recruited proposal `m1 + beta * (m1 - m2)` (before clamping).
pub fn recruit_position(m1: &[f64], m2: &[f64], beta: f64) -> Vec<f64> {
    m1.iter().zip(m2).map(|(a, b)| a + beta * (a - b)).collect()
}

/// Bear proposal `best + cos(phi_i) * (best - local)` per coordinate
/// (before clamping).
pub fn bear_position(best: &[f64], local: &[f64], angles: &[f64]) -> Vec<f64> {
    best.iter()
        .zip(local)
        .zip(angles)
        .map(|((b, l), phi)| phi.cos() * (b - l) + b)
        .collect()
}

/// The two pathway groups of one iteration.
#[derive(Clone, Debug, PartialEq)]
pub struct PathwaySplit {
    pub ocean: Vec<Candidate>,
    pub canyon: Vec<Candidate>,
}

/// Shuffles `members` uniformly and cuts off the first
/// `floor(mu * len)` as the ocean group.
pub fn share_population(mut members: Vec<Candidate>, mu: f64, rng: &mut RngStream) -> PathwaySplit {
    rng.shuffle(&mut members);
    let (ocean_len, _) = pathway_sizes(mu, members.len());
    let canyon = members.split_off(ocean_len);
    PathwaySplit {
        ocean: members,
        canyon,
    }
}

/// Bound-scaled exploration step of a scout at iteration `t`.
pub fn scout_move(
    current: &Candidate,
    t: usize,
    params: &TgsrParams,
    eval: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> Candidate {
    let space = eval.space();
    let towards_upper = rng.coin();
    let b = if params.random_decay {
        rng.uniform_in(1.0, params.decay_exponent_max)
    } else {
        params.decay_exponent
    };
    let unit: Vec<f64> = (0..space.dimension()).map(|_| rng.uniform()).collect();
    let envelope = decay_factor(t, params.max_iter, b);
    let proposal = scout_position(
        current.position(),
        space,
        envelope,
        towards_upper,
        params.scout_variant,
        &unit,
    );
    Candidate::evaluate(proposal, eval)
}

/// Recruited agent of a fisher triple. The better of the two hunters is
/// used as the anchor regardless of argument order.
pub fn fisher_triple_move(
    m1: &Candidate,
    m2: &Candidate,
    eval: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> Candidate {
    let (m1, m2) = if m2.is_better_than(m1) { (m2, m1) } else { (m1, m2) };
    let beta = rng.uniform();
    Candidate::evaluate(recruit_position(m1.position(), m2.position(), beta), eval)
}

/// Bear exploitation around `best`, scaled by its distance to `local`.
pub fn bear_move(
    best: &Candidate,
    local: &Candidate,
    eval: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> Candidate {
    let angles: Vec<f64> = (0..best.position().len())
        .map(|_| rng.uniform() * std::f64::consts::TAU)
        .collect();
    Candidate::evaluate(bear_position(best.position(), local.position(), &angles), eval)
}

/// Re-initializes each member with probability `wfp`, skipping the best
/// member when `protect_best` is set. Returns the number replaced.
pub fn waterfall_attrition(
    members: &mut [Candidate],
    wfp: f64,
    protect_best: bool,
    eval: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> usize {
    if members.is_empty() {
        return 0;
    }
    let protected = protect_best.then(|| best_index(members));
    let space = eval.space();
    let mut replaced = 0;
    for (i, member) in members.iter_mut().enumerate() {
        // One draw per member keeps the stream aligned whether or not it is protected.
        let hit = rng.bernoulli(wfp);
        if hit && Some(i) != protected {
            *member = Candidate::evaluate(space.random_position(rng), eval);
            replaced += 1;
        }
    }
    replaced
}

/// Bookkeeping for one iteration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IterationReport {
    pub scouts: usize,
    pub fishers: usize,
    pub canyon: usize,
    pub proposals: usize,
    pub accepted: usize,
    pub waterfall_replacements: usize,
}

// Sub-stream labels.
const INIT_STREAM: u64 = 0;
const SHARE_STREAM: u64 = 1;
const SCOUT_STREAM: u64 = 2;
const FISHER_STREAM: u64 = 3;
const BEAR_STREAM: u64 = 4;
const WATERFALL_STREAM: u64 = 5;

#[derive(Clone, Debug, Default)]
pub struct Tgsr {
    params: TgsrParams,
}

impl Tgsr {
    pub fn new(params: TgsrParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    pub fn params(&self) -> &TgsrParams {
        &self.params
    }

    /// One migration: share, run both pathways, regroup, apply waterfalls.
    /// `rng` is the run's master stream; it is only forked, never advanced.
    pub fn iterate(
        &self,
        population: Population,
        t: usize,
        eval: &mut Evaluator<'_>,
        rng: &RngStream,
    ) -> (Population, IterationReport) {
        let p = &self.params;
        let iteration_rng = rng.fork(t as u64);
        let mut report = IterationReport::default();

        let global_best = population.best().clone();
        let PathwaySplit {
            mut ocean,
            mut canyon,
        } = share_population(
            population.into_members(),
            p.mu,
            &mut iteration_rng.fork(SHARE_STREAM),
        );

        let scouts = p.scout_count(ocean.len());
        report.scouts = scouts;
        report.fishers = ocean.len() - scouts;
        report.canyon = canyon.len();

        let mut scout_rng = iteration_rng.fork(SCOUT_STREAM);
        for member in &mut ocean[..scouts] {
            let proposal = scout_move(member, t, p, eval, &mut scout_rng);
            report.proposals += 1;
            if proposal.is_better_than(member) {
                *member = proposal;
                report.accepted += 1;
            }
        }

        let fishers = &mut ocean[scouts..];
        fishers.sort_by(|a, b| a.fitness().total_cmp(&b.fitness()));
        if let Some((anchor, rest)) = fishers.split_first_mut() {
            let mut fisher_rng = iteration_rng.fork(FISHER_STREAM);
            for member in rest {
                let proposal = fisher_triple_move(anchor, member, eval, &mut fisher_rng);
                report.proposals += 1;
                if proposal.is_better_than(member) {
                    *member = proposal;
                    report.accepted += 1;
                }
            }
        }

        if !canyon.is_empty() {
            let canyon_best = best_index(&canyon);
            let (reference, skip) = match p.bear_reference {
                BearReference::Canyon => (canyon[canyon_best].clone(), Some(canyon_best)),
                BearReference::Global => {
                    let skip = canyon.iter().position(|c| *c == global_best);
                    (global_best, skip)
                }
            };
            let mut bear_rng = iteration_rng.fork(BEAR_STREAM);
            for (i, member) in canyon.iter_mut().enumerate() {
                if Some(i) == skip {
                    continue;
                }
                let proposal = bear_move(&reference, member, eval, &mut bear_rng);
                report.proposals += 1;
                if proposal.is_better_than(member) {
                    *member = proposal;
                    report.accepted += 1;
                }
            }
        }

        let mut members = ocean;
        members.append(&mut canyon);
        report.waterfall_replacements = waterfall_attrition(
            &mut members,
            p.waterfall_prob,
            p.protect_best,
            eval,
            &mut iteration_rng.fork(WATERFALL_STREAM),
        );
        (Population::new(members), report)
    }

    /// Full run that also returns the per-iteration reports.
    pub fn run_with_reports(
        &self,
        objective: &dyn Objective,
        seed: u64,
    ) -> (RunRecord, Vec<IterationReport>) {
        let mut eval = Evaluator::new(objective);
        let rng = RngStream::new(seed);
        let mut population =
            Population::random(self.params.population, &mut eval, &mut rng.fork(INIT_STREAM));
        let mut trace = Vec::with_capacity(self.params.max_iter);
        let mut reports = Vec::with_capacity(self.params.max_iter);
        // Iteration streams use labels 1..=T, clear of INIT_STREAM.
        for t in 1..=self.params.max_iter {
            let (next, report) = self.iterate(population, t, &mut eval, &rng);
            population = next;
            trace.push(population.best().fitness());
            reports.push(report);
        }
        let record = RunRecord {
            seed,
            trace,
            final_best: population.best().clone(),
            evaluations: eval.evaluations(),
        };
        (record, reports)
    }
}

impl Optimizer for Tgsr {
    fn name(&self) -> &'static str {
        "tgsr"
    }

    fn params(&self) -> Vec<(&'static str, String)> {
        self.params.entries()
    }

    fn set_evaluation_budget(&mut self, evaluations: u64) {
        let per_iteration = self.params.expected_evaluations_per_iteration().max(1.0);
        let available = evaluations.saturating_sub(self.params.population as u64) as f64;
        self.params.max_iter = ((available / per_iteration).floor() as usize).max(1);
    }

    fn run(&self, objective: &dyn Objective, seed: u64) -> RunRecord {
        self.run_with_reports(objective, seed).0
    }
}

pub(crate) fn factory(overrides: &[(String, String)]) -> Result<Box<dyn Optimizer>> {
    let mut params = TgsrParams::default();
    params.apply(overrides)?;
    Ok(Box::new(Tgsr::new(params)?))
}
