//! The Great Salmon Run (TGSR) metaheuristic together with PSO and
//! differential-evolution baselines, the classic benchmark suite, and a
//! seeded experiment harness producing mean / std / success statistics.
//!
//! All optimizers minimize. Every optimizer implements [`Optimizer`] and is
//! constructed by name through a [`Registry`], so harness and CLI code never
//! match on concrete algorithm types.

pub mod baselines;
pub mod candidate;
pub mod error;
pub mod functions;
pub mod harness;
pub mod objective;
pub mod optimizer;
pub mod params;
pub mod registry;
pub mod rng;
pub mod space;
pub mod tgsr;

pub use candidate::{Candidate, Evaluator, Population};
pub use error::{Error, Result};
pub use functions::{make_benchmark, Benchmark, BenchmarkId};
pub use objective::{FnObjective, Objective};
pub use optimizer::{Optimizer, RunRecord};
pub use registry::Registry;
pub use rng::RngStream;
pub use space::SearchSpace;
pub use tgsr::{Tgsr, TgsrParams};
