//! Reference optimizers sharing the [`Optimizer`](crate::Optimizer) contract.

pub mod dea;
pub mod pso;
pub mod random;

pub use dea::{Dea, DeaParams};
pub use pso::{Pso, PsoParams};
pub use random::{RandomSearch, RandomSearchParams};
