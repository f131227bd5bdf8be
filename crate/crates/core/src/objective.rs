use std::fmt;

use crate::space::SearchSpace;

/// A deterministic function to minimize over a box.
pub trait Objective: Send + Sync {
    fn name(&self) -> &str;

    fn space(&self) -> &SearchSpace;

    /// Value of the global minimum.
    fn known_optimum(&self) -> f64;

    fn evaluate(&self, x: &[f64]) -> f64;
}

/// An [`Objective`] backed by a closure.
pub struct FnObjective<F> {
    name: String,
    space: SearchSpace,
    optimum: f64,
    f: F,
}

impl<F> FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    pub fn new(name: impl Into<String>, space: SearchSpace, optimum: f64, f: F) -> Self {
        Self {
            name: name.into(),
            space,
            optimum,
            f,
        }
    }
}

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn space(&self) -> &SearchSpace {
        &self.space
    }

    fn known_optimum(&self) -> f64 {
        self.optimum
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

impl<F> fmt::Debug for FnObjective<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnObjective")
            .field("name", &self.name)
            .field("space", &self.space)
            .finish()
    }
}
