use std::fmt;

use crate::baselines::{dea, pso, random};
use crate::error::{Error, Result};
use crate::optimizer::Optimizer;
use crate::tgsr;

/// Builds an optimizer from `key=value` overrides on top of its defaults.
pub type Factory = fn(&[(String, String)]) -> Result<Box<dyn Optimizer>>;

#[derive(Clone)]
pub struct Registration {
    pub name: &'static str,
    pub summary: &'static str,
    pub factory: Factory,
}

impl fmt::Debug for Registration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Registration")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

/// Name-keyed optimizer factories, kept in registration order.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    entries: Vec<Registration>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// tgsr, pso, dea and random search.
    pub fn builtin() -> Self {
        let mut r = Self::new();
        r.register("tgsr", "Great Salmon Run (ocean + canyon pathways)", tgsr::factory)
            .and_then(|_| r.register("pso", "global-best particle swarm", pso::factory))
            .and_then(|_| r.register("dea", "differential evolution rand/1/bin", dea::factory))
            .and_then(|_| r.register("random", "uniform random search", random::factory))
            .expect("builtin names are unique");
        r
    }

    pub fn register(&mut self, name: &'static str, summary: &'static str, factory: Factory) -> Result<()> {
        if self.get(name).is_some() {
            return Err(Error::DuplicateAlgorithm(name.to_string()));
        }
        self.entries.push(Registration {
            name,
            summary,
            factory,
        });
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Registration> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn create(&self, name: &str, overrides: &[(String, String)]) -> Result<Box<dyn Optimizer>> {
        let entry = self
            .get(name)
            .ok_or_else(|| Error::UnknownAlgorithm(name.to_string()))?;
        (entry.factory)(overrides)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|e| e.name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Registration> {
        self.entries.iter()
    }
}
