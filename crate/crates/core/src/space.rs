use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Axis-aligned box `lower[i] <= x[i] <= upper[i]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl SearchSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidSpace("dimension must be at least 1".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::InvalidSpace(format!(
                "lower has {} entries but upper has {}",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(Error::InvalidSpace(format!("bound {i} is not finite")));
            }
            if lo >= hi {
                return Err(Error::InvalidSpace(format!(
                    "lower[{i}] = {lo} is not below upper[{i}] = {hi}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[low, high]` on every coordinate.
    pub fn uniform(dimension: usize, low: f64, high: f64) -> Result<Self> {
        Self::new(vec![low; dimension], vec![high; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }

    /// `lower + u * (upper - lower)` for explicit draws `u`.
    pub fn position_from_unit(&self, unit: &[f64]) -> Vec<f64> {
        debug_assert_eq!(unit.len(), self.dimension());
        unit.iter()
            .enumerate()
            .map(|(i, u)| self.lower[i] + u * self.width(i))
            .collect()
    }

    /// Uniform sample from the box, one independent draw per coordinate.
    pub fn random_position(&self, rng: &mut RngStream) -> Vec<f64> {
        (0..self.dimension())
            .map(|i| self.lower[i] + rng.uniform() * self.width(i))
            .collect()
    }

    /// Coordinate-wise clamp into the box. NaN coordinates are sent to the
    /// lower bound.
    pub fn clamp(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dimension());
        for (v, (lo, hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = if v.is_nan() { *lo } else { v.max(*lo).min(*hi) };
        }
    }

    pub fn clamped(&self, mut x: Vec<f64>) -> Vec<f64> {
        self.clamp(&mut x);
        x
    }
}
