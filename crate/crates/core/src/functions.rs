//! The five classic test problems: Schaffer F6 (pairwise summed), Sphere,
//! Griewank, Rastrigin and Rosenbrock. All have global minimum 0.
//!
//! | id         | f(x)                                                            | default box      |
//! |------------|-----------------------------------------------------------------|------------------|
//! | sphere     | Σ x_i²                                                          | [-100, 100]ⁿ     |
//! | rastrigin  | 10n + Σ (x_i² − 10 cos 2πx_i)                                   | [-5.12, 5.12]ⁿ   |
//! | griewank   | 1 + Σ x_i²/4000 − Π cos(x_i/√i)                                 | [-600, 600]ⁿ     |
//! | rosenbrock | Σ_{i<n} 100(x_{i+1} − x_i²)² + (1 − x_i)²                       | [-30, 30]ⁿ       |
//! | schaffer   | Σ_{i<n} 0.5 + (sin²√(x_i²+x_{i+1}²) − 0.5)/(1 + 0.001(x_i²+x_{i+1}²))² | [-100, 100]ⁿ |

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::space::SearchSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchmarkId {
    Schaffer,
    Sphere,
    Griewank,
    Rastrigin,
    Rosenbrock,
}

impl BenchmarkId {
    /// Column order of the comparison table.
    pub const ALL: [BenchmarkId; 5] = [
        BenchmarkId::Schaffer,
        BenchmarkId::Sphere,
        BenchmarkId::Griewank,
        BenchmarkId::Rastrigin,
        BenchmarkId::Rosenbrock,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchmarkId::Schaffer => "schaffer",
            BenchmarkId::Sphere => "sphere",
            BenchmarkId::Griewank => "griewank",
            BenchmarkId::Rastrigin => "rastrigin",
            BenchmarkId::Rosenbrock => "rosenbrock",
        }
    }

    pub fn min_dimension(self) -> usize {
        match self {
            BenchmarkId::Schaffer | BenchmarkId::Rosenbrock => 2,
            _ => 1,
        }
    }

    /// Conventional symmetric search interval, applied to every coordinate.
    pub fn default_bounds(self) -> (f64, f64) {
        match self {
            BenchmarkId::Schaffer | BenchmarkId::Sphere => (-100.0, 100.0),
            BenchmarkId::Griewank => (-600.0, 600.0),
            BenchmarkId::Rastrigin => (-5.12, 5.12),
            BenchmarkId::Rosenbrock => (-30.0, 30.0),
        }
    }

    /// A point where the global minimum is attained.
    pub fn optimum_point(self, dimension: usize) -> Vec<f64> {
        match self {
            BenchmarkId::Rosenbrock => vec![1.0; dimension],
            _ => vec![0.0; dimension],
        }
    }

    pub fn evaluate(self, x: &[f64]) -> f64 {
        match self {
            BenchmarkId::Schaffer => schaffer(x),
            BenchmarkId::Sphere => sphere(x),
            BenchmarkId::Griewank => griewank(x),
            BenchmarkId::Rastrigin => rastrigin(x),
            BenchmarkId::Rosenbrock => rosenbrock(x),
        }
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BenchmarkId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownBenchmark(s.to_string()))
    }
}

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos())
            .sum::<f64>()
}

pub fn griewank(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    1.0 + sum - prod
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            100.0 * (b - a * a).powi(2) + (1.0 - a).powi(2)
        })
        .sum()
}

pub fn schaffer(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let r2 = w[0] * w[0] + w[1] * w[1];
            let s = r2.sqrt().sin();
            0.5 + (s * s - 0.5) / (1.0 + 0.001 * r2).powi(2)
        })
        .sum()
}

/// A benchmark problem bound to a concrete search box.
#[derive(Clone, Debug, PartialEq)]
pub struct Benchmark {
    id: BenchmarkId,
    space: SearchSpace,
}

impl Benchmark {
    pub fn id(&self) -> BenchmarkId {
        self.id
    }

    /// Replaces the default box with `[low, high]` on every coordinate.
    pub fn with_bounds(self, low: f64, high: f64) -> Result<Self> {
        let space = SearchSpace::uniform(self.space.dimension(), low, high)?;
        Ok(Self { space, ..self })
    }
}

impl Objective for Benchmark {
    fn name(&self) -> &str {
        self.id.name()
    }

    fn space(&self) -> &SearchSpace {
        &self.space
    }

    fn known_optimum(&self) -> f64 {
        0.0
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        self.id.evaluate(x)
    }
}

/// Builds benchmark `id` in `dimension` dimensions with its default box.
pub fn make_benchmark(id: BenchmarkId, dimension: usize) -> Result<Benchmark> {
    if dimension < id.min_dimension() {
        return Err(Error::DimensionTooSmall {
            name: id.name(),
            min: id.min_dimension(),
            got: dimension,
        });
    }
    let (low, high) = id.default_bounds();
    Ok(Benchmark {
        id,
        space: SearchSpace::uniform(dimension, low, high)?,
    })
}

/// Name-based variant of [`make_benchmark`].
pub fn benchmark_by_name(name: &str, dimension: usize) -> Result<Benchmark> {
    make_benchmark(name.parse()?, dimension)
}
