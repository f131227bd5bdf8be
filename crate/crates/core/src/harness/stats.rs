use serde::{Deserialize, Serialize};

/// Summary of a batch of runs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentStats {
    /// Mean final best.
    pub quality: f64,
    /// Sample standard deviation (n - 1) of the final bests; 0 for one run.
    pub robustness: f64,
    /// Share of runs whose final best is at or below the threshold.
    pub success_rate: f64,
    /// Mean objective evaluations per run.
    pub evaluations: f64,
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn sample_std(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (xs.len() - 1) as f64).sqrt()
}

/// Linear-interpolation quantile, `q` in `[0, 1]`.
pub fn quantile(xs: &[f64], q: f64) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

pub fn median(xs: &[f64]) -> f64 {
    quantile(xs, 0.5)
}

pub fn summarize(finals: &[f64], evaluations: &[u64], threshold: f64) -> ExperimentStats {
    let hits = finals.iter().filter(|f| **f <= threshold).count();
    let evals: Vec<f64> = evaluations.iter().map(|e| *e as f64).collect();
    ExperimentStats {
        quality: mean(finals),
        robustness: sample_std(finals),
        success_rate: if finals.is_empty() {
            0.0
        } else {
            hits as f64 / finals.len() as f64
        },
        evaluations: mean(&evals),
    }
}
