//! Result files. Nothing here depends on wall-clock time or hash-map
//! order, so re-running a plan reproduces every file byte for byte.
//!
//! * `summary.csv`: one row per experiment.
//! * CSV format: `traces/<nn>_<label>_<benchmark>_seed<seed>.csv` per run.
//! * JSON format: `<nn>_<label>_<benchmark>.json` per experiment holding
//!   `{plan, stats, records, ...}`.

use std::fmt;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ExperimentResult;
use crate::error::{Error, Result};

pub const SUMMARY_HEADER: [&str; 8] = [
    "algorithm",
    "benchmark",
    "dimension",
    "runs",
    "quality",
    "robustness",
    "success_rate",
    "mean_evaluations",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::InvalidPlan(format!("unknown output format '{s}'"))),
        }
    }
}

pub(crate) fn sci(v: f64) -> String {
    format!("{v:e}")
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

fn file_stem(index: usize, result: &ExperimentResult) -> String {
    let label: String = result
        .plan
        .label()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect();
    format!("{index:02}_{label}_{}", result.plan.benchmark)
}

pub fn write_summary_csv(results: &[ExperimentResult], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(SUMMARY_HEADER).map_err(csv_err(path))?;
    for r in results {
        w.write_record([
            r.plan.label().to_string(),
            r.plan.benchmark.to_string(),
            r.plan.dimension.to_string(),
            r.plan.runs.to_string(),
            sci(r.stats.quality),
            sci(r.stats.robustness),
            sci(r.stats.success_rate),
            sci(r.stats.evaluations),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// One `iteration,best_fitness` file per run. Returns the paths written.
pub fn write_traces(index: usize, result: &ExperimentResult, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let stem = file_stem(index, result);
    let mut written = Vec::with_capacity(result.records.len());
    for rec in &result.records {
        let path = dir.join(format!("{stem}_seed{}.csv", rec.seed));
        let mut w = csv::Writer::from_path(&path).map_err(csv_err(&path))?;
        w.write_record(["iteration", "best_fitness"]).map_err(csv_err(&path))?;
        for (i, v) in rec.trace.iter().enumerate() {
            w.write_record([(i + 1).to_string(), sci(*v)]).map_err(csv_err(&path))?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

pub fn write_json(result: &ExperimentResult, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, result).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes `summary.csv` plus per-run traces (CSV) or per-experiment JSON
/// into `dir`. Returns every path written.
pub fn write_results(results: &[ExperimentResult], dir: &Path, format: OutputFormat) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let summary = dir.join("summary.csv");
    write_summary_csv(results, &summary)?;
    let mut written = vec![summary];
    for (i, r) in results.iter().enumerate() {
        match format {
            OutputFormat::Csv => written.extend(write_traces(i, r, &dir.join("traces"))?),
            OutputFormat::Json => {
                let path = dir.join(format!("{}.json", file_stem(i, r)));
                write_json(r, &path)?;
                written.push(path);
            }
        }
    }
    Ok(written)
}
