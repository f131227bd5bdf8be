//! Algorithms × benchmarks grid with a quality line and a robustness line
//! per algorithm, each cell carrying the success percentage.

use std::fmt::Write as _;
use std::path::Path;

use super::output::sci;
use super::stats::ExperimentStats;
use super::ExperimentResult;
use crate::error::{Error, Result};
use crate::functions::BenchmarkId;

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub algorithm: String,
    /// One entry per column, in column order.
    pub cells: Vec<ExperimentStats>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ComparisonTable {
    pub benchmarks: Vec<BenchmarkId>,
    pub rows: Vec<ComparisonRow>,
}

/// Groups results by algorithm label (first appearance order). Columns
/// follow the first algorithm's benchmark order; every algorithm must cover
/// exactly the same benchmarks.
pub fn compare_table(results: &[ExperimentResult]) -> Result<ComparisonTable> {
    let mut groups: Vec<(String, Vec<(BenchmarkId, ExperimentStats)>)> = Vec::new();
    for r in results {
        let label = r.plan.label();
        let cell = (r.plan.benchmark, r.stats);
        match groups.iter_mut().find(|(name, _)| name == label) {
            Some((_, cells)) => {
                if cells.iter().any(|(b, _)| *b == r.plan.benchmark) {
                    return Err(Error::MismatchedBenchmarks(format!(
                        "'{label}' lists {} twice",
                        r.plan.benchmark
                    )));
                }
                cells.push(cell)
            }
            None => groups.push((label.to_string(), vec![cell])),
        }
    }
    let Some((_, first)) = groups.first() else {
        return Ok(ComparisonTable::default());
    };
    let benchmarks: Vec<BenchmarkId> = first.iter().map(|(b, _)| *b).collect();
    let mut rows = Vec::with_capacity(groups.len());
    for (algorithm, cells) in &groups {
        if cells.len() != benchmarks.len() {
            return Err(Error::MismatchedBenchmarks(format!(
                "'{algorithm}' has {} benchmarks, expected {}",
                cells.len(),
                benchmarks.len()
            )));
        }
        let ordered = benchmarks
            .iter()
            .map(|b| {
                cells.iter().find(|(id, _)| id == b).map(|(_, s)| *s).ok_or_else(|| {
                    Error::MismatchedBenchmarks(format!("'{algorithm}' is missing {b}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(ComparisonRow {
            algorithm: algorithm.clone(),
            cells: ordered,
        });
    }
    Ok(ComparisonTable { benchmarks, rows })
}

const QUALITY: &str = "Quality (Success %)";
const ROBUSTNESS: &str = "Robustness (Success %)";

fn cell(value: f64, success_rate: f64) -> String {
    format!("{value:.3e} ({:.0}%)", success_rate * 100.0)
}

impl ComparisonTable {
    /// `(algorithm, statistic, cells)` lines, two per algorithm.
    fn lines(&self) -> Vec<(String, &'static str, Vec<String>)> {
        let mut out = Vec::new();
        for row in &self.rows {
            for (stat, pick) in [
                (QUALITY, (|s: &ExperimentStats| s.quality) as fn(&ExperimentStats) -> f64),
                (ROBUSTNESS, |s: &ExperimentStats| s.robustness),
            ] {
                let cells = row.cells.iter().map(|s| cell(pick(s), s.success_rate)).collect();
                out.push((row.algorithm.clone(), stat, cells));
            }
        }
        out
    }

    pub fn render_text(&self) -> String {
        let mut header = vec!["algorithm".to_string(), "statistic".to_string()];
        header.extend(self.benchmarks.iter().map(|b| b.to_string()));
        let body: Vec<Vec<String>> = self
            .lines()
            .into_iter()
            .enumerate()
            .map(|(i, (algo, stat, cells))| {
                let mut line = vec![if i % 2 == 0 { algo } else { String::new() }, stat.to_string()];
                line.extend(cells);
                line
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                std::iter::once(&header)
                    .chain(&body)
                    .map(|row| row[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut text = String::new();
        for row in std::iter::once(&header).chain(&body) {
            let padded: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(v, w)| format!("{v:<w$}"))
                .collect();
            let _ = writeln!(text, "{}", padded.join("  ").trim_end());
        }
        text
    }

    /// Same grid as CSV: `algorithm,statistic,<benchmark>...`, cell text
    /// `value (pct%)`, plus machine-readable raw values.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let err = |source| Error::Csv {
            path: path.to_path_buf(),
            source,
        };
        let mut w = csv::Writer::from_path(path).map_err(err)?;
        let mut header = vec!["algorithm".to_string(), "statistic".to_string()];
        header.extend(self.benchmarks.iter().map(|b| b.to_string()));
        w.write_record(&header).map_err(err)?;
        for (algo, stat, cells) in self.lines() {
            let mut rec = vec![algo, stat.to_string()];
            rec.extend(cells);
            w.write_record(&rec).map_err(err)?;
        }
        // Raw numbers for downstream tools.
        for row in &self.rows {
            let mut rec = vec![row.algorithm.clone(), "success_rate".to_string()];
            rec.extend(row.cells.iter().map(|s| sci(s.success_rate)));
            w.write_record(&rec).map_err(err)?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }
}
