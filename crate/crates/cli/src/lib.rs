//! Command implementations behind the `tgsr` binary. Each command returns
//! the text it would print so it can be driven from tests.

pub mod plan;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use tgsr_core::harness::{
    compare_table, run_experiment, write_results, BudgetMode, ComparisonTable, ExperimentResult,
    OutputFormat,
};
use tgsr_core::params::split_assignment;
use tgsr_core::{make_benchmark, BenchmarkId, Objective, Registry, RunRecord};

pub use plan::PlanFile;

/// Plan reproducing the comparison grid at the algorithms' own budgets.
pub const TABLE2_PLAN: &str = include_str!("../../../plans/table2.toml");
/// Same grid with every algorithm given the same evaluation budget.
pub const TABLE2_EQUAL_PLAN: &str = include_str!("../../../plans/table2_equal.toml");

pub const OUT_DIR_ENV: &str = "TGSR_OUT_DIR";

#[derive(Clone, Debug)]
pub struct RunArgs {
    pub algorithm: String,
    pub benchmark: String,
    pub dimension: usize,
    pub seed: u64,
    pub overrides: Vec<String>,
    pub budget: BudgetMode,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

/// Single optimization; optionally writes the run's trace.
pub fn cmd_run(args: &RunArgs, registry: &Registry) -> Result<(String, RunRecord)> {
    let overrides = args
        .overrides
        .iter()
        .map(|s| split_assignment(s))
        .collect::<Result<Vec<_>, _>>()?;
    let benchmark: BenchmarkId = args.benchmark.parse()?;
    let mut optimizer = registry.create(&args.algorithm, &overrides)?;
    if let BudgetMode::EqualEvaluations(n) = args.budget {
        optimizer.set_evaluation_budget(n);
    }
    let objective = make_benchmark(benchmark, args.dimension)?;
    let record = optimizer.run(&objective, args.seed);

    let mut text = String::new();
    writeln!(
        text,
        "algorithm={} benchmark={} dimension={} seed={}",
        optimizer.name(),
        objective.name(),
        args.dimension,
        args.seed
    )?;
    writeln!(text, "final_best={:e}", record.final_fitness())?;
    writeln!(text, "evaluations={}", record.evaluations)?;

    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let stem = format!("{}_{}_seed{}", optimizer.name(), objective.name(), args.seed);
        let path = match args.format {
            OutputFormat::Csv => {
                let path = dir.join(format!("{stem}.csv"));
                let mut body = String::from("iteration,best_fitness\n");
                for (i, v) in record.trace.iter().enumerate() {
                    writeln!(body, "{},{v:e}", i + 1)?;
                }
                fs::write(&path, body).with_context(|| format!("cannot write {}", path.display()))?;
                path
            }
            OutputFormat::Json => {
                let path = dir.join(format!("{stem}.json"));
                let body = serde_json::to_string_pretty(&record)? + "\n";
                fs::write(&path, body).with_context(|| format!("cannot write {}", path.display()))?;
                path
            }
        };
        writeln!(text, "trace={}", path.display())?;
    }
    Ok((text, record))
}

#[derive(Clone, Debug, Default)]
pub struct ExperimentOptions {
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub jobs: usize,
    pub runs: Option<usize>,
    pub budget: Option<BudgetMode>,
}

pub struct ExperimentOutcome {
    pub results: Vec<ExperimentResult>,
    pub table: ComparisonTable,
    pub out_dir: PathBuf,
    pub written: Vec<PathBuf>,
    pub text: String,
}

fn resolve_out_dir(flag: Option<&Path>, plan: &PlanFile) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| plan.output.as_ref().map(PathBuf::from))
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("results"))
}

/// Runs every experiment of `plan`, then writes summary, per-run files and
/// the comparison grid (`table.txt`, `table.csv`). Nothing is written if any
/// experiment fails.
pub fn cmd_experiment(plan: &PlanFile, opts: &ExperimentOptions, registry: &Registry) -> Result<ExperimentOutcome> {
    let mut plans = plan.expand(registry)?;
    for p in &mut plans {
        if let Some(runs) = opts.runs {
            p.runs = runs;
        }
        if let Some(budget) = opts.budget {
            p.budget = budget;
        }
        p.validate()?;
    }
    let results = plans
        .iter()
        .map(|p| {
            run_experiment(p, registry, opts.jobs.max(1))
                .with_context(|| format!("{} on {}", p.label(), p.benchmark))
        })
        .collect::<Result<Vec<_>>>()?;
    let table = compare_table(&results)?;

    let out_dir = resolve_out_dir(opts.out.as_deref(), plan);
    let format = opts.format.or(plan.format).unwrap_or_default();
    let mut written = write_results(&results, &out_dir, format)?;
    let text = table.render_text();
    let table_txt = out_dir.join("table.txt");
    fs::write(&table_txt, &text).with_context(|| format!("cannot write {}", table_txt.display()))?;
    let table_csv = out_dir.join("table.csv");
    table.write_csv(&table_csv)?;
    written.push(table_txt);
    written.push(table_csv);

    Ok(ExperimentOutcome {
        results,
        table,
        out_dir,
        written,
        text,
    })
}

/// Registered algorithms with their defaults, then the benchmarks.
pub fn cmd_list(registry: &Registry) -> Result<String> {
    let mut text = String::from("algorithms:\n");
    for entry in registry.iter() {
        let optimizer = (entry.factory)(&[])?;
        writeln!(text, "  {:<8} {}", entry.name, entry.summary)?;
        let params: Vec<String> = optimizer
            .params()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        writeln!(text, "           {}", params.join(" "))?;
    }
    text.push_str("benchmarks:\n");
    for id in BenchmarkId::ALL {
        let (lo, hi) = id.default_bounds();
        writeln!(
            text,
            "  {:<10} bounds [{lo}, {hi}]  min dimension {}  optimum 0",
            id.name(),
            id.min_dimension()
        )?;
    }
    Ok(text)
}
