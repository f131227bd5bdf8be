use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use tgsr_cli::{
    cmd_experiment, cmd_list, cmd_run, ExperimentOptions, PlanFile, RunArgs, TABLE2_EQUAL_PLAN, TABLE2_PLAN,
};
use tgsr_core::harness::{BudgetMode, OutputFormat, DEFAULT_EQUAL_BUDGET};
use tgsr_core::Registry;

#[derive(Parser)]
#[command(name = "tgsr", version, about = "Great Salmon Run optimizer and benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Budget {
    /// Each algorithm's own iteration count.
    Paper,
    /// Same number of objective evaluations for every algorithm (see --evals).
    Equal,
}

fn budget_mode(budget: Option<Budget>, evals: u64) -> Option<BudgetMode> {
    budget.map(|b| match b {
        Budget::Paper => BudgetMode::Paper,
        Budget::Equal => BudgetMode::EqualEvaluations(evals),
    })
}

#[derive(Subcommand)]
enum Command {
    /// Run one optimization and print the final best fitness.
    Run {
        #[arg(long = "algo")]
        algorithm: String,
        #[arg(long = "fn")]
        benchmark: String,
        #[arg(long, default_value_t = 30)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Parameter override, repeatable: --set mu=0.6
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        #[arg(long, value_enum)]
        budget: Option<Budget>,
        #[arg(long, default_value_t = DEFAULT_EQUAL_BUDGET)]
        evals: u64,
        /// Directory for the run's trace file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run every experiment of a plan file and print the comparison grid.
    Experiment {
        plan: PathBuf,
        #[command(flatten)]
        opts: BatchArgs,
    },
    /// Run the bundled five-benchmark comparison of tgsr, pso and dea.
    Table2 {
        /// Use the equal-evaluation variant of the bundled plan.
        #[arg(long)]
        equal: bool,
        #[command(flatten)]
        opts: BatchArgs,
    },
    /// List algorithms with their default parameters, and benchmarks.
    List,
}

#[derive(clap::Args)]
struct BatchArgs {
    /// Output directory [default: plan `output`, then $TGSR_OUT_DIR, then ./results]
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads for independent runs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Override the number of runs of every experiment.
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long, value_enum)]
    budget: Option<Budget>,
    #[arg(long, default_value_t = DEFAULT_EQUAL_BUDGET)]
    evals: u64,
}

impl BatchArgs {
    fn options(&self) -> ExperimentOptions {
        ExperimentOptions {
            out: self.out.clone(),
            format: self.format.map(Into::into),
            jobs: self.jobs,
            runs: self.runs,
            budget: budget_mode(self.budget, self.evals),
        }
    }
}

fn batch(plan: &PlanFile, opts: &BatchArgs, registry: &Registry) -> Result<()> {
    let outcome = cmd_experiment(plan, &opts.options(), registry)?;
    print!("{}", outcome.text);
    println!("results written to {}", outcome.out_dir.display());
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    let registry = Registry::builtin();
    match cli.command {
        Command::Run {
            algorithm,
            benchmark,
            dim,
            seed,
            overrides,
            budget,
            evals,
            out,
            format,
        } => {
            let args = RunArgs {
                algorithm,
                benchmark,
                dimension: dim,
                seed,
                overrides,
                budget: budget_mode(budget, evals).unwrap_or(BudgetMode::Paper),
                out,
                format: format.into(),
            };
            print!("{}", cmd_run(&args, &registry)?.0);
        }
        Command::Experiment { plan, opts } => batch(&PlanFile::load(&plan)?, &opts, &registry)?,
        Command::Table2 { equal, opts } => {
            let text = if equal { TABLE2_EQUAL_PLAN } else { TABLE2_PLAN };
            batch(&PlanFile::parse(text)?, &opts, &registry)?
        }
        Command::List => print!("{}", cmd_list(&registry)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
