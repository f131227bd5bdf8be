//! Prints the distributions behind the pinned acceptance thresholds.
//!
//! cargo run --release -p tgsr-core --example calibrate

use tgsr_core::harness::{median, quantile, run_experiment, BudgetMode, ExperimentPlan};
use tgsr_core::{BenchmarkId, Registry};

fn finals(plan: &ExperimentPlan, registry: &Registry) -> Vec<f64> {
    run_experiment(plan, registry, 8)
        .expect("plan is valid")
        .records
        .iter()
        .map(|r| r.final_fitness())
        .collect()
}

fn report(tag: &str, xs: &[f64]) {
    println!(
        "{tag:<34} median {:>12.4e}  p90 {:>12.4e}  max {:>12.4e}",
        median(xs),
        quantile(xs, 0.9),
        quantile(xs, 1.0)
    );
}

fn main() {
    let registry = Registry::builtin();

    println!("-- small problems (n = 2)");
    let p = ExperimentPlan {
        runs: 100,
        params: vec![("max_iter".into(), "100".into())],
        ..ExperimentPlan::new("tgsr", BenchmarkId::Sphere, 2)
    };
    report("tgsr sphere T=100, 100 seeds", &finals(&p, &registry));
    for algo in ["pso", "dea"] {
        let p = ExperimentPlan::new(algo, BenchmarkId::Sphere, 2);
        report(&format!("{algo} sphere default budget"), &finals(&p, &registry));
    }

    println!("-- equal budget 40000, n = 30, 30 seeds");
    for b in BenchmarkId::ALL {
        for algo in ["tgsr", "random"] {
            let p = ExperimentPlan {
                budget: BudgetMode::EqualEvaluations(40_000),
                ..ExperimentPlan::new(algo, b, 30)
            };
            report(&format!("{algo} {b}"), &finals(&p, &registry));
        }
    }

    println!("-- default iteration budgets, n = 30, 30 seeds");
    for b in [BenchmarkId::Rastrigin, BenchmarkId::Rosenbrock] {
        for algo in ["tgsr", "pso", "dea"] {
            let p = ExperimentPlan::new(algo, b, 30);
            report(&format!("{algo} {b}"), &finals(&p, &registry));
        }
    }
}
