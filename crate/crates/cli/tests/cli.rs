use std::fs;
use std::process::Command;

use proptest::prelude::*;
use tgsr_cli::plan::{ExperimentEntry, ParamValue, PlanFile};
use tgsr_cli::{cmd_experiment, cmd_list, ExperimentOptions};
use tgsr_core::baselines::{DeaParams, PsoParams};
use tgsr_core::params::ParamSet;
use tgsr_core::Registry;

fn tgsr() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tgsr"))
}

fn stdout(cmd: &mut Command) -> (bool, String, String) {
    let out = cmd.output().unwrap();
    (
        out.status.success(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn run_prints_non_negative_fitness_deterministically() {
    let args = ["run", "--algo", "tgsr", "--fn", "sphere", "--dim", "30", "--seed", "1"];
    let (ok, first, _) = stdout(tgsr().args(args));
    assert!(ok);
    let line = first.lines().find(|l| l.starts_with("final_best=")).unwrap();
    let value: f64 = line["final_best=".len()..].parse().unwrap();
    assert!(value >= 0.0);
    let (_, second, _) = stdout(tgsr().args(args));
    assert_eq!(first, second);
}

#[test]
fn run_rejects_unknown_names() {
    let (ok, _, err) = stdout(tgsr().args(["run", "--algo", "nosuch", "--fn", "sphere"]));
    assert!(!ok);
    assert!(err.contains("nosuch"), "{err}");
    let (ok, _, err) = stdout(tgsr().args(["run", "--algo", "pso", "--fn", "ackley"]));
    assert!(!ok);
    assert!(err.contains("ackley"), "{err}");
    let (ok, _, err) = stdout(tgsr().args(["run", "--algo", "tgsr", "--fn", "sphere", "--set", "mu=2"]));
    assert!(!ok);
    assert!(err.contains("mu"), "{err}");
}

#[test]
fn run_writes_trace() {
    let dir = tempfile::tempdir().unwrap();
    let (ok, out, _) = stdout(tgsr().args([
        "run", "--algo", "dea", "--fn", "rastrigin", "--dim", "5", "--set", "max_iter=7", "--out",
    ]).arg(dir.path()));
    assert!(ok, "{out}");
    let trace = fs::read_to_string(dir.path().join("dea_rastrigin_seed0.csv")).unwrap();
    assert_eq!(trace.lines().count(), 8);
}

#[test]
fn run_equal_budget() {
    let (ok, out, _) = stdout(tgsr().args([
        "run", "--algo", "random", "--fn", "griewank", "--budget", "equal", "--evals", "1234",
    ]));
    assert!(ok);
    assert!(out.contains("evaluations=1234"), "{out}");
}

#[test]
fn list_shows_registry_and_defaults() {
    let (ok, out, _) = stdout(tgsr().arg("list"));
    assert!(ok);
    for name in ["tgsr", "pso", "dea", "random", "schaffer", "sphere", "griewank", "rastrigin", "rosenbrock"] {
        assert!(out.contains(name), "{name} missing");
    }
    for default in ["mu=0.75", "population=40", "decay_exponent=1.6", "waterfall_prob=0.1"] {
        assert!(out.contains(default), "{default} missing");
    }
    assert_eq!(out, cmd_list(&Registry::builtin()).unwrap());
}

#[test]
fn experiment_empty_plan_writes_headers() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("empty.toml");
    fs::write(&plan, "# nothing\n").unwrap();
    let out_dir = dir.path().join("out");
    let (ok, _, err) = stdout(tgsr().arg("experiment").arg(&plan).arg("--out").arg(&out_dir));
    assert!(ok, "{err}");
    assert_eq!(
        fs::read_to_string(out_dir.join("summary.csv")).unwrap(),
        "algorithm,benchmark,dimension,runs,quality,robustness,success_rate,mean_evaluations\n"
    );
    assert_eq!(fs::read_to_string(out_dir.join("table.txt")).unwrap(), "algorithm  statistic\n");
}

#[test]
fn experiment_errors_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    for (name, text) in [
        ("zero.toml", "runs = 0\n[[experiment]]\nalgorithm = \"tgsr\"\n"),
        ("typo.toml", "[[experiment]]\nalgoritm = \"tgsr\"\n"),
        ("late.toml", "runs = 1\n[[experiment]]\nalgorithm = \"tgsr\"\nbenchmarks = [\"sphere\"]\n[[experiment]]\nalgorithm = \"bees\"\n"),
    ] {
        let plan = dir.path().join(name);
        fs::write(&plan, text).unwrap();
        let (ok, _, err) = stdout(tgsr().arg("experiment").arg(&plan).arg("--out").arg(&out_dir));
        assert!(!ok, "{name}");
        assert!(!err.is_empty());
        assert!(!out_dir.exists(), "{name} left output behind");
    }
}

#[test]
fn out_dir_falls_back_to_env() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("p.toml");
    fs::write(&plan, "runs = 1\n[[experiment]]\nalgorithm = \"random\"\nbenchmarks = [\"sphere\"]\nparams = { budget = 10 }\n").unwrap();
    let target = dir.path().join("from_env");
    let (ok, _, err) = stdout(tgsr().arg("experiment").arg(&plan).env("TGSR_OUT_DIR", &target));
    assert!(ok, "{err}");
    assert!(target.join("summary.csv").exists());
}

#[test]
fn experiment_json_format() {
    let dir = tempfile::tempdir().unwrap();
    let plan = PlanFile::parse(
        "runs = 2\ndimension = 4\nformat = \"json\"\n[[experiment]]\nalgorithm = \"pso\"\nbenchmarks = [\"sphere\", \"griewank\"]\nparams = { max_iter = 5, swarm_size = 10 }\n",
    )
    .unwrap();
    let opts = ExperimentOptions { out: Some(dir.path().to_path_buf()), jobs: 1, ..Default::default() };
    let outcome = cmd_experiment(&plan, &opts, &Registry::builtin()).unwrap();
    assert_eq!(outcome.results.len(), 2);
    assert!(dir.path().join("00_pso_sphere.json").exists());
    assert!(dir.path().join("01_pso_griewank.json").exists());
}

fn arb_value() -> impl Strategy<Value = ParamValue> {
    prop_oneof![
        any::<bool>().prop_map(ParamValue::Bool),
        any::<i64>().prop_map(ParamValue::Int),
        (-1e6f64..1e6).prop_map(ParamValue::Float),
        "[a-z]{1,8}".prop_map(ParamValue::Text),
    ]
}

fn arb_entry() -> impl Strategy<Value = ExperimentEntry> {
    (
        prop_oneof![Just("tgsr"), Just("pso"), Just("dea"), Just("random")],
        proptest::option::of(1usize..100),
        proptest::option::of(any::<u64>()),
        proptest::option::of(proptest::sample::subsequence(vec!["sphere", "schaffer", "griewank"], 1..3)),
        proptest::option::of((-10f64..0.0, 0.5f64..10.0)),
        proptest::collection::btree_map("[a-z_]{1,10}", arb_value(), 0..4),
    )
        .prop_map(|(algo, runs, seed, benches, bounds, params)| ExperimentEntry {
            algorithm: algo.to_string(),
            runs,
            base_seed: seed,
            benchmarks: benches.map(|b| b.into_iter().map(String::from).collect()),
            bounds: bounds.map(|(lo, hi)| [lo, hi]),
            params,
            ..Default::default()
        })
}

proptest! {
    #[test]
    fn plan_file_round_trips(
        runs in proptest::option::of(1usize..1000),
        dimension in proptest::option::of(2usize..100),
        budget in proptest::option::of(prop_oneof![Just("paper".to_string()), (1u64..1_000_000).prop_map(|n| format!("equal:{n}"))]),
        threshold in proptest::option::of(0f64..1.0),
        experiments in proptest::collection::vec(arb_entry(), 0..4),
    ) {
        let plan = PlanFile {
            runs, dimension, budget, success_threshold: threshold, experiments,
            ..Default::default()
        };
        let text = plan.to_toml().unwrap();
        prop_assert_eq!(PlanFile::parse(&text).unwrap(), plan);
    }

    #[test]
    fn baseline_params_round_trip(n in 4usize..500, iters in 1usize..1000, a in 0f64..5.0, b in 0f64..1.0) {
        let pso = PsoParams { swarm_size: n, max_iter: iters, inertia: a, c1: a * 0.5, c2: b, velocity_clamp: b + 0.01 };
        let mut back = PsoParams::default();
        back.apply(&pso.entries().into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(back, pso);

        let dea = DeaParams { population: n, max_iter: iters, f_weight: a, crossover: b };
        let mut back = DeaParams::default();
        back.apply(&dea.entries().into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(back, dea);
    }
}
