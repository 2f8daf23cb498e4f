use std::path::Path;
use std::process::Command;

use tcaibm::eval::estimate_sigma_minus;
use tcaibm::graph::{generate_synthetic, SyntheticModel};
use tcaibm::rng::stream;
use tcaibm::{NegativeMethod, TieRule, WeightScheme};
use tcaibm_cli::{
    eval_stream, load_graph, read_csv, run_experiment, write_csv, write_outputs, ExperimentSpec, Method, Rule, CSV_HEADER,
};

fn path_spec(dir: &Path) -> ExperimentSpec {
    let dataset = dir.join("path.txt");
    std::fs::write(&dataset, "0 1\n1 2\n").unwrap();
    ExperimentSpec {
        dataset,
        directed: true,
        weights: WeightScheme::Constant(0.5),
        neg_method: NegativeMethod::Degree,
        neg_count: 1,
        methods: vec![Method::Degree],
        k: vec![1],
        tau: vec![1],
        rules: vec![Rule::Pd],
        phi: 100,
        zeta: 10,
        mc_runs: 4000,
        celf_runs: 100,
        seed: 11,
        out: dir.join("out"),
        record_timings: true,
    }
}

fn csv_bytes(spec: &ExperimentSpec) -> Vec<u8> {
    let mut buf = Vec::new();
    write_csv(&run_experiment(spec).unwrap().rows, &mut buf).unwrap();
    buf
}

#[test]
fn single_cell_passthrough() {
    let dir = tempfile::tempdir().unwrap();
    let spec = path_spec(dir.path());
    let exp = run_experiment(&spec).unwrap();
    assert_eq!(exp.neg_seeds, vec![0]);
    assert_eq!(exp.rows.len(), 1);
    assert_eq!(exp.selections[0].selection.seeds, vec![1]);

    let g = load_graph(&spec).unwrap();
    let direct = estimate_sigma_minus(
        &g,
        &[0],
        &[1],
        1,
        &TieRule::PositiveDominance,
        spec.mc_runs,
        &mut stream(spec.seed, eval_stream(1, 1, Rule::Pd)),
    )
    .unwrap();
    let row = &exp.rows[0];
    assert_eq!((row.sigma_mean, row.ci_lo, row.ci_hi), (direct.mean, direct.ci95.0, direct.ci95.1));
    // node 1 saves itself whenever the edge 0 -> 1 is live
    assert!((row.sigma_mean - 0.5).abs() < 4.0 * direct.std_error);
    assert!(row.ci_hi > row.ci_lo);
}

#[test]
fn identical_runs_give_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let mut spec = path_spec(dir.path());
    spec.methods = vec![Method::Reverse, Method::Bis, Method::Forward, Method::Degree, Method::GreedyCelf];
    spec.tau = vec![1, 2];
    spec.rules = vec![Rule::Pd, Rule::Nd, Rule::Fd];
    spec.k = vec![2, 1];
    spec.record_timings = false;
    let a = csv_bytes(&spec);
    assert_eq!(a, csv_bytes(&spec));

    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
    assert_eq!(text.lines().count(), 1 + 5 * 2 * 2 * 3);
    let rows = read_csv(text.as_bytes()).unwrap();
    let order: Vec<_> = rows.iter().map(|r| (r.method, r.k)).collect();
    let mut sorted = order.clone();
    sorted.sort();
    assert_eq!(order, sorted);
    assert!(rows.iter().all(|r| r.select_ms == 0.0 && r.eval_ms == 0.0));
}

#[test]
fn csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let mut spec = path_spec(dir.path());
    spec.methods = vec![Method::Bis, Method::Degree];
    spec.rules = vec![Rule::Nd, Rule::Fd];
    let exp = run_experiment(&spec).unwrap();
    let (csv_path, json_path) = write_outputs(&exp, &spec.out).unwrap();
    let back = read_csv(std::fs::File::open(csv_path).unwrap()).unwrap();
    assert_eq!(back, exp.rows);

    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json_path).unwrap()).unwrap();
    assert_eq!(json["graph"], serde_json::json!({"n": 3, "m": 2, "directed": true}));
    assert_eq!(json["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn budget_violation_fails_before_any_work() {
    let dir = tempfile::tempdir().unwrap();
    let mut spec = path_spec(dir.path());
    spec.k = vec![1, 3];
    let err = run_experiment(&spec).unwrap_err().to_string();
    assert!(err.contains("exceeds"), "{err}");
    assert!(!spec.out.exists());
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tcaibm"))
}

fn write_config(dir: &Path) -> std::path::PathBuf {
    let config = dir.join("exp.toml");
    std::fs::write(dir.join("path.txt"), "0 1\n1 2\n").unwrap();
    std::fs::write(
        &config,
        r#"dataset = "path.txt"
directed = true
weights = { constant = 0.5 }
neg_method = "degree"
neg_count = 1
methods = ["degree"]
k = [1]
tau = [1]
rules = ["pd"]
phi = 100
zeta = 10
mc_runs = 500
seed = 3
out = "out"
record_timings = false
"#,
    )
    .unwrap();
    config
}

#[test]
fn unknown_method_lists_valid_names() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let out = bin().args(["run", "--config"]).arg(&config).args(["--methods", "imm"]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("imm") && err.contains("greedy_celf") && err.contains("bis"), "{err}");

    let text = std::fs::read_to_string(&config).unwrap().replace("[\"degree\"]", "[\"imm\"]");
    std::fs::write(&config, text).unwrap();
    let out = bin().args(["run", "--config"]).arg(&config).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("imm") && err.contains("greedy_celf"), "{err}");
}

#[test]
fn run_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let out_dir = dir.path().join("over");
    let out = bin()
        .args(["run", "--config"])
        .arg(&config)
        .args(["--methods", "degree,bis", "--k", "1,2", "--rule", "nd", "--tau", "2", "--neg", "pagerank", "--seed", "9", "--out"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let rows = read_csv(std::fs::File::open(out_dir.join("results.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.rule == Rule::Nd && r.tau == 2 && r.neg_method == NegativeMethod::PageRank));
}

#[test]
fn generate_summary_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ba.txt");
    let status = bin().args(["generate", "--model", "ba", "--n", "5", "--attach", "1", "--seed", "4", "--out"]).arg(&file).status().unwrap();
    assert!(status.success());
    // four undirected edges, stored as eight arcs
    let out = bin().arg("summary").arg(&file).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"n":5,"m":8,"directed":false}"#);

    let out = bin().arg("verify").arg(&file).args(["--p", "0.5", "--neg", "0", "--tau", "3", "--rule", "fd"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["violations"], serde_json::json!([]));
    assert!(report["instances_checked"].as_u64().unwrap() > 0);
}

#[test]
fn bis_selects_faster_than_celf() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate_synthetic(SyntheticModel::BarabasiAlbert { n: 500, attach: 2 }, false, WeightScheme::WeightedCascade, 5).unwrap();
    let dataset = dir.path().join("ba500.txt");
    g.write_edge_list(std::fs::File::create(&dataset).unwrap()).unwrap();
    let spec = ExperimentSpec {
        dataset,
        directed: false,
        weights: WeightScheme::WeightedCascade,
        neg_method: NegativeMethod::Degree,
        neg_count: 20,
        methods: vec![Method::Bis, Method::GreedyCelf],
        k: vec![10],
        tau: vec![3],
        rules: vec![Rule::Nd],
        phi: 500,
        zeta: 20,
        mc_runs: 500,
        celf_runs: 300,
        seed: 1,
        out: dir.path().join("out"),
        record_timings: true,
    };
    let exp = run_experiment(&spec).unwrap();
    let ms = |m| exp.rows.iter().find(|r| r.method == m).unwrap().select_ms;
    let (bis, celf) = (ms(Method::Bis), ms(Method::GreedyCelf));
    eprintln!("bis {bis:.1} ms, greedy_celf {celf:.1} ms");
    assert!(bis < celf);
}
