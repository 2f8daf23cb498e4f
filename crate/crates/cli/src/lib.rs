//! Experiment runner: sweeps selectors over budgets, deadlines and tie rules
//! on one graph and one negative-seed draw, and writes CSV and JSON results.

mod spec;

use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use tcaibm::graph::{load_edge_list, GraphSummary};
use tcaibm::rng::{mix64, stream};
use tcaibm::selection::{bis_select, select_degree, select_forward, select_greedy_celf, select_negative_seeds, select_reverse};
use tcaibm::{eval, Graph, NegativeMethod, NodeId, Priority, SelectionResult, SigmaEstimate, TieRule, Timestep};

pub use spec::{ExperimentSpec, Method, Rule};

const PRIORITY_STREAM: u64 = 1;
const NEGATIVE_STREAM: u64 = 2;
const SELECT_TAG: u64 = 0x005e_1ec7;
const EVAL_TAG: u64 = 0xe7a1;

pub const CSV_HEADER: &str = "method,neg_method,S,k,tau,rule,sigma_mean,ci_lo,ci_hi,select_ms,eval_ms";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub method: Method,
    pub neg_method: NegativeMethod,
    #[serde(rename = "S")]
    pub neg_count: usize,
    pub k: usize,
    pub tau: Timestep,
    pub rule: Rule,
    pub sigma_mean: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub select_ms: f64,
    pub eval_ms: f64,
}

/// Seeds picked in one cell.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellSelection {
    pub method: Method,
    pub k: usize,
    pub tau: Timestep,
    pub rule: Rule,
    pub selection: SelectionResult,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Experiment {
    pub spec: ExperimentSpec,
    pub graph: GraphSummary,
    pub neg_seeds: Vec<NodeId>,
    pub rows: Vec<ExperimentRow>,
    pub selections: Vec<CellSelection>,
}

fn rule_id(rule: Rule) -> u64 {
    match rule {
        Rule::Pd => 1,
        Rule::Nd => 2,
        Rule::Fd => 3,
    }
}

fn cell_key(tag: u64, k: usize, tau: Timestep, rule: Rule) -> u64 {
    mix64(mix64(mix64(tag) ^ k as u64) ^ u64::from(tau)) ^ rule_id(rule)
}

/// Stream index of the selection rng of one cell. Derived from the cell's
/// content, so adding or reordering sweep values leaves other cells alone.
pub fn select_stream(method: Method, k: usize, tau: Timestep, rule: Rule) -> u64 {
    mix64(cell_key(SELECT_TAG, k, tau, rule) ^ mix64(method as u64 + 1))
}

/// Stream index of the evaluation rng. Every method of a `(k, tau, rule)`
/// cell sees the same possible worlds.
pub fn eval_stream(k: usize, tau: Timestep, rule: Rule) -> u64 {
    cell_key(EVAL_TAG, k, tau, rule)
}

pub fn load_graph(spec: &ExperimentSpec) -> Result<Graph> {
    let file = File::open(&spec.dataset).with_context(|| format!("opening {}", spec.dataset.display()))?;
    load_edge_list(BufReader::new(file), spec.directed, spec.weights)
        .with_context(|| format!("loading {}", spec.dataset.display()))
}

fn millis(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

#[allow(clippy::too_many_arguments)]
fn select(
    g: &Graph,
    spec: &ExperimentSpec,
    method: Method,
    neg: &[NodeId],
    k: usize,
    tau: Timestep,
    rule: &TieRule,
    rng: &mut impl Rng,
) -> tcaibm::Result<SelectionResult> {
    match method {
        Method::Bis => bis_select(g, neg, k, tau, rule, spec.phi, spec.zeta, rng),
        Method::Degree => select_degree(g, neg, k),
        Method::Forward => select_forward(g, neg, k, tau, spec.phi, rng),
        Method::GreedyCelf => select_greedy_celf(g, neg, k, tau, rule, spec.celf_runs, rng),
        Method::Reverse => select_reverse(g, neg, k, tau, spec.zeta, rule, rng),
    }
}

/// Runs every `(method, k, tau, rule)` cell of `spec`. Rows come back sorted
/// by `(method, k)`, then `tau` and `rule` in spec order.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Experiment> {
    spec.validate()?;
    let g = load_graph(spec)?;
    run_on_graph(spec, &g)
}

/// [`run_experiment`] on an already loaded graph.
pub fn run_on_graph(spec: &ExperimentSpec, g: &Graph) -> Result<Experiment> {
    spec.validate()?;
    spec.validate_for(g.n())?;

    let priority = Priority::random(g.n(), &mut stream(spec.seed, PRIORITY_STREAM));
    let neg_seeds = select_negative_seeds(g, spec.neg_count, spec.neg_method, spec.tau[0], &mut stream(spec.seed, NEGATIVE_STREAM))
        .context("selecting negative seeds")?;

    let mut methods = spec.methods.clone();
    methods.sort();
    methods.dedup();
    let mut ks = spec.k.clone();
    ks.sort_unstable();
    ks.dedup();

    let mut rows = Vec::new();
    let mut selections = Vec::new();
    for &method in &methods {
        for &k in &ks {
            for &tau in &spec.tau {
                for &rule in &spec.rules {
                    let tie = rule.tie_rule(&priority);
                    let mut rng = stream(spec.seed, select_stream(method, k, tau, rule));
                    let selection = select(g, spec, method, &neg_seeds, k, tau, &tie, &mut rng)
                        .with_context(|| format!("{method} with k={k}, tau={tau}, rule={rule}"))?;
                    let start = Instant::now();
                    let sigma = eval::estimate_sigma_minus(
                        g,
                        &neg_seeds,
                        &selection.seeds,
                        tau,
                        &tie,
                        spec.mc_runs,
                        &mut stream(spec.seed, eval_stream(k, tau, rule)),
                    )?;
                    let eval_ms = millis(start.elapsed());
                    rows.push(row(spec, method, k, tau, rule, &sigma, &selection, eval_ms));
                    selections.push(CellSelection { method, k, tau, rule, selection });
                }
            }
        }
    }
    if !spec.record_timings {
        for s in &mut selections {
            s.selection.elapsed = Default::default();
        }
    }
    Ok(Experiment { spec: spec.clone(), graph: g.summary(), neg_seeds, rows, selections })
}

#[allow(clippy::too_many_arguments)]
fn row(
    spec: &ExperimentSpec,
    method: Method,
    k: usize,
    tau: Timestep,
    rule: Rule,
    sigma: &SigmaEstimate,
    selection: &SelectionResult,
    eval_ms: f64,
) -> ExperimentRow {
    let (select_ms, eval_ms) = if spec.record_timings { (millis(selection.elapsed), eval_ms) } else { (0.0, 0.0) };
    ExperimentRow {
        method,
        neg_method: spec.neg_method,
        neg_count: spec.neg_count,
        k,
        tau,
        rule,
        sigma_mean: sigma.mean,
        ci_lo: sigma.ci95.0,
        ci_hi: sigma.ci95.1,
        select_ms,
        eval_ms,
    }
}

pub fn write_csv<W: Write>(rows: &[ExperimentRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    if rows.is_empty() {
        // serde writes the header with the first record only
        let mut w = out.into_inner().map_err(|e| e.into_error())?;
        writeln!(w, "{CSV_HEADER}")?;
    }
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<ExperimentRow>> {
    let mut input = csv::Reader::from_reader(r);
    let header: Vec<&str> = input.headers()?.iter().collect();
    anyhow::ensure!(header.join(",") == CSV_HEADER, "unexpected CSV header `{}`", header.join(","));
    input.deserialize().map(|r| r.map_err(Into::into)).collect()
}

/// Writes `results.csv` and `results.json` into `dir`, returning their paths.
pub fn write_outputs(exp: &Experiment, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let csv_path = dir.join("results.csv");
    let json_path = dir.join("results.json");
    write_csv(&exp.rows, File::create(&csv_path)?)?;
    let mut f = File::create(&json_path)?;
    serde_json::to_writer_pretty(&mut f, exp)?;
    writeln!(f)?;
    Ok((csv_path, json_path))
}
