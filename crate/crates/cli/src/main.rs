use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use tcaibm::eval::check_monotone_submodular;
use tcaibm::graph::{generate_synthetic, load_edge_list, SyntheticModel};
use tcaibm::{NegativeMethod, NodeId, Priority, Timestep, WeightScheme};
use tcaibm_cli::{run_experiment, write_outputs, ExperimentSpec, Method, Rule};

#[derive(Parser)]
#[command(name = "tcaibm", version, about = "Time-critical adversarial influence blocking experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weights {
    WeightedCascade,
    FromFile,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Er,
    Ba,
}

#[derive(clap::Args)]
struct GraphArgs {
    /// Whitespace-separated edge list.
    dataset: PathBuf,
    #[arg(long)]
    directed: bool,
    /// Constant edge probability; overrides --weights.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, value_enum, default_value = "weighted-cascade")]
    weights: Weights,
}

impl GraphArgs {
    fn scheme(&self) -> WeightScheme {
        match (self.p, self.weights) {
            (Some(p), _) => WeightScheme::Constant(p),
            (None, Weights::WeightedCascade) => WeightScheme::WeightedCascade,
            (None, Weights::FromFile) => WeightScheme::FromFile,
        }
    }

    fn load(&self) -> Result<tcaibm::Graph> {
        let f = File::open(&self.dataset).with_context(|| format!("opening {}", self.dataset.display()))?;
        Ok(load_edge_list(BufReader::new(f), self.directed, self.scheme())?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment sweep from a TOML or JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        tau: Option<Vec<Timestep>>,
        #[arg(long, value_enum, value_delimiter = ',')]
        rule: Option<Vec<Rule>>,
        #[arg(long)]
        neg: Option<NegativeMethod>,
        #[arg(long, value_enum, value_delimiter = ',', num_args = 1..)]
        methods: Option<Vec<Method>>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a synthetic edge list.
    Generate {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        /// Edge count for Erdos-Renyi.
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Links per new node for Barabasi-Albert.
        #[arg(long, default_value_t = 2)]
        attach: usize,
        #[arg(long)]
        directed: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print node and edge counts as JSON.
    Summary {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Exhaustively check monotonicity and submodularity on a small graph.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        /// Negative seeds by label.
        #[arg(long, value_delimiter = ',', required = true)]
        neg: Vec<String>,
        #[arg(long)]
        tau: Timestep,
        #[arg(long, value_enum, default_value = "pd")]
        rule: Rule,
        /// Master seed for the fixed-dominance priority.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run { config, k, tau, rule, neg, methods, seed, out } => {
            let mut spec = ExperimentSpec::load(&config)?;
            if let Some(v) = k {
                spec.k = v;
            }
            if let Some(v) = tau {
                spec.tau = v;
            }
            if let Some(v) = rule {
                spec.rules = v;
            }
            if let Some(v) = neg {
                spec.neg_method = v;
            }
            if let Some(v) = methods {
                spec.methods = v;
            }
            if let Some(v) = seed {
                spec.seed = v;
            }
            if let Some(v) = out {
                spec.out = v;
            }
            let exp = run_experiment(&spec)?;
            let (csv, json) = write_outputs(&exp, &spec.out)?;
            eprintln!("{} rows -> {}, {}", exp.rows.len(), csv.display(), json.display());
        }
        Command::Generate { model, n, m, attach, directed, seed, out } => {
            let model = match model {
                Model::Er => SyntheticModel::ErdosRenyi { n, m },
                Model::Ba => SyntheticModel::BarabasiAlbert { n, attach },
            };
            let g = generate_synthetic(model, directed, WeightScheme::default(), seed)?;
            let f = File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            g.write_edge_list(BufWriter::new(f))?;
        }
        Command::Summary { graph } => {
            println!("{}", serde_json::to_string(&graph.load()?.summary())?);
        }
        Command::Verify { graph, neg, tau, rule, seed } => {
            let g = graph.load()?;
            let seeds = neg
                .iter()
                .map(|l| g.node_by_label(l).with_context(|| format!("no node labelled `{l}`")))
                .collect::<Result<Vec<NodeId>>>()?;
            let priority = Priority::random(g.n(), &mut tcaibm::rng::stream(seed, 1));
            let report = check_monotone_submodular(&g, &seeds, tau, &rule.tie_rule(&priority))?;
            println!("{}", report.to_json());
        }
    }
    Ok(())
}
