use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use tcaibm::{NegativeMethod, Priority, TieRule, WeightScheme};

/// Positive-seed selectors available to an experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Bis,
    Degree,
    Forward,
    #[value(name = "greedy_celf")]
    GreedyCelf,
    Reverse,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Bis => "bis",
            Method::Degree => "degree",
            Method::Forward => "forward",
            Method::GreedyCelf => "greedy_celf",
            Method::Reverse => "reverse",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Pd,
    Nd,
    Fd,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Pd => "pd",
            Rule::Nd => "nd",
            Rule::Fd => "fd",
        }
    }

    /// The tie rule, with `priority` used for fixed dominance.
    pub fn tie_rule(self, priority: &Priority) -> TieRule {
        match self {
            Rule::Pd => TieRule::PositiveDominance,
            Rule::Nd => TieRule::NegativeDominance,
            Rule::Fd => TieRule::FixedDominance(priority.clone()),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn default_celf_runs() -> usize {
    1000
}

fn default_true() -> bool {
    true
}

/// One experiment: a dataset, a negative seed draw and a sweep over
/// methods, budgets, deadlines and tie rules.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub dataset: PathBuf,
    #[serde(default)]
    pub directed: bool,
    #[serde(default)]
    pub weights: WeightScheme,
    pub neg_method: NegativeMethod,
    /// Number of negative seeds.
    #[serde(alias = "S")]
    pub neg_count: usize,
    #[serde(alias = "pos_methods")]
    pub methods: Vec<Method>,
    pub k: Vec<usize>,
    pub tau: Vec<u32>,
    pub rules: Vec<Rule>,
    pub phi: usize,
    pub zeta: usize,
    /// Paired simulations per evaluation.
    pub mc_runs: usize,
    /// Fixed possible worlds used by Greedy-CELF gains.
    #[serde(default = "default_celf_runs")]
    pub celf_runs: usize,
    pub seed: u64,
    pub out: PathBuf,
    /// When false, timing columns are written as 0 so repeated runs are
    /// byte-identical.
    #[serde(default = "default_true")]
    pub record_timings: bool,
}

impl ExperimentSpec {
    /// Reads a TOML or JSON spec (by extension; TOML otherwise). Relative
    /// `dataset` and `out` paths are taken relative to the spec file.
    pub fn load(path: &Path) -> Result<ExperimentSpec> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut spec: ExperimentSpec = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        } else {
            toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        };
        if let Some(dir) = path.parent() {
            if spec.dataset.is_relative() {
                spec.dataset = dir.join(&spec.dataset);
            }
            if spec.out.is_relative() {
                spec.out = dir.join(&spec.out);
            }
        }
        Ok(spec)
    }

    /// Checks everything that does not need the graph.
    pub fn validate(&self) -> Result<()> {
        for (name, empty) in [
            ("methods", self.methods.is_empty()),
            ("k", self.k.is_empty()),
            ("tau", self.tau.is_empty()),
            ("rules", self.rules.is_empty()),
        ] {
            if empty {
                bail!("`{name}` must list at least one value");
            }
        }
        for (name, v) in [("phi", self.phi), ("zeta", self.zeta), ("mc_runs", self.mc_runs), ("celf_runs", self.celf_runs)] {
            if v == 0 {
                bail!("`{name}` must be at least 1");
            }
        }
        if self.neg_count == 0 {
            bail!("`neg_count` must be at least 1");
        }
        Ok(())
    }

    /// Checks the budget against a graph of `n` nodes.
    pub fn validate_for(&self, n: usize) -> Result<()> {
        let max_k = self.k.iter().copied().max().unwrap_or(0);
        if self.neg_count + max_k > n {
            bail!("|S| + max(k) = {} exceeds the {n} nodes of the graph", self.neg_count + max_k);
        }
        Ok(())
    }
}
