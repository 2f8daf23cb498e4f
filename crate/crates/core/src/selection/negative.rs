use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::RescueState;
use crate::diffusion::{RngCoins, Timestep};
use crate::error::{Error, Result};
use crate::graph::{pagerank, top_out_degree, Graph, NodeId};
use crate::sampling::ReverseSampler;

/// How the adversary picks its seeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NegativeMethod {
    Degree,
    PageRank,
    /// Greedy max coverage over plain time-bounded reverse reachable sets.
    RisGreedy,
}

impl NegativeMethod {
    pub const ALL: [NegativeMethod; 3] = [NegativeMethod::Degree, NegativeMethod::PageRank, NegativeMethod::RisGreedy];

    pub fn name(self) -> &'static str {
        match self {
            NegativeMethod::Degree => "degree",
            NegativeMethod::PageRank => "pagerank",
            NegativeMethod::RisGreedy => "risgreedy",
        }
    }
}

impl fmt::Display for NegativeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NegativeMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NegativeMethod::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| {
            Error::InvalidParameter(format!("unknown negative-seed method `{s}` (expected degree, pagerank or risgreedy)"))
        })
    }
}

const PAGERANK_DAMPING: f64 = 0.85;
const PAGERANK_TOLERANCE: f64 = 1e-12;
const PAGERANK_MAX_ITERS: usize = 1000;

/// Number of reverse samples used by [`NegativeMethod::RisGreedy`].
pub fn ris_greedy_samples(n: usize) -> usize {
    (20 * n).max(20_000)
}

/// `m` negative seeds, in pick order.
pub fn select_negative_seeds<R: Rng + ?Sized>(
    g: &Graph,
    m: usize,
    method: NegativeMethod,
    tau: Timestep,
    rng: &mut R,
) -> Result<Vec<NodeId>> {
    if m > g.n() {
        return Err(Error::BudgetTooLarge { requested: m, available: g.n() });
    }
    match method {
        NegativeMethod::Degree => top_out_degree(g, m, &[]),
        NegativeMethod::PageRank => {
            let pr = pagerank(g, PAGERANK_DAMPING, PAGERANK_TOLERANCE, PAGERANK_MAX_ITERS);
            let mut order: Vec<NodeId> = g.nodes().collect();
            order.sort_by(|&a, &b| pr[b as usize].total_cmp(&pr[a as usize]).then(a.cmp(&b)));
            order.truncate(m);
            Ok(order)
        }
        NegativeMethod::RisGreedy => {
            if m == 0 {
                return Ok(Vec::new());
            }
            let mut sampler = ReverseSampler::new(g, &[])?;
            let mut samples = Vec::with_capacity(ris_greedy_samples(g.n()));
            for _ in 0..ris_greedy_samples(g.n()) {
                let root = rng.gen_range(0..g.n()) as NodeId;
                let mut set = Vec::new();
                sampler.plain(root, tau, &mut RngCoins(&mut *rng), &mut set);
                samples.push((1.0, set));
            }
            let mut state = RescueState::new(vec![true; g.n()], samples)?;
            Ok(state.greedy(m)?.0)
        }
    }
}
