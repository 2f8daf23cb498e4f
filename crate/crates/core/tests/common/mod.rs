#![allow(dead_code)]

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tcaibm::{Graph, NodeId, Priority, TieRule};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random directed graph with `n` nodes, at most `max_edges` distinct arcs
/// and probabilities uniform in (0, 1).
pub fn random_graph<R: Rng>(n: usize, max_edges: usize, rng: &mut R) -> Graph {
    let mut pairs: Vec<(NodeId, NodeId)> =
        (0..n as NodeId).flat_map(|u| (0..n as NodeId).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let m = rng.gen_range(1..=max_edges.min(pairs.len()));
    Graph::from_arcs(n, pairs[..m].iter().map(|&(u, v)| (u, v, rng.gen_range(0.05..0.95)))).unwrap()
}

pub fn random_seeds<R: Rng>(n: usize, count: usize, rng: &mut R) -> Vec<NodeId> {
    let mut all: Vec<NodeId> = (0..n as NodeId).collect();
    all.shuffle(rng);
    let mut s = all[..count].to_vec();
    s.sort();
    s
}

pub fn rules<R: Rng>(n: usize, rng: &mut R) -> [TieRule; 3] {
    [TieRule::PositiveDominance, TieRule::NegativeDominance, TieRule::FixedDominance(Priority::random(n, rng))]
}

/// All `k`-subsets of `items`.
pub fn subsets(items: &[NodeId], k: usize) -> Vec<Vec<NodeId>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

pub fn distinct(nodes: &[NodeId]) -> bool {
    nodes.iter().collect::<HashSet<_>>().len() == nodes.len()
}
