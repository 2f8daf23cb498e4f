use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diffusion::{normalize_seeds, Coins, RngCoins, Timestep};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// One reverse reachable sample that hit the negative seeds.
///
/// `layers[h]` holds the nodes first reached at reverse distance `h`;
/// `parents[h][i]` is the index in `layers[h - 1]` of the node through which
/// `layers[h][i]` was reached (the head is its own parent). Sampling stops at
/// the first layer containing a negative seed, so `first_negative_layer` is
/// also the last layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RRSet {
    pub head: NodeId,
    pub layers: Vec<Vec<NodeId>>,
    #[serde(skip)]
    pub parents: Vec<Vec<u32>>,
    #[serde(rename = "hstar")]
    pub first_negative_layer: usize,
    #[serde(rename = "B")]
    pub negatives_hit: Vec<NodeId>,
    /// Candidate blockers, filled in by [`prune_rr`](super::prune_rr).
    #[serde(rename = "C")]
    pub candidates: Vec<NodeId>,
}

impl RRSet {
    /// Builds a raw sample from explicit layers, e.g. for replaying a known
    /// reverse tree. The first layer holding a member of `negatives` becomes
    /// the last one.
    pub fn from_layers(layers: Vec<Vec<NodeId>>, parents: Vec<Vec<u32>>, negatives: &[NodeId]) -> Result<RRSet> {
        let bad = |msg: &str| Error::InvalidParameter(format!("malformed reverse sample: {msg}"));
        if layers.first().map(Vec::len) != Some(1) {
            return Err(bad("layer 0 must hold exactly the head"));
        }
        if parents.len() != layers.len() || parents.iter().zip(&layers).any(|(p, l)| p.len() != l.len()) {
            return Err(bad("parents must align with layers"));
        }
        for h in 1..layers.len() {
            if parents[h].iter().any(|&p| p as usize >= layers[h - 1].len()) {
                return Err(bad("parent index out of range"));
            }
        }
        let hstar = layers
            .iter()
            .position(|l| l.iter().any(|u| negatives.contains(u)))
            .ok_or(Error::NoNegativeInSample(layers[0][0]))?;
        if hstar == 0 {
            return Err(Error::HeadIsNegativeSeed(layers[0][0]));
        }
        let mut b: Vec<NodeId> = layers[hstar].iter().copied().filter(|u| negatives.contains(u)).collect();
        b.sort_unstable();
        let head = layers[0][0];
        let mut layers = layers;
        let mut parents = parents;
        layers.truncate(hstar + 1);
        parents.truncate(hstar + 1);
        Ok(RRSet { head, layers, parents, first_negative_layer: hstar, negatives_hit: b, candidates: Vec::new() })
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.layers.iter().flatten().copied()
    }

    /// JSON dump line.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Reverse BFS workspace bound to one graph and one negative seed set.
pub struct ReverseSampler<'g> {
    g: &'g Graph,
    negative: Vec<bool>,
    visited: Vec<bool>,
    touched: Vec<NodeId>,
}

impl<'g> ReverseSampler<'g> {
    pub fn new(g: &'g Graph, neg_seeds: &[NodeId]) -> Result<Self> {
        let negative = g.mask(neg_seeds)?;
        Ok(ReverseSampler { g, negative, visited: vec![false; g.n()], touched: Vec::new() })
    }

    pub fn is_negative(&self, u: NodeId) -> bool {
        self.negative[u as usize]
    }

    fn visit(&mut self, u: NodeId) {
        self.visited[u as usize] = true;
        self.touched.push(u);
    }

    fn clear(&mut self) {
        for &u in &self.touched {
            self.visited[u as usize] = false;
        }
        self.touched.clear();
    }

    /// Time-bounded reverse sample from `head` that stops at the first layer
    /// containing a negative seed. Negative seeds are absorbed but never
    /// expanded. Returns `None` when no negative seed was reached.
    pub fn sample<C: Coins + ?Sized>(&mut self, head: NodeId, tau: Timestep, coins: &mut C) -> Result<Option<RRSet>> {
        self.g.check_node(head)?;
        if self.negative[head as usize] {
            return Err(Error::HeadIsNegativeSeed(head));
        }
        let g = self.g;
        self.clear();
        self.visit(head);
        let mut layers = vec![vec![head]];
        let mut parents = vec![vec![0u32]];
        let mut h: Timestep = 0;
        let mut hit = false;
        loop {
            let current = layers.last().expect("layer 0 exists");
            if current.iter().any(|&u| self.negative[u as usize]) {
                hit = true;
                break;
            }
            if h >= tau {
                break;
            }
            let mut next = Vec::new();
            let mut next_parents = Vec::new();
            for (i, &u) in current.iter().enumerate() {
                for &e in g.in_edges(u) {
                    let edge = g.edge(e);
                    let w = edge.source;
                    if self.visited[w as usize] || !coins.is_live(e, edge.p) {
                        continue;
                    }
                    self.visited[w as usize] = true;
                    self.touched.push(w);
                    next.push(w);
                    next_parents.push(i as u32);
                }
            }
            if next.is_empty() {
                break;
            }
            layers.push(next);
            parents.push(next_parents);
            h += 1;
        }
        if !hit {
            return Ok(None);
        }
        let hstar = layers.len() - 1;
        let mut b: Vec<NodeId> = layers[hstar].iter().copied().filter(|&u| self.negative[u as usize]).collect();
        b.sort_unstable();
        Ok(Some(RRSet { head, layers, parents, first_negative_layer: hstar, negatives_hit: b, candidates: Vec::new() }))
    }

    /// Plain time-bounded reverse reachable set from `root` (no stopping at
    /// negative seeds), written into `out`.
    pub fn plain<C: Coins + ?Sized>(&mut self, root: NodeId, tau: Timestep, coins: &mut C, out: &mut Vec<NodeId>) {
        let g = self.g;
        self.clear();
        out.clear();
        self.visit(root);
        out.push(root);
        let (mut lo, mut h) = (0usize, 0 as Timestep);
        while lo < out.len() && h < tau {
            let hi = out.len();
            for i in lo..hi {
                let u = out[i];
                for &e in g.in_edges(u) {
                    let edge = g.edge(e);
                    let w = edge.source;
                    if !self.visited[w as usize] && coins.is_live(e, edge.p) {
                        self.visit(w);
                        out.push(w);
                    }
                }
            }
            lo = hi;
            h += 1;
        }
    }
}

pub fn ris_sample<R: Rng + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    head: NodeId,
    tau: Timestep,
    rng: &mut R,
) -> Result<Option<RRSet>> {
    ris_sample_with(g, neg_seeds, head, tau, &mut RngCoins(rng))
}

pub fn ris_sample_with<C: Coins + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    head: NodeId,
    tau: Timestep,
    coins: &mut C,
) -> Result<Option<RRSet>> {
    let seeds = normalize_seeds(g, neg_seeds)?;
    ReverseSampler::new(g, &seeds)?.sample(head, tau, coins)
}
