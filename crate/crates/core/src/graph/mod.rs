//! Directed probabilistic graphs in compressed adjacency form.
//!
//! Nodes are dense ids `0..n`. Edges keep their insertion order and are
//! addressed by [`EdgeId`]; the out- and in-adjacency lists both index into
//! the same edge table, so an edge's coin can be keyed by its id no matter
//! which direction a traversal walks it.

mod load;
mod rank;
pub mod synthetic;

use std::collections::HashSet;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use load::load_edge_list;
pub use rank::{pagerank, top_out_degree};
pub use synthetic::{generate_synthetic, SyntheticModel};

pub type NodeId = u32;
pub type EdgeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub source: NodeId,
    pub target: NodeId,
    pub p: f64,
}

/// How activation probabilities are assigned once the structure is known.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightScheme {
    Constant(f64),
    /// `p(u, v) = 1 / in_degree(v)`.
    #[default]
    WeightedCascade,
    /// Third column of the edge list.
    FromFile,
}


#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: Vec<Edge>,
    out_offsets: Vec<usize>,
    out_ids: Vec<EdgeId>,
    in_offsets: Vec<usize>,
    in_ids: Vec<EdgeId>,
    labels: Vec<String>,
}

/// One-line description printed by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub directed: bool,
}

impl Graph {
    /// Directed graph from explicit `(source, target, p)` arcs. Self-loops are
    /// dropped and repeated arcs keep their first probability.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (NodeId, NodeId, f64)>) -> Result<Graph> {
        let arcs = arcs.into_iter().map(|(u, v, p)| (u, v, Some(p))).collect();
        Graph::build(n, None, true, arcs, WeightScheme::FromFile)
    }

    /// Graph from unweighted node pairs. Undirected pairs become two arcs.
    pub fn from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (NodeId, NodeId)>,
        directed: bool,
        scheme: WeightScheme,
    ) -> Result<Graph> {
        if scheme == WeightScheme::FromFile {
            return Err(Error::InvalidParameter(
                "pairs carry no weights; use a constant or weighted-cascade scheme".into(),
            ));
        }
        let arcs = pairs.into_iter().map(|(u, v)| (u, v, None)).collect();
        Graph::build(n, None, directed, arcs, scheme)
    }

    pub(crate) fn build(
        n: usize,
        labels: Option<Vec<String>>,
        directed: bool,
        raw: Vec<(NodeId, NodeId, Option<f64>)>,
        scheme: WeightScheme,
    ) -> Result<Graph> {
        if let WeightScheme::Constant(c) = scheme {
            if !(0.0..=1.0).contains(&c) {
                return Err(Error::InvalidParameter(format!("constant probability {c} outside [0, 1]")));
            }
        }
        let mut seen = HashSet::with_capacity(raw.len() * 2);
        let mut edges = Vec::with_capacity(raw.len() * if directed { 1 } else { 2 });
        let mut push = |u: NodeId, v: NodeId, w: Option<f64>, edges: &mut Vec<Edge>| -> Result<()> {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::NodeOutOfRange(x));
                }
            }
            if u == v || !seen.insert((u, v)) {
                return Ok(());
            }
            let p = match (scheme, w) {
                (WeightScheme::FromFile, Some(p)) => {
                    if !(0.0..=1.0).contains(&p) {
                        return Err(Error::InvalidParameter(format!("probability {p} on ({u}, {v}) outside [0, 1]")));
                    }
                    p
                }
                (WeightScheme::FromFile, None) => {
                    return Err(Error::InvalidParameter(format!("edge ({u}, {v}) has no weight")));
                }
                (WeightScheme::Constant(c), _) => c,
                // filled in below, once in-degrees are final
                (WeightScheme::WeightedCascade, _) => 0.0,
            };
            edges.push(Edge { source: u, target: v, p });
            Ok(())
        };
        for (u, v, w) in raw {
            push(u, v, w, &mut edges)?;
            if !directed {
                push(v, u, w, &mut edges)?;
            }
        }

        let (out_offsets, out_ids) = csr(n, edges.iter().map(|e| e.source));
        let (in_offsets, in_ids) = csr(n, edges.iter().map(|e| e.target));
        if scheme == WeightScheme::WeightedCascade {
            for v in 0..n {
                let ids = &in_ids[in_offsets[v]..in_offsets[v + 1]];
                let p = 1.0 / ids.len() as f64;
                for &e in ids {
                    edges[e as usize].p = p;
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        debug_assert_eq!(labels.len(), n);
        Ok(Graph { n, directed, edges, out_offsets, out_ids, in_offsets, in_ids, labels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e as usize]
    }

    #[inline]
    pub fn out_edges(&self, u: NodeId) -> &[EdgeId] {
        let u = u as usize;
        &self.out_ids[self.out_offsets[u]..self.out_offsets[u + 1]]
    }

    #[inline]
    pub fn in_edges(&self, v: NodeId) -> &[EdgeId] {
        let v = v as usize;
        &self.in_ids[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    pub fn out_degree(&self, u: NodeId) -> usize {
        self.out_edges(u).len()
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.in_edges(v).len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + Clone {
        0..self.n as NodeId
    }

    /// Original label of `u` in the source file.
    pub fn label(&self, u: NodeId) -> &str {
        &self.labels[u as usize]
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.labels.iter().position(|l| l == label).map(|i| i as NodeId)
    }

    pub fn summary(&self) -> GraphSummary {
        GraphSummary { n: self.n, m: self.m(), directed: self.directed }
    }

    pub fn check_node(&self, u: NodeId) -> Result<()> {
        if (u as usize) < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange(u))
        }
    }

    /// Dense membership mask for `nodes`, validating every id.
    pub fn mask(&self, nodes: &[NodeId]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &u in nodes {
            self.check_node(u)?;
            mask[u as usize] = true;
        }
        Ok(mask)
    }

    /// Writes `label label p` lines in edge order; loading the output with
    /// [`WeightScheme::FromFile`] as a directed list reproduces the graph.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for e in &self.edges {
            writeln!(w, "{} {} {}", self.label(e.source), self.label(e.target), e.p)?;
        }
        Ok(())
    }
}

fn csr(n: usize, keys: impl Iterator<Item = NodeId> + Clone) -> (Vec<usize>, Vec<EdgeId>) {
    let mut offsets = vec![0usize; n + 1];
    for k in keys.clone() {
        offsets[k as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut ids = vec![0 as EdgeId; offsets[n]];
    for (e, k) in keys.enumerate() {
        ids[fill[k as usize]] = e as EdgeId;
        fill[k as usize] += 1;
    }
    (offsets, ids)
}
