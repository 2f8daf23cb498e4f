//! Shared fixtures for the criterion benches.

use tcaibm::graph::{generate_synthetic, top_out_degree, SyntheticModel};
use tcaibm::{Graph, NodeId, WeightScheme};

/// Undirected preferential-attachment graph with weighted-cascade
/// probabilities, and its `negatives` highest-degree nodes.
pub fn ba_instance(n: usize, negatives: usize) -> (Graph, Vec<NodeId>) {
    let g = generate_synthetic(SyntheticModel::BarabasiAlbert { n, attach: 2 }, false, WeightScheme::WeightedCascade, 7)
        .expect("valid generator parameters");
    let neg = top_out_degree(&g, negatives, &[]).expect("enough nodes");
    (g, neg)
}
