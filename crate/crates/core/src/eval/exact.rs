use crate::diffusion::{check_disjoint, enumerate_live_edge_graphs, normalize_seeds, outcome_in_live_edge, TieRule, Timestep};
use crate::error::Result;
use crate::graph::{Graph, NodeId};

/// Expected number of negatives, summed over every live-edge world.
pub fn exact_expected_negatives(
    g: &Graph,
    neg_seeds: &[NodeId],
    pos_seeds: &[NodeId],
    tau: Timestep,
    rule: &TieRule,
) -> Result<f64> {
    let mut total = 0.0;
    for world in enumerate_live_edge_graphs(g)? {
        let o = outcome_in_live_edge(&world, g, neg_seeds, pos_seeds, tau, rule)?;
        total += world.probability * o.negatively_activated.len() as f64;
    }
    Ok(total)
}

/// Exact reduction in expected negatives caused by `pos_seeds`.
pub fn exact_sigma_minus(g: &Graph, neg_seeds: &[NodeId], pos_seeds: &[NodeId], tau: Timestep, rule: &TieRule) -> Result<f64> {
    let neg = normalize_seeds(g, neg_seeds)?;
    let pos = normalize_seeds(g, pos_seeds)?;
    check_disjoint(&neg, &pos)?;
    rule.validate(g)?;
    let worlds = enumerate_live_edge_graphs(g)?;
    if pos.is_empty() {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for world in worlds {
        let without = outcome_in_live_edge(&world, g, &neg, &[], tau, rule)?.negatively_activated.len();
        let with = outcome_in_live_edge(&world, g, &neg, &pos, tau, rule)?.negatively_activated.len();
        total += world.probability * (without - with) as f64;
    }
    Ok(total)
}

/// Exact probability that each node is reached by the negative cascade
/// alone within `tau` rounds; seeds get 1.
pub fn exact_activation_probabilities(g: &Graph, neg_seeds: &[NodeId], tau: Timestep) -> Result<Vec<f64>> {
    let neg = normalize_seeds(g, neg_seeds)?;
    let mut p = vec![0.0; g.n()];
    for world in enumerate_live_edge_graphs(g)? {
        let o = outcome_in_live_edge(&world, g, &neg, &[], tau, &TieRule::NegativeDominance)?;
        for &v in &o.negatively_activated {
            p[v as usize] += world.probability;
        }
    }
    Ok(p)
}
