use std::time::Instant;

use rand::Rng;

use super::{check_budget, SelectionResult};
use crate::diffusion::{normalize_seeds, Timestep};
use crate::error::Result;
use crate::graph::{top_out_degree, Graph, NodeId};
use crate::sampling::fis;

/// The `k` nodes most often reached by the negative cascade alone.
pub fn select_forward<R: Rng + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    k: usize,
    tau: Timestep,
    phi: usize,
    rng: &mut R,
) -> Result<SelectionResult> {
    let start = Instant::now();
    let seeds = normalize_seeds(g, neg_seeds)?;
    check_budget(g.n(), seeds.len(), k)?;
    let h = fis(g, &seeds, phi, tau, rng)?;
    let mut ranked: Vec<(NodeId, f64)> = h.iter().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked.truncate(k);
    Ok(SelectionResult {
        method: "forward".into(),
        seeds: ranked.iter().map(|r| r.0).collect(),
        marginal_scores: ranked.iter().map(|r| r.1).collect(),
        elapsed: start.elapsed(),
    })
}

/// The `k` highest out-degree nodes outside the negative seeds.
pub fn select_degree(g: &Graph, neg_seeds: &[NodeId], k: usize) -> Result<SelectionResult> {
    let start = Instant::now();
    let seeds = normalize_seeds(g, neg_seeds)?;
    check_budget(g.n(), seeds.len(), k)?;
    let picked = top_out_degree(g, k, &seeds)?;
    Ok(SelectionResult {
        method: "degree".into(),
        marginal_scores: picked.iter().map(|&u| g.out_degree(u) as f64).collect(),
        seeds: picked,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn forward_on_path() {
        let g = Graph::from_arcs(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let r = select_forward(&g, &[0], 1, 2, 10, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(r.seeds, vec![1]);
        assert_eq!(r.marginal_scores, vec![1.0]);
        let r = select_forward(&g, &[0], 2, 2, 10, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(r.seeds, vec![1, 2]);
    }

    #[test]
    fn forward_star_orders_by_id() {
        let g = Graph::from_arcs(5, (1..5).map(|v| (0, v, 1.0))).unwrap();
        let r = select_forward(&g, &[0], 4, 1, 20, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(r.seeds, vec![1, 2, 3, 4]);
    }

    #[test]
    fn degree_skips_negatives() {
        let g = Graph::from_arcs(4, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0), (3, 0, 1.0)]).unwrap();
        let r = select_degree(&g, &[0], 2).unwrap();
        assert_eq!(r.seeds, vec![1, 3]);
        assert!(select_degree(&g, &[0], 4).is_err());
        assert!(select_degree(&g, &[0], 0).unwrap().seeds.is_empty());
    }
}
