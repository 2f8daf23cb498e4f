//! Seeded random-graph generators used as desk-scale stand-ins for real
//! datasets.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, NodeId, WeightScheme};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SyntheticModel {
    /// `m` distinct edges drawn uniformly (G(n, m)).
    ErdosRenyi { n: usize, m: usize },
    /// Preferential attachment; each new node links to `attach` earlier nodes.
    BarabasiAlbert { n: usize, attach: usize },
}

/// Node pairs of a synthetic graph. Undirected pairs are reported once.
pub fn synthetic_pairs(model: SyntheticModel, directed: bool, seed: u64) -> Result<(usize, Vec<(NodeId, NodeId)>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model {
        SyntheticModel::ErdosRenyi { n, m } => {
            let slots = n.saturating_mul(n.saturating_sub(1));
            let max = if directed { slots } else { slots / 2 };
            if m > max {
                return Err(Error::InvalidParameter(format!("G({n}, {m}) needs more than the {max} possible edges")));
            }
            let mut seen = HashSet::with_capacity(m);
            let mut pairs = Vec::with_capacity(m);
            while pairs.len() < m {
                let u = rng.gen_range(0..n) as NodeId;
                let v = rng.gen_range(0..n) as NodeId;
                if u == v {
                    continue;
                }
                let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
                if seen.insert(key) {
                    pairs.push((u, v));
                }
            }
            Ok((n, pairs))
        }
        SyntheticModel::BarabasiAlbert { n, attach } => {
            if attach == 0 || (n > 1 && attach >= n) {
                return Err(Error::InvalidParameter(format!("attachment {attach} infeasible for {n} nodes")));
            }
            // one entry per edge endpoint, so uniform draws are degree-proportional
            let mut endpoints: Vec<NodeId> = Vec::new();
            let mut pairs = Vec::new();
            let mut targets = Vec::with_capacity(attach);
            for v in 1..n as NodeId {
                targets.clear();
                if (v as usize) <= attach {
                    targets.extend(0..v);
                } else {
                    while targets.len() < attach {
                        let t = endpoints[rng.gen_range(0..endpoints.len())];
                        if !targets.contains(&t) {
                            targets.push(t);
                        }
                    }
                }
                for &t in &targets {
                    // new node points at the hub it attaches to
                    pairs.push((v, t));
                    endpoints.push(v);
                    endpoints.push(t);
                }
            }
            Ok((n, pairs))
        }
    }
}

pub fn generate_synthetic(model: SyntheticModel, directed: bool, scheme: WeightScheme, seed: u64) -> Result<Graph> {
    let (n, pairs) = synthetic_pairs(model, directed, seed)?;
    Graph::from_pairs(n, pairs, directed, scheme)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_erdos_renyi() {
        let g = generate_synthetic(SyntheticModel::ErdosRenyi { n: 10, m: 0 }, false, WeightScheme::Constant(0.1), 1)
            .unwrap();
        assert_eq!((g.n(), g.m()), (10, 0));
    }

    #[test]
    fn ba_single_attachment_is_tree() {
        let (n, pairs) = synthetic_pairs(SyntheticModel::BarabasiAlbert { n: 5, attach: 1 }, false, 3).unwrap();
        assert_eq!(n, 5);
        assert_eq!(pairs.len(), 4);
        // connected: union-find over the pairs
        let mut root: Vec<usize> = (0..n).collect();
        fn find(r: &mut Vec<usize>, x: usize) -> usize {
            if r[x] != x {
                let p = find(r, r[x]);
                r[x] = p;
            }
            r[x]
        }
        for &(u, v) in &pairs {
            let (a, b) = (find(&mut root, u as usize), find(&mut root, v as usize));
            root[a] = b;
        }
        let r0 = find(&mut root, 0);
        assert!((0..n).all(|x| find(&mut root, x) == r0));
        let g = generate_synthetic(SyntheticModel::BarabasiAlbert { n: 5, attach: 1 }, false, WeightScheme::WeightedCascade, 3)
            .unwrap();
        assert_eq!(g.m(), 8);
    }

    #[test]
    fn deterministic_per_seed() {
        let model = SyntheticModel::ErdosRenyi { n: 100, m: 300 };
        let a = generate_synthetic(model, true, WeightScheme::WeightedCascade, 9).unwrap();
        let b = generate_synthetic(model, true, WeightScheme::WeightedCascade, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.m(), 300);
        let c = generate_synthetic(model, true, WeightScheme::WeightedCascade, 10).unwrap();
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn no_loops_or_duplicates() {
        let g = generate_synthetic(SyntheticModel::BarabasiAlbert { n: 300, attach: 3 }, false, WeightScheme::WeightedCascade, 5)
            .unwrap();
        let mut seen = HashSet::new();
        for e in g.edges() {
            assert_ne!(e.source, e.target);
            assert!(seen.insert((e.source, e.target)));
        }
        // 3 + 2 + 1 for the seed nodes then 3 per node, doubled
        assert_eq!(g.m(), 2 * (1 + 2 + 3 * (300 - 3)));
    }

    #[test]
    fn infeasible() {
        assert!(synthetic_pairs(SyntheticModel::ErdosRenyi { n: 3, m: 4 }, false, 0).is_err());
        assert!(synthetic_pairs(SyntheticModel::ErdosRenyi { n: 3, m: 6 }, true, 0).is_ok());
        assert!(synthetic_pairs(SyntheticModel::BarabasiAlbert { n: 3, attach: 0 }, false, 0).is_err());
    }
}
