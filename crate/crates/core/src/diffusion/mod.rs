//! Time-critical independent cascade diffusion, single and competitive.
//!
//! All routines are generic over a [`Coins`] source deciding whether an edge
//! is live. Both polarities read the same coin for an edge, so a competitive
//! run is always the deterministic outcome of one possible world; fresh
//! random draws, hashed per-world coins and explicit live-edge sets are
//! interchangeable.

mod coins;
mod live_edge;
mod simulate;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub use coins::{Coins, LiveSet, RngCoins, WorldCoins};
pub use live_edge::{enumerate_live_edge_graphs, outcome_in_live_edge, LiveEdgeGraph, LiveEdgeGraphs, MAX_ENUMERATION_EDGES};
pub use simulate::{simulate_competitive, simulate_competitive_with, simulate_single, simulate_single_with, Simulator};

/// Number of synchronous rounds a diffusion may run.
pub type Timestep = u32;

/// A time bound that never truncates.
pub const UNBOUNDED: Timestep = Timestep::MAX;

/// Global priority ranks for fixed dominance; a higher rank wins.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Priority {
    rank: Vec<u32>,
}

impl Priority {
    /// `rank[u]` is the priority of node `u`; must be a permutation of `0..n`.
    pub fn new(rank: Vec<u32>) -> Result<Priority> {
        let mut seen = vec![false; rank.len()];
        for &r in &rank {
            match seen.get_mut(r as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::InvalidPriority(format!("rank {r} repeated or out of range"))),
            }
        }
        Ok(Priority { rank })
    }

    /// Node `u` has rank `u`.
    pub fn identity(n: usize) -> Priority {
        Priority { rank: (0..n as u32).collect() }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Priority {
        let mut rank: Vec<u32> = (0..n as u32).collect();
        rank.shuffle(rng);
        Priority { rank }
    }

    #[inline]
    pub fn rank(&self, u: NodeId) -> u32 {
        self.rank[u as usize]
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }
}

impl TryFrom<Vec<u32>> for Priority {
    type Error = Error;
    fn try_from(rank: Vec<u32>) -> Result<Priority> {
        Priority::new(rank)
    }
}

impl From<Priority> for Vec<u32> {
    fn from(p: Priority) -> Vec<u32> {
        p.rank
    }
}

/// Resolution when positive and negative information reach a node in the
/// same round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TieRule {
    PositiveDominance,
    NegativeDominance,
    /// The reaching neighbour with the highest rank decides.
    FixedDominance(Priority),
}

impl TieRule {
    pub fn short_name(&self) -> &'static str {
        match self {
            TieRule::PositiveDominance => "pd",
            TieRule::NegativeDominance => "nd",
            TieRule::FixedDominance(_) => "fd",
        }
    }

    pub(crate) fn validate(&self, g: &Graph) -> Result<()> {
        match self {
            TieRule::FixedDominance(p) if p.len() != g.n() => Err(Error::InvalidPriority(format!(
                "priority covers {} nodes but the graph has {}",
                p.len(),
                g.n()
            ))),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Negative,
    Positive,
}

/// Final node states of one diffusion. Nodes in neither list stayed inactive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffusionOutcome {
    #[serde(rename = "neg")]
    pub negatively_activated: Vec<NodeId>,
    #[serde(rename = "pos")]
    pub positively_activated: Vec<NodeId>,
    #[serde(rename = "t")]
    pub activation_time: BTreeMap<NodeId, Timestep>,
}

impl DiffusionOutcome {
    pub fn state(&self, u: NodeId) -> Option<Polarity> {
        if self.negatively_activated.binary_search(&u).is_ok() {
            Some(Polarity::Negative)
        } else if self.positively_activated.binary_search(&u).is_ok() {
            Some(Polarity::Positive)
        } else {
            None
        }
    }
}

/// Sorted, deduplicated copy of a seed list after range checks.
pub(crate) fn normalize_seeds(g: &Graph, seeds: &[NodeId]) -> Result<Vec<NodeId>> {
    let mut v = seeds.to_vec();
    for &u in &v {
        g.check_node(u)?;
    }
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

pub(crate) fn check_disjoint(neg: &[NodeId], pos: &[NodeId]) -> Result<()> {
    // both sorted
    let (mut i, mut j) = (0, 0);
    while i < neg.len() && j < pos.len() {
        match neg[i].cmp(&pos[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Err(Error::OverlappingSeeds(neg[i])),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn priority_must_be_permutation() {
        assert!(Priority::new(vec![2, 0, 1]).is_ok());
        assert!(Priority::new(vec![0, 0, 1]).is_err());
        assert!(Priority::new(vec![0, 3, 1]).is_err());
        let p: Priority = serde_json::from_str("[1,0]").unwrap();
        assert_eq!(p.rank(0), 1);
        assert!(serde_json::from_str::<Priority>("[1,1]").is_err());
    }

    #[test]
    fn outcome_json_shape() {
        let o = DiffusionOutcome {
            negatively_activated: vec![0, 1],
            positively_activated: vec![2],
            activation_time: [(0, 0), (1, 1), (2, 0)].into_iter().collect(),
        };
        assert_eq!(serde_json::to_string(&o).unwrap(), r#"{"neg":[0,1],"pos":[2],"t":{"0":0,"1":1,"2":0}}"#);
        let back: DiffusionOutcome = serde_json::from_str(&serde_json::to_string(&o).unwrap()).unwrap();
        assert_eq!(back, o);
    }

    #[test]
    fn disjointness() {
        assert!(check_disjoint(&[1, 3, 5], &[2, 4]).is_ok());
        assert!(matches!(check_disjoint(&[1, 3, 5], &[0, 5]), Err(Error::OverlappingSeeds(5))));
    }
}
