//! Possible-world semantics: enumerate every live-edge graph with its
//! probability, and resolve a competitive diffusion inside one world by
//! shortest-path comparison instead of simulation.

use std::collections::VecDeque;

use super::{check_disjoint, normalize_seeds, Coins, DiffusionOutcome, TieRule, Timestep};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, NodeId};

/// Enumeration visits `2^m` worlds; beyond this use Monte Carlo.
pub const MAX_ENUMERATION_EDGES: usize = 25;

/// One possible world: bit `e` of `mask` is set iff edge `e` is live.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiveEdgeGraph {
    pub mask: u64,
    pub probability: f64,
}

impl LiveEdgeGraph {
    #[inline]
    pub fn is_live(&self, e: EdgeId) -> bool {
        self.mask >> e & 1 == 1
    }

    pub fn live_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..64).filter(move |&e| self.is_live(e))
    }
}

impl Coins for LiveEdgeGraph {
    #[inline]
    fn is_live(&mut self, e: EdgeId, _p: f64) -> bool {
        LiveEdgeGraph::is_live(self, e)
    }
}

pub struct LiveEdgeGraphs<'g> {
    g: &'g Graph,
    next: u64,
    end: u64,
}

impl Iterator for LiveEdgeGraphs<'_> {
    type Item = LiveEdgeGraph;

    fn next(&mut self) -> Option<LiveEdgeGraph> {
        if self.next == self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let probability = self
            .g
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| if mask >> e & 1 == 1 { edge.p } else { 1.0 - edge.p })
            .product();
        Some(LiveEdgeGraph { mask, probability })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

/// All `2^m` live-edge graphs of `g`, including zero-probability ones.
pub fn enumerate_live_edge_graphs(g: &Graph) -> Result<LiveEdgeGraphs<'_>> {
    if g.m() > MAX_ENUMERATION_EDGES {
        return Err(Error::TooManyEdges { edges: g.m(), limit: MAX_ENUMERATION_EDGES });
    }
    Ok(LiveEdgeGraphs { g, next: 0, end: 1u64 << g.m() })
}

const FAR: Timestep = Timestep::MAX;

fn bfs(g: &Graph, world: &LiveEdgeGraph, sources: &[NodeId], tau: Timestep) -> Vec<Timestep> {
    let mut dist = vec![FAR; g.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s as usize] = 0;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        let d = dist[u as usize];
        if d >= tau {
            continue;
        }
        for &e in g.out_edges(u) {
            let v = g.edge(e).target as usize;
            if world.is_live(e) && dist[v] == FAR {
                dist[v] = d + 1;
                queue.push_back(v as NodeId);
            }
        }
    }
    dist
}

/// Deterministic competitive outcome in one live-edge world.
///
/// With `d_S` and `d_A` the live shortest-path distances from the negative and
/// positive seeds (truncated at `tau`), a node activates at `min(d_S, d_A)`;
/// it is positive when `d_A < d_S`, negative when `d_S < d_A`, and on a tie
/// the rule decides: positive dominance takes the positive side, negative
/// dominance the negative side, and fixed dominance copies the polarity of the
/// highest-ranked live in-neighbour activated one step earlier.
pub fn outcome_in_live_edge(
    world: &LiveEdgeGraph,
    g: &Graph,
    neg_seeds: &[NodeId],
    pos_seeds: &[NodeId],
    tau: Timestep,
    rule: &TieRule,
) -> Result<DiffusionOutcome> {
    let neg = normalize_seeds(g, neg_seeds)?;
    let pos = normalize_seeds(g, pos_seeds)?;
    check_disjoint(&neg, &pos)?;
    rule.validate(g)?;

    let d_neg = bfs(g, world, &neg, tau);
    let d_pos = bfs(g, world, &pos, tau);
    let time: Vec<Timestep> = d_neg.iter().zip(&d_pos).map(|(a, b)| *a.min(b)).collect();

    let mut order: Vec<NodeId> = g.nodes().filter(|&u| time[u as usize] != FAR).collect();
    order.sort_by_key(|&u| (time[u as usize], u));

    // Some(true) = positive
    let mut positive: Vec<Option<bool>> = vec![None; g.n()];
    for &w in &order {
        let wi = w as usize;
        let is_pos = if d_pos[wi] < d_neg[wi] {
            true
        } else if d_neg[wi] < d_pos[wi] {
            false
        } else {
            match rule {
                TieRule::PositiveDominance => true,
                TieRule::NegativeDominance => false,
                TieRule::FixedDominance(priority) => {
                    let t = time[wi];
                    let top = g
                        .in_edges(w)
                        .iter()
                        .filter(|&&e| world.is_live(e))
                        .map(|&e| g.edge(e).source)
                        .filter(|&x| time[x as usize].checked_add(1) == Some(t))
                        .max_by_key(|&x| priority.rank(x))
                        .expect("tied node has an in-neighbour one step earlier");
                    positive[top as usize].expect("earlier nodes are resolved first")
                }
            }
        };
        positive[wi] = Some(is_pos);
    }

    let mut out = DiffusionOutcome::default();
    for &w in &order {
        if positive[w as usize] == Some(true) {
            out.positively_activated.push(w);
        } else {
            out.negatively_activated.push(w);
        }
        out.activation_time.insert(w, time[w as usize]);
    }
    out.negatively_activated.sort_unstable();
    out.positively_activated.sort_unstable();
    Ok(out)
}
