use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use super::{check_budget, SelectionResult};
use crate::diffusion::{normalize_seeds, Simulator, TieRule, Timestep, WorldCoins};
use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::rng;

/// Picks, their marginal gains, and how many gain evaluations were spent.
#[derive(Clone, Debug, PartialEq)]
pub struct GreedyTrace {
    pub picks: Vec<NodeId>,
    pub gains: Vec<f64>,
    pub evaluations: u64,
}

/// Greedy that re-evaluates every remaining candidate each round.
/// `gain(A, x)` is the marginal value of `x` given the picks `A` so far.
pub fn plain_greedy<F>(candidates: &[NodeId], k: usize, mut gain: F) -> GreedyTrace
where
    F: FnMut(&[NodeId], NodeId) -> f64,
{
    let mut remaining: Vec<NodeId> = candidates.to_vec();
    remaining.sort_unstable();
    let mut trace = GreedyTrace { picks: Vec::new(), gains: Vec::new(), evaluations: 0 };
    while trace.picks.len() < k && !remaining.is_empty() {
        let mut best: Option<(usize, f64)> = None;
        for (i, &x) in remaining.iter().enumerate() {
            let v = gain(&trace.picks, x);
            trace.evaluations += 1;
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((i, v));
            }
        }
        let (i, v) = best.expect("remaining is non-empty");
        trace.picks.push(remaining.remove(i));
        trace.gains.push(v);
    }
    trace
}

struct Lazy {
    gain: f64,
    node: NodeId,
    round: usize,
}

impl PartialEq for Lazy {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Lazy {}

impl Ord for Lazy {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain.total_cmp(&other.gain).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Lazy {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// CELF lazy greedy. For a submodular gain it returns the same picks as
/// [`plain_greedy`] with at most as many evaluations.
pub fn lazy_greedy<F>(candidates: &[NodeId], k: usize, mut gain: F) -> GreedyTrace
where
    F: FnMut(&[NodeId], NodeId) -> f64,
{
    if k == 0 {
        return GreedyTrace { picks: Vec::new(), gains: Vec::new(), evaluations: 0 };
    }
    let initial = candidates.iter().map(|&x| gain(&[], x)).collect();
    lazy_greedy_with_initial(candidates, k, initial, gain)
}

/// Lazy greedy seeded with precomputed gains against the empty set, which
/// count as evaluations.
pub fn lazy_greedy_with_initial<F>(candidates: &[NodeId], k: usize, initial: Vec<f64>, mut gain: F) -> GreedyTrace
where
    F: FnMut(&[NodeId], NodeId) -> f64,
{
    assert_eq!(candidates.len(), initial.len(), "one initial gain per candidate");
    let mut trace = GreedyTrace { picks: Vec::new(), gains: Vec::new(), evaluations: candidates.len() as u64 };
    let mut heap: BinaryHeap<Lazy> =
        candidates.iter().zip(initial).map(|(&node, gain)| Lazy { gain, node, round: 0 }).collect();
    while trace.picks.len() < k {
        let Some(top) = heap.pop() else { break };
        let round = trace.picks.len();
        if top.round == round {
            trace.picks.push(top.node);
            trace.gains.push(top.gain);
        } else {
            let g = gain(&trace.picks, top.node);
            trace.evaluations += 1;
            heap.push(Lazy { gain: g, node: top.node, round });
        }
    }
    trace
}

/// Monte Carlo estimate of the blocking objective over one fixed set of
/// possible worlds. Every evaluation reuses the same worlds, so the estimate
/// is itself a coverage function and lazy evaluation stays exact.
pub struct WorldSetGain<'g> {
    g: &'g Graph,
    neg: Vec<NodeId>,
    tau: Timestep,
    rule: TieRule,
    worlds: Vec<u64>,
    /// Negatives per world under the current picks.
    current: Vec<u32>,
    picks: Vec<NodeId>,
}

impl<'g> WorldSetGain<'g> {
    pub fn new<R: Rng + ?Sized>(
        g: &'g Graph,
        neg_seeds: &[NodeId],
        tau: Timestep,
        rule: &TieRule,
        runs: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let neg = normalize_seeds(g, neg_seeds)?;
        rule.validate(g)?;
        let master = rng::master_seed(rng);
        let worlds = (0..runs as u64).map(|r| rng::mix64(master ^ rng::mix64(r))).collect();
        let mut w = WorldSetGain { g, neg, tau, rule: rule.clone(), worlds, current: Vec::new(), picks: Vec::new() };
        w.current = w.counts(&[]);
        Ok(w)
    }

    pub fn picks(&self) -> &[NodeId] {
        &self.picks
    }

    fn counts(&self, pos: &[NodeId]) -> Vec<u32> {
        let mut sim = Simulator::new(self.g);
        self.worlds
            .iter()
            .map(|&w| sim.run(&self.neg, pos, self.tau, &self.rule, &mut WorldCoins::new(w)) as u32)
            .collect()
    }

    fn gain_with(&self, sim: &mut Simulator<'_>, buf: &mut Vec<NodeId>, x: NodeId) -> f64 {
        buf.clear();
        buf.extend_from_slice(&self.picks);
        buf.push(x);
        let mut saved: u64 = 0;
        for (&w, &base) in self.worlds.iter().zip(&self.current) {
            let now = sim.run(&self.neg, buf, self.tau, &self.rule, &mut WorldCoins::new(w)) as u32;
            saved += (base - now) as u64;
        }
        saved as f64 / self.worlds.len().max(1) as f64
    }

    /// Estimated marginal gain of adding `x` to the current picks.
    pub fn gain(&self, x: NodeId) -> f64 {
        self.gain_with(&mut Simulator::new(self.g), &mut Vec::new(), x)
    }

    /// Gains for many candidates, evaluated in parallel.
    pub fn gains(&self, xs: &[NodeId]) -> Vec<f64> {
        xs.par_iter()
            .map_init(|| (Simulator::new(self.g), Vec::new()), |(sim, buf), &x| self.gain_with(sim, buf, x))
            .collect()
    }

    /// Adds `x` to the picks.
    pub fn commit(&mut self, x: NodeId) {
        self.picks.push(x);
        self.current = self.counts(&self.picks);
    }

    /// Brings the picks in line with `a`, which must extend them.
    fn sync(&mut self, a: &[NodeId]) {
        debug_assert!(a.starts_with(&self.picks));
        while self.picks.len() < a.len() {
            self.commit(a[self.picks.len()]);
        }
    }
}

/// Greedy with CELF lazy evaluation; gains are Monte Carlo estimates over
/// `mc_runs` fixed possible worlds shared by every evaluation.
pub fn select_greedy_celf<R: Rng + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    k: usize,
    tau: Timestep,
    rule: &TieRule,
    mc_runs: usize,
    rng: &mut R,
) -> Result<SelectionResult> {
    let start = Instant::now();
    let seeds = normalize_seeds(g, neg_seeds)?;
    check_budget(g.n(), seeds.len(), k)?;
    let mut objective = WorldSetGain::new(g, &seeds, tau, rule, mc_runs, rng)?;
    let negative = g.mask(&seeds)?;
    let candidates: Vec<NodeId> = if k == 0 { Vec::new() } else { g.nodes().filter(|&u| !negative[u as usize]).collect() };
    let initial = objective.gains(&candidates);
    let trace = lazy_greedy_with_initial(&candidates, k, initial, |a, x| {
        objective.sync(a);
        objective.gain(x)
    });
    Ok(SelectionResult {
        method: "greedy_celf".into(),
        seeds: trace.picks,
        marginal_scores: trace.gains,
        elapsed: start.elapsed(),
    })
}
