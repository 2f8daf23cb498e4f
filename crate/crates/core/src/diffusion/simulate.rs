use rand::Rng;

use super::{check_disjoint, normalize_seeds, Coins, DiffusionOutcome, RngCoins, TieRule, Timestep};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

const INACTIVE: u8 = 0;
const NEG: u8 = 1;
const POS: u8 = 2;

/// Reusable buffers for repeated diffusions on one graph. State is reset
/// sparsely, so a run costs time proportional to what it touches.
pub struct Simulator<'g> {
    g: &'g Graph,
    state: Vec<u8>,
    time: Vec<Timestep>,
    // polarity bits of arrivals in the current round
    arrivals: Vec<u8>,
    best_rank: Vec<u32>,
    best_pol: Vec<u8>,
    touched: Vec<NodeId>,
    frontier: Vec<NodeId>,
    next: Vec<NodeId>,
    reached: Vec<NodeId>,
    negatives: usize,
    positives: usize,
}

impl<'g> Simulator<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.n();
        Simulator {
            g,
            state: vec![INACTIVE; n],
            time: vec![0; n],
            arrivals: vec![0; n],
            best_rank: vec![0; n],
            best_pol: vec![0; n],
            touched: Vec::new(),
            frontier: Vec::new(),
            next: Vec::new(),
            reached: Vec::new(),
            negatives: 0,
            positives: 0,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    fn reset(&mut self) {
        for &u in &self.touched {
            self.state[u as usize] = INACTIVE;
        }
        self.touched.clear();
        self.frontier.clear();
        self.negatives = 0;
        self.positives = 0;
    }

    fn activate(&mut self, u: NodeId, pol: u8, t: Timestep) {
        self.state[u as usize] = pol;
        self.time[u as usize] = t;
        self.touched.push(u);
        if pol == NEG {
            self.negatives += 1;
        } else {
            self.positives += 1;
        }
    }

    /// Runs one competitive diffusion. Seeds must be valid, deduplicated and
    /// disjoint; the public wrappers check this. Returns the number of
    /// negatively activated nodes.
    pub fn run<C: Coins + ?Sized>(
        &mut self,
        neg: &[NodeId],
        pos: &[NodeId],
        tau: Timestep,
        rule: &TieRule,
        coins: &mut C,
    ) -> usize {
        self.reset();
        for &s in neg {
            self.activate(s, NEG, 0);
            self.frontier.push(s);
        }
        for &a in pos {
            self.activate(a, POS, 0);
            self.frontier.push(a);
        }
        let priority = match rule {
            TieRule::FixedDominance(p) => Some(p),
            _ => None,
        };
        let g = self.g;
        let mut t: Timestep = 0;
        while !self.frontier.is_empty() && t < tau {
            t += 1;
            for &u in &self.frontier {
                let pol = self.state[u as usize];
                for &e in g.out_edges(u) {
                    let edge = g.edge(e);
                    let v = edge.target as usize;
                    if self.state[v] != INACTIVE || !coins.is_live(e, edge.p) {
                        continue;
                    }
                    if let Some(pr) = priority {
                        let r = pr.rank(u);
                        if self.arrivals[v] == 0 || r > self.best_rank[v] {
                            self.best_rank[v] = r;
                            self.best_pol[v] = pol;
                        }
                    }
                    if self.arrivals[v] == 0 {
                        self.reached.push(edge.target);
                    }
                    self.arrivals[v] |= pol;
                }
            }
            self.next.clear();
            let reached = std::mem::take(&mut self.reached);
            for &v in &reached {
                let bits = std::mem::take(&mut self.arrivals[v as usize]);
                let pol = if bits != NEG | POS {
                    bits
                } else {
                    match rule {
                        TieRule::PositiveDominance => POS,
                        TieRule::NegativeDominance => NEG,
                        TieRule::FixedDominance(_) => self.best_pol[v as usize],
                    }
                };
                self.activate(v, pol, t);
                self.next.push(v);
            }
            self.reached = reached;
            self.reached.clear();
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
        self.negatives
    }

    pub fn negatives(&self) -> usize {
        self.negatives
    }

    pub fn positives(&self) -> usize {
        self.positives
    }

    /// Whether `u` ended negatively activated in the last run.
    #[inline]
    pub fn is_negative(&self, u: NodeId) -> bool {
        self.state[u as usize] == NEG
    }

    /// Nodes activated in the last run, in activation order.
    pub fn activated(&self) -> &[NodeId] {
        &self.touched
    }

    /// Snapshot of the last run.
    pub fn outcome(&self) -> DiffusionOutcome {
        let mut out = DiffusionOutcome::default();
        for &u in &self.touched {
            match self.state[u as usize] {
                NEG => out.negatively_activated.push(u),
                _ => out.positively_activated.push(u),
            }
            out.activation_time.insert(u, self.time[u as usize]);
        }
        out.negatively_activated.sort_unstable();
        out.positively_activated.sort_unstable();
        out
    }
}

/// Time-critical IC from one seed set. All activations are reported as
/// negative.
pub fn simulate_single<R: Rng + ?Sized>(g: &Graph, seeds: &[NodeId], tau: Timestep, rng: &mut R) -> Result<DiffusionOutcome> {
    simulate_single_with(g, seeds, tau, &mut RngCoins(rng))
}

pub fn simulate_single_with<C: Coins + ?Sized>(
    g: &Graph,
    seeds: &[NodeId],
    tau: Timestep,
    coins: &mut C,
) -> Result<DiffusionOutcome> {
    let seeds = normalize_seeds(g, seeds)?;
    if seeds.is_empty() {
        return Err(Error::EmptySeeds);
    }
    let mut sim = Simulator::new(g);
    sim.run(&seeds, &[], tau, &TieRule::NegativeDominance, coins);
    Ok(sim.outcome())
}

/// Negative and positive cascades spreading in lock-step over shared coins.
pub fn simulate_competitive<R: Rng + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    pos_seeds: &[NodeId],
    tau: Timestep,
    rule: &TieRule,
    rng: &mut R,
) -> Result<DiffusionOutcome> {
    simulate_competitive_with(g, neg_seeds, pos_seeds, tau, rule, &mut RngCoins(rng))
}

pub fn simulate_competitive_with<C: Coins + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    pos_seeds: &[NodeId],
    tau: Timestep,
    rule: &TieRule,
    coins: &mut C,
) -> Result<DiffusionOutcome> {
    let neg = normalize_seeds(g, neg_seeds)?;
    let pos = normalize_seeds(g, pos_seeds)?;
    check_disjoint(&neg, &pos)?;
    rule.validate(g)?;
    let mut sim = Simulator::new(g);
    sim.run(&neg, &pos, tau, rule, coins);
    Ok(sim.outcome())
}
