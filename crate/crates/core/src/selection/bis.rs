use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_budget, RescueState, SelectionResult};
use crate::diffusion::{normalize_seeds, RngCoins, TieRule, Timestep};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng;
use crate::sampling::{fis, prune_rr, RRSet, ReverseSampler, SusceptibilityList};

const HEADS_PER_BATCH: usize = 32;

/// Under [`Allocation::Kept`], a head stops after `zeta * MAX_DRAW_FACTOR`
/// draws even if fewer than `zeta` samples were kept.
pub const MAX_DRAW_FACTOR: usize = 20;

/// How reverse samples are spread over head nodes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Allocation {
    /// `zeta` draws per head; every kept sample weighs `H(head)`.
    Draws,
    /// Draw until `zeta` samples are kept (or the draw cap is hit), so each
    /// head's kept samples estimate who can save it given that it is
    /// reached. A kept sample weighs `H(head) * zeta / kept`, which is
    /// `H(head)` whenever the quota is met. Heads with `H = 0` are skipped.
    #[default]
    Kept,
}

/// Per-head sample count that spends about `total` samples over `heads`.
pub fn zeta_for_total(total: u64, heads: usize) -> usize {
    if heads == 0 {
        return 1;
    }
    total.div_ceil(heads as u64).max(1) as usize
}

/// Pruned samples for `(head, keep, max_draws)` triples, in input order.
fn sample_heads(
    g: &Graph,
    seeds: &[NodeId],
    tau: Timestep,
    rule: &TieRule,
    plan: &[(NodeId, usize, usize)],
    master: u64,
) -> Result<Vec<RRSet>> {
    let chunks: Vec<Result<Vec<RRSet>>> = plan
        .par_chunks(HEADS_PER_BATCH)
        .enumerate()
        .map(|(b, chunk)| {
            let mut stream = rng::stream(master, b as u64);
            let mut sampler = ReverseSampler::new(g, seeds)?;
            let mut out = Vec::new();
            for &(v, keep, max_draws) in chunk {
                let (mut kept, mut draws) = (0, 0);
                while kept < keep && draws < max_draws {
                    draws += 1;
                    if let Some(raw) = sampler.sample(v, tau, &mut RngCoins(&mut stream))? {
                        out.push(prune_rr(&raw, rule)?);
                        kept += 1;
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for c in chunks {
        all.extend(c?);
    }
    Ok(all)
}

/// `zeta` reverse draws for every node outside `neg_seeds`, pruned for
/// `rule`. Draws that never meet a negative seed are dropped. Output order
/// is by head, then draw.
pub fn pruned_samples<R: Rng + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    tau: Timestep,
    rule: &TieRule,
    zeta: usize,
    rng: &mut R,
) -> Result<Vec<RRSet>> {
    let seeds = normalize_seeds(g, neg_seeds)?;
    rule.validate(g)?;
    let negative = g.mask(&seeds)?;
    let plan: Vec<_> = g.nodes().filter(|&v| !negative[v as usize]).map(|v| (v, zeta, zeta)).collect();
    sample_heads(g, &seeds, tau, rule, &plan, rng::master_seed(rng))
}

/// Hazard-weighted samples for BIS: each entry pairs a sample weight with
/// its candidate set.
#[allow(clippy::too_many_arguments)]
pub fn weighted_samples<R: Rng + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    tau: Timestep,
    rule: &TieRule,
    h: &SusceptibilityList,
    zeta: usize,
    allocation: Allocation,
    rng: &mut R,
) -> Result<Vec<(f64, Vec<NodeId>)>> {
    let seeds = normalize_seeds(g, neg_seeds)?;
    rule.validate(g)?;
    if h.node_count() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "susceptibility list covers {} nodes but the graph has {}",
            h.node_count(),
            g.n()
        )));
    }
    let negative = g.mask(&seeds)?;
    let mut plan = Vec::new();
    for v in g.nodes().filter(|&v| !negative[v as usize]) {
        let hv = h.get(v).ok_or(Error::MissingSusceptibility(v))?;
        match allocation {
            Allocation::Draws => plan.push((v, zeta, zeta)),
            Allocation::Kept if hv > 0.0 => plan.push((v, zeta, zeta.saturating_mul(MAX_DRAW_FACTOR))),
            Allocation::Kept => {}
        }
    }
    let samples = sample_heads(g, &seeds, tau, rule, &plan, rng::master_seed(rng))?;
    let mut out = Vec::with_capacity(samples.len());
    let mut i = 0;
    while i < samples.len() {
        let head = samples[i].head;
        let j = i + samples[i..].iter().take_while(|s| s.head == head).count();
        let hv = h.get(head).ok_or(Error::MissingSusceptibility(head))?;
        let w = match allocation {
            Allocation::Draws => hv,
            Allocation::Kept if j - i == zeta => hv,
            Allocation::Kept => hv * zeta as f64 / (j - i) as f64,
        };
        out.extend(samples[i..j].iter().map(|s| (w, s.candidates.clone())));
        i = j;
    }
    Ok(out)
}

/// Bidirectional influence sampling: forward susceptibility estimates weight
/// reverse samples, and `k` greedy cover rounds pick the positive seeds.
#[allow(clippy::too_many_arguments)]
pub fn bis_select<R: Rng + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    k: usize,
    tau: Timestep,
    rule: &TieRule,
    phi: usize,
    zeta: usize,
    rng: &mut R,
) -> Result<SelectionResult> {
    bis_select_with(g, neg_seeds, k, tau, rule, phi, zeta, Allocation::default(), rng)
}

/// [`bis_select`] with an explicit sample allocation.
#[allow(clippy::too_many_arguments)]
pub fn bis_select_with<R: Rng + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    k: usize,
    tau: Timestep,
    rule: &TieRule,
    phi: usize,
    zeta: usize,
    allocation: Allocation,
    rng: &mut R,
) -> Result<SelectionResult> {
    let start = Instant::now();
    let seeds = normalize_seeds(g, neg_seeds)?;
    check_budget(g.n(), seeds.len(), k)?;
    rule.validate(g)?;
    let h = fis(g, &seeds, phi, tau, rng)?;
    let mut result = bis_select_with_hazard(g, &seeds, k, tau, rule, &h, zeta, allocation, rng)?;
    result.elapsed = start.elapsed();
    Ok(result)
}

/// BIS with externally supplied susceptibilities.
#[allow(clippy::too_many_arguments)]
pub fn bis_select_with_hazard<R: Rng + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    k: usize,
    tau: Timestep,
    rule: &TieRule,
    h: &SusceptibilityList,
    zeta: usize,
    allocation: Allocation,
    rng: &mut R,
) -> Result<SelectionResult> {
    let start = Instant::now();
    let seeds = normalize_seeds(g, neg_seeds)?;
    check_budget(g.n(), seeds.len(), k)?;
    let weighted = weighted_samples(g, &seeds, tau, rule, h, zeta, allocation, rng)?;
    let negative = g.mask(&seeds)?;
    let mut state = RescueState::new(negative.iter().map(|n| !n).collect(), weighted)?;
    let (picked, gains) = state.greedy(k)?;
    Ok(SelectionResult { method: "bis".into(), seeds: picked, marginal_scores: gains, elapsed: start.elapsed() })
}

/// Same pruned samples as BIS with [`Allocation::Draws`], scored by plain
/// coverage counts.
pub fn select_reverse<R: Rng + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    k: usize,
    tau: Timestep,
    zeta: usize,
    rule: &TieRule,
    rng: &mut R,
) -> Result<SelectionResult> {
    let start = Instant::now();
    let seeds = normalize_seeds(g, neg_seeds)?;
    check_budget(g.n(), seeds.len(), k)?;
    let samples = pruned_samples(g, &seeds, tau, rule, zeta, rng)?;
    let negative = g.mask(&seeds)?;
    let mut state =
        RescueState::new(negative.iter().map(|n| !n).collect(), samples.into_iter().map(|s| (1.0, s.candidates)).collect())?;
    let (picked, gains) = state.greedy(k)?;
    Ok(SelectionResult { method: "reverse".into(), seeds: picked, marginal_scores: gains, elapsed: start.elapsed() })
}
