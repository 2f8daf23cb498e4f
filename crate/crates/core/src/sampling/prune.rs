use super::RRSet;
use crate::diffusion::{Priority, TieRule};
use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Fills `candidates` with the nodes that can still save the head under
/// `rule`.
///
/// * positive dominance keeps every layer up to and including the first
///   negative layer `h*`;
/// * negative dominance keeps layers before `h*` plus the hit negatives;
/// * fixed dominance additionally keeps the layer-`h*` nodes whose branch
///   outranks the branch of the top-ranked hit negative `b*` where the two
///   reverse paths meet.
///
/// Negative seeds are then removed to leave the candidate blockers.
pub fn prune_rr(raw: &RRSet, rule: &TieRule) -> Result<RRSet> {
    if raw.negatives_hit.is_empty() {
        return Err(Error::NoNegativeInSample(raw.head));
    }
    let hstar = raw.first_negative_layer;
    let mut candidates: Vec<NodeId> = raw.layers[..hstar].iter().flatten().copied().collect();
    let last = &raw.layers[hstar];
    let is_negative = |u: &NodeId| raw.negatives_hit.binary_search(u).is_ok();
    match rule {
        TieRule::PositiveDominance => candidates.extend(last.iter().filter(|u| !is_negative(u))),
        TieRule::NegativeDominance => {}
        TieRule::FixedDominance(priority) => {
            let b_idx = (0..last.len())
                .filter(|&i| is_negative(&last[i]))
                .max_by_key(|&i| priority.rank(last[i]))
                .expect("negatives_hit is non-empty");
            for (i, u) in last.iter().enumerate() {
                if !is_negative(u) && branch_outranks(raw, priority, i, b_idx) {
                    candidates.push(*u);
                }
            }
        }
    }
    candidates.sort_unstable();
    let mut out = raw.clone();
    out.candidates = candidates;
    Ok(out)
}

/// Walks both layer-`h*` nodes toward the head until their parents coincide
/// and compares the ranks of the two children of that meeting node.
fn branch_outranks(raw: &RRSet, priority: &Priority, mut u: usize, mut b: usize) -> bool {
    let mut h = raw.first_negative_layer;
    while raw.parents[h][u] != raw.parents[h][b] {
        u = raw.parents[h][u] as usize;
        b = raw.parents[h][b] as usize;
        h -= 1;
    }
    priority.rank(raw.layers[h][u]) > priority.rank(raw.layers[h][b])
}
