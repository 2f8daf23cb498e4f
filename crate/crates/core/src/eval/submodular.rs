use serde::{Deserialize, Serialize};

use super::exact_sigma_minus;
use crate::diffusion::{normalize_seeds, TieRule, Timestep};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub const MAX_CHECK_EDGES: usize = 12;
pub const MAX_CHECK_CANDIDATES: usize = 6;
pub const VIOLATION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `f(A ∪ {x}) < f(A)`; `b` repeats `a` and `rhs` is 0.
    Monotonicity,
    /// `f(A ∪ {x}) − f(A) < f(B ∪ {x}) − f(B)` with `A ⊊ B`.
    Submodularity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub a: Vec<NodeId>,
    pub b: Vec<NodeId>,
    pub x: NodeId,
    /// Gain of `x` on `a`.
    pub lhs: f64,
    /// Gain of `x` on `b`, or 0 for monotonicity.
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubmodularityReport {
    /// Strict `(A ⊊ B, x ∉ B)` triples plus `(A, x ∉ A)` monotonicity pairs.
    pub instances_checked: u64,
    pub violations: Vec<Violation>,
    /// Largest `rhs − lhs` seen, floored at 0.
    pub max_violation: f64,
}

impl SubmodularityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

fn members(mask: usize, cands: &[NodeId]) -> Vec<NodeId> {
    cands.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &u)| u).collect()
}

/// Exhaustive check that the exact blocking objective is monotone and
/// submodular over all positive seed sets drawn from the non-negative nodes.
pub fn check_monotone_submodular(g: &Graph, neg_seeds: &[NodeId], tau: Timestep, rule: &TieRule) -> Result<SubmodularityReport> {
    if g.m() > MAX_CHECK_EDGES {
        return Err(Error::TooManyEdges { edges: g.m(), limit: MAX_CHECK_EDGES });
    }
    let neg = normalize_seeds(g, neg_seeds)?;
    let negative = g.mask(&neg)?;
    let cands: Vec<NodeId> = g.nodes().filter(|&u| !negative[u as usize]).collect();
    if cands.len() > MAX_CHECK_CANDIDATES {
        return Err(Error::TooManyCandidates { candidates: cands.len(), limit: MAX_CHECK_CANDIDATES });
    }
    let c = cands.len();
    let f = (0..1usize << c)
        .map(|mask| exact_sigma_minus(g, &neg, &members(mask, &cands), tau, rule))
        .collect::<Result<Vec<f64>>>()?;

    let mut report = SubmodularityReport { instances_checked: 0, violations: Vec::new(), max_violation: 0.0 };
    let mut record = |kind, a: usize, b: usize, x: usize, lhs: f64, rhs: f64| {
        let excess = rhs - lhs;
        report.max_violation = report.max_violation.max(excess);
        if excess > VIOLATION_TOLERANCE {
            report.violations.push(Violation { kind, a: members(a, &cands), b: members(b, &cands), x: cands[x], lhs, rhs });
        }
    };
    let mut checked = 0u64;
    for a in 0..1usize << c {
        for x in (0..c).filter(|&x| a >> x & 1 == 0) {
            checked += 1;
            let gain_a = f[a | 1 << x] - f[a];
            record(ViolationKind::Monotonicity, a, a, x, gain_a, 0.0);
            // strict supersets of a that still exclude x
            let free = !a & !(1 << x) & ((1 << c) - 1);
            let mut extra = free;
            while extra != 0 {
                let b = a | extra;
                checked += 1;
                record(ViolationKind::Submodularity, a, b, x, gain_a, f[b | 1 << x] - f[b]);
                extra = (extra - 1) & free;
            }
        }
    }
    report.instances_checked = checked;
    Ok(report)
}
