use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::sampling::{RRSet, SusceptibilityList};

/// Rescue scores over a pool of pruned samples, with the inverted
/// candidate-to-sample index used for greedy cover-and-discount rounds.
#[derive(Clone, Debug)]
pub struct RescueState {
    score: Vec<f64>,
    head_hazard: Vec<f64>,
    coverage: Vec<Vec<u32>>,
    members: Vec<Vec<NodeId>>,
    covered: Vec<bool>,
    eligible: Vec<bool>,
}

/// Hazard-weighted state: each sample weighs `H(head)`.
pub fn build_rescue_state(samples: &[RRSet], h: &SusceptibilityList) -> Result<RescueState> {
    let mut eligible = vec![false; h.node_count()];
    for (v, _) in h.iter() {
        eligible[v as usize] = true;
    }
    let mut weighted = Vec::with_capacity(samples.len());
    for s in samples {
        let w = h.get(s.head).ok_or(Error::MissingSusceptibility(s.head))?;
        weighted.push((w, s.candidates.clone()));
    }
    RescueState::new(eligible, weighted)
}

#[derive(PartialEq)]
struct Entry(f64, NodeId);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl RescueState {
    /// `eligible[u]` marks the nodes that may be picked; `samples` pairs each
    /// sample's weight with its candidate set.
    pub fn new(eligible: Vec<bool>, samples: Vec<(f64, Vec<NodeId>)>) -> Result<RescueState> {
        let n = eligible.len();
        let mut score = vec![0.0; n];
        let mut coverage = vec![Vec::new(); n];
        let mut head_hazard = Vec::with_capacity(samples.len());
        let mut members = Vec::with_capacity(samples.len());
        for (i, (w, c)) in samples.into_iter().enumerate() {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::InvalidParameter(format!("sample weight {w} must be finite and non-negative")));
            }
            for &u in &c {
                if !eligible.get(u as usize).copied().unwrap_or(false) {
                    return Err(Error::InvalidParameter(format!("candidate {u} is not eligible")));
                }
                score[u as usize] += w;
                coverage[u as usize].push(i as u32);
            }
            head_hazard.push(w);
            members.push(c);
        }
        let covered = vec![false; members.len()];
        Ok(RescueState { score, head_hazard, coverage, members, covered, eligible })
    }

    pub fn score(&self, u: NodeId) -> f64 {
        self.score[u as usize]
    }

    pub fn scores(&self) -> &[f64] {
        &self.score
    }

    pub fn num_samples(&self) -> usize {
        self.members.len()
    }

    pub fn head_hazard(&self, sample: usize) -> f64 {
        self.head_hazard[sample]
    }

    pub fn members(&self, sample: usize) -> &[NodeId] {
        &self.members[sample]
    }

    /// Sample ids containing `u`.
    pub fn coverage(&self, u: NodeId) -> &[u32] {
        &self.coverage[u as usize]
    }

    pub fn is_covered(&self, sample: usize) -> bool {
        self.covered[sample]
    }

    /// Total weight of covered samples.
    pub fn covered_mass(&self) -> f64 {
        self.covered.iter().zip(&self.head_hazard).filter(|(c, _)| **c).map(|(_, w)| w).sum()
    }

    /// Scores re-derived from the uncovered samples.
    pub fn recompute_scores(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.score.len()];
        for (i, c) in self.members.iter().enumerate() {
            if !self.covered[i] {
                for &u in c {
                    s[u as usize] += self.head_hazard[i];
                }
            }
        }
        s
    }

    /// Takes `u`: its uncovered samples become covered and their weight is
    /// withdrawn from every member. Returns the score `u` had.
    pub fn take(&mut self, u: NodeId) -> f64 {
        let gained = self.score[u as usize];
        for &i in &self.coverage[u as usize] {
            let i = i as usize;
            if self.covered[i] {
                continue;
            }
            self.covered[i] = true;
            let w = self.head_hazard[i];
            for &x in &self.members[i] {
                let s = &mut self.score[x as usize];
                *s = (*s - w).max(0.0);
            }
        }
        self.score[u as usize] = 0.0;
        self.eligible[u as usize] = false;
        gained
    }

    /// `k` rounds of pick-the-best-then-discount. Ties go to the smaller id;
    /// once every score is zero the remaining eligible nodes follow by id.
    pub fn greedy(&mut self, k: usize) -> Result<(Vec<NodeId>, Vec<f64>)> {
        let available = self.eligible.iter().filter(|e| **e).count();
        if k > available {
            return Err(Error::BudgetTooLarge { requested: k, available });
        }
        // scores only decrease, so stale entries are upper bounds
        let mut heap: BinaryHeap<Entry> = (0..self.score.len() as NodeId)
            .filter(|&u| self.eligible[u as usize])
            .map(|u| Entry(self.score[u as usize], u))
            .collect();
        let mut seeds = Vec::with_capacity(k);
        let mut gains = Vec::with_capacity(k);
        while seeds.len() < k {
            let Entry(s, u) = heap.pop().expect("enough eligible nodes");
            if !self.eligible[u as usize] {
                continue;
            }
            let current = self.score[u as usize];
            if current != s {
                heap.push(Entry(current, u));
                continue;
            }
            gains.push(self.take(u));
            seeds.push(u);
        }
        Ok((seeds, gains))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // u = 0, w = 1, heads v1 = 2, v2 = 3, v3 = 4
    fn example() -> RescueState {
        RescueState::new(vec![true; 5], vec![(0.6, vec![0]), (0.3, vec![0, 1]), (0.0, vec![1])]).unwrap()
    }

    #[test]
    fn scores_are_weighted_counts() {
        let s = example();
        assert!((s.score(0) - 0.9).abs() < 1e-12);
        assert!((s.score(1) - 0.3).abs() < 1e-12);
        assert_eq!(s.coverage(1), &[1, 2]);
    }

    #[test]
    fn empty_pool() {
        let s = RescueState::new(vec![true; 3], vec![]).unwrap();
        assert_eq!(s.scores(), &[0.0; 3]);
    }

    #[test]
    fn cover_and_discount() {
        let mut s = example();
        let (seeds, gains) = s.greedy(2).unwrap();
        assert_eq!(seeds, vec![0, 1]);
        assert!((gains[0] - 0.9).abs() < 1e-12);
        assert_eq!(gains[1], 0.0);
        assert_eq!(s.score(0), 0.0);
        assert_eq!(s.greedy(0).unwrap().0, Vec::<NodeId>::new());
    }

    #[test]
    fn budget_beyond_eligible() {
        let mut s = RescueState::new(vec![true, false], vec![]).unwrap();
        assert!(matches!(s.greedy(2), Err(Error::BudgetTooLarge { requested: 2, available: 1 })));
    }

    #[test]
    fn from_susceptibility() {
        let h = SusceptibilityList::from_values(vec![0.0, 0.5, 0.25], &[0], 10).unwrap();
        let raw = RRSet::from_layers(vec![vec![1], vec![0]], vec![vec![0], vec![0]], &[0]).unwrap();
        let mut sample = raw.clone();
        sample.candidates = vec![1];
        let s = build_rescue_state(&[sample.clone()], &h).unwrap();
        assert_eq!(s.score(1), 0.5);
        sample.head = 0;
        assert!(matches!(build_rescue_state(&[sample], &h), Err(Error::MissingSusceptibility(0))));
    }
}
