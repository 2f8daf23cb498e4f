use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diffusion::{normalize_seeds, RngCoins, Simulator, TieRule, Timestep};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng;

const BATCH: usize = 256;

/// Estimated probability that each non-seed node is reached by the negative
/// cascade alone.
#[derive(Clone, Debug, PartialEq)]
pub struct SusceptibilityList {
    values: Vec<f64>,
    negative: Vec<bool>,
    phi: usize,
}

impl SusceptibilityList {
    /// Wraps externally supplied values; entries of `neg_seeds` are dropped.
    pub fn from_values(values: Vec<f64>, neg_seeds: &[NodeId], phi: usize) -> Result<SusceptibilityList> {
        let mut negative = vec![false; values.len()];
        for &s in neg_seeds {
            *negative.get_mut(s as usize).ok_or(Error::NodeOutOfRange(s))? = true;
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidParameter(format!("susceptibility {v} outside [0, 1]")));
        }
        Ok(SusceptibilityList { values, negative, phi })
    }

    /// `None` for negative seeds and unknown nodes.
    pub fn get(&self, v: NodeId) -> Option<f64> {
        match self.negative.get(v as usize) {
            Some(false) => Some(self.values[v as usize]),
            _ => None,
        }
    }

    /// Number of graph nodes covered, seeds included.
    pub fn node_count(&self) -> usize {
        self.values.len()
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn len(&self) -> usize {
        self.negative.iter().filter(|n| !**n).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(v, _)| !self.negative[*v])
            .map(|(v, &h)| (v as NodeId, h))
    }
}

impl Serialize for SusceptibilityList {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            phi: usize,
            h: BTreeMap<NodeId, f64>,
        }
        Repr { phi: self.phi, h: self.iter().collect() }.serialize(s)
    }
}

/// Forward influence sampling: `phi` time-bounded diffusions from the
/// negative seeds; `H(v)` is the fraction of runs that activate `v`.
pub fn fis<R: Rng + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    phi: usize,
    tau: Timestep,
    rng: &mut R,
) -> Result<SusceptibilityList> {
    let seeds = normalize_seeds(g, neg_seeds)?;
    if seeds.is_empty() {
        return Err(Error::EmptySeeds);
    }
    if phi == 0 {
        return Err(Error::InvalidParameter("phi must be at least 1".into()));
    }
    let master = rng::master_seed(rng);
    let ranges: Vec<_> = rng::batches(phi, BATCH).collect();
    let counts = ranges
        .into_par_iter()
        .enumerate()
        .map(|(b, (lo, hi))| {
            let mut stream = rng::stream(master, b as u64);
            let mut sim = Simulator::new(g);
            let mut counts = vec![0u32; g.n()];
            for _ in lo..hi {
                sim.run(&seeds, &[], tau, &TieRule::NegativeDominance, &mut RngCoins(&mut stream));
                for &u in sim.activated() {
                    counts[u as usize] += 1;
                }
            }
            counts
        })
        .reduce(
            || vec![0u32; g.n()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut negative = vec![false; g.n()];
    for &s in &seeds {
        negative[s as usize] = true;
    }
    let values = counts
        .into_iter()
        .enumerate()
        .map(|(v, c)| if negative[v] { 0.0 } else { c as f64 / phi as f64 })
        .collect();
    Ok(SusceptibilityList { values, negative, phi })
}
