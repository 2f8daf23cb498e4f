use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diffusion::{check_disjoint, normalize_seeds, Simulator, TieRule, Timestep, WorldCoins};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng;

const BATCH: usize = 256;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.96;

/// Mean of the per-run reductions with its standard error and a normal 95%
/// interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub runs: usize,
    pub ci95: (f64, f64),
}

impl SigmaEstimate {
    /// Summary of integer per-run differences given their sum and sum of
    /// squares.
    fn from_sums(runs: usize, sum: i64, sum_sq: u64) -> SigmaEstimate {
        let r = runs as f64;
        let mean = sum as f64 / r;
        let std_error = if runs > 1 {
            // exact integer numerator avoids cancellation
            let num = runs as i128 * sum_sq as i128 - (sum as i128) * (sum as i128);
            let var = num.max(0) as f64 / (r * (r - 1.0));
            (var / r).sqrt()
        } else {
            0.0
        };
        SigmaEstimate { mean, std_error, runs, ci95: (mean - Z95 * std_error, mean + Z95 * std_error) }
    }

    pub fn overlaps(&self, other: &SigmaEstimate) -> bool {
        self.ci95.0 <= other.ci95.1 && other.ci95.0 <= self.ci95.1
    }
}

/// Paired Monte Carlo estimate of the reduction in negatives caused by
/// `pos_seeds`. Each run fixes one possible world and counts negatives with
/// and without the positive seeds in it.
pub fn estimate_sigma_minus<R: Rng + ?Sized>(
    g: &Graph,
    neg_seeds: &[NodeId],
    pos_seeds: &[NodeId],
    tau: Timestep,
    rule: &TieRule,
    runs: usize,
    rng: &mut R,
) -> Result<SigmaEstimate> {
    let neg = normalize_seeds(g, neg_seeds)?;
    let pos = normalize_seeds(g, pos_seeds)?;
    check_disjoint(&neg, &pos)?;
    rule.validate(g)?;
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be at least 1".into()));
    }
    let master = rng::master_seed(rng);
    let ranges: Vec<_> = rng::batches(runs, BATCH).collect();
    let (sum, sum_sq) = ranges
        .into_par_iter()
        .enumerate()
        .map(|(b, (lo, hi))| {
            let mut stream = rng::stream(master, b as u64);
            let mut sim = Simulator::new(g);
            let (mut s, mut sq) = (0i64, 0u64);
            for _ in lo..hi {
                let world = WorldCoins::new(stream.gen());
                let without = sim.run(&neg, &[], tau, rule, &mut world.clone()) as i64;
                let with = if pos.is_empty() { without } else { sim.run(&neg, &pos, tau, rule, &mut world.clone()) as i64 };
                let d = without - with;
                s += d;
                sq += (d * d) as u64;
            }
            (s, sq)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(SigmaEstimate::from_sums(runs, sum, sum_sq))
}
