//! Positive-seed selectors (BIS and baselines) and negative-seed selectors.

mod baselines;
mod bis;
mod greedy;
mod negative;
mod rescue;

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::graph::NodeId;

pub use baselines::{select_degree, select_forward};
pub use bis::{
    bis_select, bis_select_with, bis_select_with_hazard, pruned_samples, select_reverse, weighted_samples, zeta_for_total, Allocation,
    MAX_DRAW_FACTOR,
};
pub use greedy::{lazy_greedy, lazy_greedy_with_initial, plain_greedy, select_greedy_celf, GreedyTrace, WorldSetGain};
pub use negative::{select_negative_seeds, NegativeMethod};
pub use rescue::{build_rescue_state, RescueState};

/// Ordered seed list with the score each pick had when it was taken.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    pub method: String,
    pub seeds: Vec<NodeId>,
    #[serde(rename = "marginals")]
    pub marginal_scores: Vec<f64>,
    #[serde(rename = "ms", with = "millis")]
    pub elapsed: Duration,
}

impl SelectionResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

mod millis {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64() * 1e3)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let ms = f64::deserialize(d)?;
        Duration::try_from_secs_f64(ms / 1e3).map_err(serde::de::Error::custom)
    }
}

/// Checks `k` against the number of nodes outside the negative seeds.
pub(crate) fn check_budget(n: usize, negatives: usize, k: usize) -> crate::Result<()> {
    let available = n - negatives;
    if k > available {
        return Err(crate::Error::BudgetTooLarge { requested: k, available });
    }
    Ok(())
}
