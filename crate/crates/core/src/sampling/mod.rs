//! Forward susceptibility estimation, reverse reachable sampling with
//! negative-seed stopping, tie-rule pruning and sample-count formulas.

mod budget;
mod fis;
mod prune;
mod ris;

pub use budget::{fis_sample_count, ris_sample_counts, SampleBudget};
pub use fis::{fis, SusceptibilityList};
pub use prune::prune_rr;
pub use ris::{ris_sample, ris_sample_with, RRSet, ReverseSampler};
