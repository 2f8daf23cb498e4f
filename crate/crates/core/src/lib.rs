//! Time-critical adversarial influence blocking.
//!
//! A negative cascade spreads from known seeds for at most `tau` synchronous
//! rounds; the task is to choose `k` positive seeds that spread at the same
//! time and leave as few nodes negative as possible. The crate provides the
//! competitive diffusion model, forward and reverse samplers, the
//! bidirectional sampling selector with its baselines, and exact
//! small-instance oracles.

pub mod diffusion;
pub mod error;
pub mod eval;
pub mod graph;
pub mod rng;
pub mod sampling;
pub mod selection;

pub use diffusion::{DiffusionOutcome, Polarity, Priority, TieRule, Timestep, UNBOUNDED};
pub use error::{Error, Result};
pub use eval::{SigmaEstimate, SubmodularityReport};
pub use graph::{Edge, EdgeId, Graph, NodeId, WeightScheme};
pub use sampling::{RRSet, SusceptibilityList};
pub use selection::{NegativeMethod, SelectionResult};
