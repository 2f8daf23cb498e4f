use rand::Rng;

use crate::graph::EdgeId;
use crate::rng::{mix64, unit_f64};

/// Decides whether edge `e` with probability `p` is live.
///
/// A diffusion queries each edge at most once, so a source that draws fresh
/// randomness on every call is a valid independent-cascade sampler.
pub trait Coins {
    fn is_live(&mut self, e: EdgeId, p: f64) -> bool;
}

/// Fresh Bernoulli draw per query.
pub struct RngCoins<'a, R: ?Sized>(pub &'a mut R);

impl<R: Rng + ?Sized> Coins for RngCoins<'_, R> {
    #[inline]
    fn is_live(&mut self, _e: EdgeId, p: f64) -> bool {
        self.0.gen::<f64>() < p
    }
}

/// Stateless coins of one possible world: edge `e` is live iff a hash of
/// `(seed, e)` falls below `p`. Re-running any diffusion with the same seed
/// sees the same world, which is what paired estimators need.
#[derive(Clone, Copy, Debug)]
pub struct WorldCoins {
    seed: u64,
}

impl WorldCoins {
    pub fn new(seed: u64) -> WorldCoins {
        WorldCoins { seed: mix64(seed) }
    }

    #[inline]
    pub fn live(&self, e: EdgeId, p: f64) -> bool {
        let h = mix64(self.seed ^ (e as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        unit_f64(h) < p
    }
}

impl Coins for WorldCoins {
    #[inline]
    fn is_live(&mut self, e: EdgeId, p: f64) -> bool {
        self.live(e, p)
    }
}

/// Explicit live flags indexed by edge id.
pub struct LiveSet<'a>(pub &'a [bool]);

impl Coins for LiveSet<'_> {
    #[inline]
    fn is_live(&mut self, e: EdgeId, _p: f64) -> bool {
        self.0[e as usize]
    }
}

impl<F: FnMut(EdgeId, f64) -> bool> Coins for F {
    #[inline]
    fn is_live(&mut self, e: EdgeId, p: f64) -> bool {
        self(e, p)
    }
}
