//! Deterministic stream derivation for parallel Monte Carlo work.
//!
//! Every stochastic routine takes a caller-owned `Rng`. Routines that fan out
//! across rayon draw one `u64` master from it and derive an independent
//! ChaCha stream per work item, so results never depend on thread count or
//! scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent stream `index` under `master`.
pub fn stream(master: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng
}

/// Draws a fresh master seed from `rng`.
pub fn master_seed<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    rng.gen()
}

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Uniform in `[0, 1)` from the top 53 bits.
#[inline]
pub fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Splits `total` work items into contiguous batches of at most `batch`.
pub(crate) fn batches(total: usize, batch: usize) -> impl Iterator<Item = (usize, usize)> + Clone {
    let batch = batch.max(1);
    (0..total.div_ceil(batch)).map(move |b| (b * batch, ((b + 1) * batch).min(total)))
}
