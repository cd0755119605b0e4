//! Deterministic stream derivation. Every random stream in a run is keyed by
//! the master seed plus a tag and the indices that identify its owner, so
//! results never depend on how work is scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Stream = ChaCha8Rng;

pub(crate) const HOST: u64 = 0x686f_7374;
pub(crate) const THREAD: u64 = 0x7468_7264;
pub(crate) const COUPLE: u64 = 0x6370_6c65;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds a key path into a single 64-bit seed.
pub fn derive_seed(parts: &[u64]) -> u64 {
    parts.iter().fold(0x5851_f42d_4c95_7f2d, |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

pub fn stream(parts: &[u64]) -> Stream {
    ChaCha8Rng::seed_from_u64(derive_seed(parts))
}
