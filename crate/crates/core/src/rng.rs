//! Seeded randomness.
//!
//! Every randomized routine takes an explicit `u64` seed and draws from a
//! SplitMix64 stream, which is portable and bit-reproducible. Independent
//! sub-streams (per trial, per phase) are derived with [`derive_seed`].

use rand::SeedableRng;
pub use rand_xoshiro::SplitMix64;

pub fn stream(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Seed of the `index`-th sub-stream of `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
