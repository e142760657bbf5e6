//! Seeded random streams.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`] keyed by a
//! 64-bit master seed (`seed_from_u64`). Independent work items (replicates,
//! strategies, grid points) get their own ChaCha stream: the stream id is the
//! SplitMix64 fold of the item's integer labels. The derivation depends only
//! on `(master_seed, labels)`, so results do not depend on thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Name recorded in output metadata.
pub const RNG_NAME: &str =
    "ChaCha8Rng (rand_chacha 0.9); key = seed_from_u64(master); stream = splitmix64 fold of labels";

/// Domain tags keep different consumers of one master seed apart.
pub mod domain {
    pub const GENERATE: u64 = 1;
    pub const SELECT: u64 = 2;
    pub const ESTIMATE: u64 = 3;
    pub const CURVE: u64 = 4;
    pub const SIR: u64 = 5;
    pub const COMPARE_SELECT: u64 = 6;
    pub const COMPARE_SIR: u64 = 7;
    pub const SWEEP: u64 = 8;
    pub const REWIRE: u64 = 9;
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds labels into a single 64-bit value.
pub fn fold(labels: &[u64]) -> u64 {
    labels
        .iter()
        .fold(0x6A09_E667_F3BC_C908, |acc, &l| splitmix64(acc ^ splitmix64(l)))
}

/// The generator for one work item.
pub fn stream(master_seed: u64, labels: &[u64]) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(fold(labels));
    rng
}

/// A derived 64-bit seed, for handing to APIs that take a seed rather than a generator.
pub fn derive_seed(master_seed: u64, labels: &[u64]) -> u64 {
    splitmix64(master_seed ^ fold(labels))
}
