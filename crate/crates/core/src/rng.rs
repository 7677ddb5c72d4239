//! Seed-derived random streams.
//!
//! Every independent unit of stochastic work (an ant in an iteration, a
//! chunk of Monte-Carlo missions) draws from its own ChaCha8 stream whose
//! seed is a SplitMix64 hash of the master seed and the unit's coordinates.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Stream = ChaCha8Rng;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hashes a master seed with a path of coordinates into a stream seed.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(master), |h, &c| splitmix64(h ^ splitmix64(c)))
}

pub fn stream(master: u64, path: &[u64]) -> Stream {
    ChaCha8Rng::seed_from_u64(derive_seed(master, path))
}
