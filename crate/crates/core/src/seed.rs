//! Seed derivation for reproducible parallel work.
//!
//! Every random stream in the crate is a `ChaCha8Rng` seeded from a 64-bit
//! value. Child streams are derived from a master seed and an index with a
//! SplitMix64 finalizer, so results never depend on which worker ran a task.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The random generator used throughout the crate.
pub type Rng = ChaCha8Rng;

/// Domain tags that keep independent streams derived from one seed apart.
pub mod tag {
    pub const MONTE_CARLO: u64 = 0x6b73_5f73_696d;
    pub const BOOTSTRAP: u64 = 0x626f_6f74;
    pub const SIMULATION: u64 = 0x7369_6d75;
    pub const MIXTURE_SELECT: u64 = 0x6d69_7873;
    pub const SUBJECT: u64 = 0x7375_626a;
    pub const FAMILY: u64 = 0x6661_6d69;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives the seed of child stream `index` under `tag` from `master`.
pub fn derive(master: u64, tag: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(tag ^ splitmix64(index)))
}

/// Creates a generator from a seed.
pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
