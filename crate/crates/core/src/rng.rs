//! The project-wide random number generator.
//!
//! All randomised operations draw from [`TuranRng`], a ChaCha8 stream seeded
//! from a `u64`. Outputs are therefore reproducible across platforms and
//! releases of this crate for a fixed seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TuranRng = ChaCha8Rng;

pub fn from_seed(seed: u64) -> TuranRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent child seed. Used to split one user seed across
/// sweep cells, retry attempts and recursion levels.
pub fn derive(seed: u64, stream: u64) -> u64 {
    // splitmix64 finaliser over the pair
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
