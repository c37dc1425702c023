//! Seeded random streams. Every sampling loop derives one stream per trial
//! from `(seed, trial)` so serial and parallel sweeps see the same draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TrialRng = ChaCha8Rng;

pub fn rng_for(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Stream for a named sub-sweep, so different checks sharing a seed do not
/// reuse each other's draws.
pub fn rng_for_tagged(seed: u64, tag: &str, trial: u64) -> TrialRng {
    // FNV-1a over the tag keeps this stable across platforms and releases.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    rng_for(seed ^ h, trial)
}
