//! Reproducible random streams.
//!
//! Every draw in the crate comes from ChaCha8, a counter-based generator. A
//! replica's stream is `stream(seed, replica)`: the key is expanded from the
//! 64-bit seed and the replica index selects the ChaCha stream, so replica
//! `i` sees the same numbers no matter which thread generates it or in what
//! order replicas are visited.
//!
//! Gaussian variates use the ziggurat transform of `rand_distr::StandardNormal`
//! applied to that stream; the transform is fixed by the pinned crate version.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type StreamRng = ChaCha8Rng;

/// Generator for replica `replica` derived from `seed`.
pub fn stream(seed: u64, replica: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replica);
    rng
}

/// Fills `out` with independent standard normal variates.
pub fn fill_standard_normal<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    for x in out.iter_mut() {
        *x = rng.sample(StandardNormal);
    }
}
