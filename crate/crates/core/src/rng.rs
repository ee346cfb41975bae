//! Seeded random streams.
//!
//! Every simulation draws from ChaCha8 keyed by `seed_from_u64(seed)`; work
//! is split into fixed-size blocks and block `b` uses ChaCha stream `b`.
//! Results therefore depend only on `(seed, block layout)`, never on how
//! many threads run the blocks. Standard normals come from
//! `rand_distr::StandardNormal` (ziggurat method).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Number of paths simulated per independent stream.
pub const BLOCK_PATHS: usize = 8192;

pub type StreamRng = ChaCha8Rng;

/// Generator for substream `index` of `seed`.
pub fn stream(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[inline]
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Splits `n` items into consecutive `(block index, start, len)` chunks of
/// at most [`BLOCK_PATHS`].
pub fn blocks(n: usize) -> impl Iterator<Item = (u64, usize, usize)> {
    (0..n.div_ceil(BLOCK_PATHS)).map(move |b| {
        let start = b * BLOCK_PATHS;
        (b as u64, start, BLOCK_PATHS.min(n - start))
    })
}
