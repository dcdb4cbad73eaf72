//! Shared inputs for the benchmarks.

use di4_core::checks::random_matrix;
use di4_core::IntMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A fixed batch of square integer matrices with entries in `[-r, r]`.
pub fn matrix_batch(count: usize, n: usize, r: i64, seed: u64) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_matrix(&mut rng, n, n, r))
        .collect()
}
