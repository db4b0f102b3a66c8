//! Fixed inputs shared by the benchmarks in `benches/`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use projquad_core::BitMatrix;

/// A reproducible random `rows x cols` matrix with the given density of ones.
pub fn random_matrix(rows: usize, cols: usize, density: f64, seed: u64) -> BitMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BitMatrix::from_fn(rows, cols, |_, _| rng.gen_bool(density))
}
