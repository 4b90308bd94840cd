//! Seeded inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dirhom_core::coeff::ratio;
use dirhom_core::{Bar, DissimilarityMatrix, PersistenceDiagram};

/// Asymmetric matrix with entries in `{0, 1/4, …, 4}`.
pub fn random_matrix(n: usize, seed: u64) -> DissimilarityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n).map(|_| (0..n).map(|_| ratio(rng.gen_range(0..=16), 4)).collect()).collect();
    DissimilarityMatrix::new(rows).expect("square by construction")
}

pub fn random_diagram(points: usize, seed: u64) -> PersistenceDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PersistenceDiagram::from_bars(
        1,
        (0..points).map(|_| {
            let b = ratio(rng.gen_range(0..100), 4);
            Bar::finite(b.clone(), b + ratio(rng.gen_range(1..40), 4))
        }),
    )
}
