//! Seeded inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scatsel_core::metrics::ScoreVector;
use scatsel_core::Dataset;

pub fn uniform_points(n: usize, seed: u64) -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| [rng.random(), rng.random()]).collect()
}

/// `m` uniform columns of `n` rows with two classes.
pub fn uniform_dataset(m: usize, n: usize, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols = (0..m).map(|_| (0..n).map(|_| rng.random::<f64>()).collect()).collect();
    let labels: Vec<&str> = (0..n).map(|_| if rng.random_bool(0.5) { "a" } else { "b" }).collect();
    Dataset::new((0..m).map(|i| format!("d{i}")).collect(), cols, &labels).expect("valid dataset")
}

pub fn random_scores(n: usize, seed: u64) -> Vec<ScoreVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| ScoreVector::new(rng.random(), rng.random(), rng.random(), rng.random())).collect()
}
