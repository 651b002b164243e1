//! Fixtures shared by the benchmarks in `benches/`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mixhom_core::builders::{example1, exterior_algebra, ncforms_build};
use mixhom_core::{Field, Matrix, MixedComplex};

/// `rows x cols` matrix of rank at most `rank`, entries small integers.
pub fn low_rank_matrix(field: Field, rows: usize, cols: usize, rank: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |r: usize, c: usize| {
        Matrix::from_fn(field, r, c, |_, _| field.from_i64(rng.random_range(-3..=3)))
    };
    let a = draw(rows, rank);
    let b = draw(rank, cols);
    &a * &b
}

pub fn forms(top: usize) -> Arc<MixedComplex> {
    Arc::new(ncforms_build(&exterior_algebra(Field::Rationals), top).expect("valid algebra"))
}

pub fn quantum_plane(q: i64, top: usize) -> Arc<MixedComplex> {
    Arc::new(example1(&Field::Rationals.from_i64(q), top))
}
