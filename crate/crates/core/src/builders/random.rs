//! Seeded random mixed complexes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::MixedComplex;
use crate::linear::{inverse, Field, Matrix, Scalar};

fn random_scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.random_range(-3..=3)),
        Field::Prime(p) => field.from_i64(rng.random_range(0..p) as i64),
    }
}

/// `L U` with unit-diagonal random triangular factors, and its inverse.
fn random_invertible(field: Field, n: usize, rng: &mut impl Rng) -> (Matrix, Matrix) {
    let mut l = Matrix::identity(field, n);
    let mut u = Matrix::identity(field, n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, random_scalar(field, rng));
            u.set(j, i, random_scalar(field, rng));
        }
    }
    let p = &l * &u;
    let inv = inverse(&p).expect("unit triangular factors are invertible");
    (p, inv)
}

/// Ranks `r_1..r_N` of a square-zero map lowering degree with
/// `r_n + r_{n+1} <= dims[n]`.
fn random_ranks(dims: &[usize], rng: &mut impl Rng) -> Vec<usize> {
    let mut ranks = vec![0; dims.len()];
    for n in 1..dims.len() {
        let max = dims[n].min(dims[n - 1] - ranks[n - 1]);
        ranks[n] = rng.random_range(max / 2..=max);
    }
    ranks
}

/// Square-zero maps `m_n: k^{dims[n]} -> k^{dims[n-1]}` for `n = 1..N`:
/// the last `r_n` coordinates go identically to the first `r_n`, conjugated
/// by random invertible matrices.
fn random_differential(field: Field, dims: &[usize], rng: &mut impl Rng) -> Vec<Matrix> {
    let ranks = random_ranks(dims, rng);
    let frames: Vec<(Matrix, Matrix)> = dims
        .iter()
        .map(|&n| random_invertible(field, n, rng))
        .collect();
    (1..dims.len())
        .map(|n| {
            let mut t = Matrix::zeros(field, dims[n - 1], dims[n]);
            let r = ranks[n];
            for i in 0..r {
                t.set(i, dims[n] - r + i, field.one());
            }
            &(&frames[n - 1].0 * &t) * &frames[n].1
        })
        .collect()
}

/// A random mixed complex with the given dimensions; identical seeds give
/// identical complexes.
pub fn random_mixed(field: Field, dims: &[usize], seed: u64) -> MixedComplex {
    assert!(!dims.is_empty(), "need at least one degree");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = random_differential(field, dims, &mut rng);
    // d on the reversed grading is again a lowering differential.
    let reversed: Vec<usize> = dims.iter().rev().copied().collect();
    // Entry i maps degree top-1-i up to degree top-i.
    let mut d = random_differential(field, &reversed, &mut rng);
    d.reverse();
    MixedComplex::new(field, dims.to_vec(), b, d)
        .expect("square-zero by construction")
        .with_name(format!("random(seed={seed}, dims={dims:?})"))
}
