#![allow(dead_code)]

use mourre_core::{CMat, SelfAdjointOperator, C64};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Hermitian matrix with entries uniform in the unit square.
pub fn random_hermitian(n: usize, seed: u64) -> CMat {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut m = CMat::zeros((n, n));
    for i in 0..n {
        m[(i, i)] = C64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in 0..i {
            let v = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    m
}

pub fn random_operator(n: usize, seed: u64) -> SelfAdjointOperator {
    SelfAdjointOperator::hermitian(random_hermitian(n, seed))
}

pub fn real_matrix(rows: &[&[f64]]) -> CMat {
    let n = rows.len();
    CMat::from_shape_fn((n, rows[0].len()), |(i, j)| C64::new(rows[i][j], 0.0))
}

/// Random Hermitian matrix rescaled so its spectral radius is about 8,
/// wide enough that cutoffs at scale 4 act nontrivially.
pub fn spread_operator(n: usize, seed: u64) -> SelfAdjointOperator {
    let scale = 5.0 / (n as f64).sqrt();
    SelfAdjointOperator::hermitian(random_hermitian(n, seed).mapv(|v| v * scale))
}
