use mourre_core::linalg::c;
use mourre_core::{CMat, SelfAdjointOperator};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn random_hermitian(n: usize, seed: u64) -> SelfAdjointOperator {
    let mut rng = StdRng::seed_from_u64(seed);
    let m = CMat::from_shape_fn((n, n), |_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    SelfAdjointOperator::hermitian(m)
}
