use mourre_core::linalg::{self, c, CVec};
use mourre_core::SelfAdjointOperator;
use mourre_models::rng::Lcg;
use mourre_models::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lattice_pair_is_hermitian_with_bounded_band(n in 8usize..48, periodic in any::<bool>()) {
        let flavor = if periodic { LatticeFlavor::Circulant } else { LatticeFlavor::Dirichlet };
        let m = lattice_model(n, flavor).unwrap();
        let a = m.a.matrix();
        prop_assert_eq!(linalg::max_abs_diff(a, &linalg::dagger(&a.view())), 0.0);
        let ev = &m.h.spectral().unwrap().eigenvalues;
        prop_assert!(ev.iter().all(|&l| l > -1e-14 && l <= 0.8 + 1e-14));
    }

    #[test]
    fn rank_one_identity_for_random_inputs(seed in any::<u64>(), n in 2usize..10, m in 1usize..6) {
        let m = m.min(n);
        let mut rng = Lcg::new(seed);
        let a1 = SelfAdjointOperator::hermitian(mourre_core::CMat::from_shape_fn((n, n), |_| c(rng.symmetric(), rng.symmetric())));
        let g: Vec<CVec> = (0..m).map(|_| CVec::from_iter((0..n).map(|_| c(rng.symmetric(), rng.symmetric())))).collect();
        let alpha: Vec<f64> = (0..m).map(|_| rng.symmetric()).collect();
        match rank_one_sum(&a1, &g, &alpha, None, None) {
            Ok(r) => prop_assert!(r.commutator_identity_residual <= 1e-12),
            Err(ModelError::DependentVectors(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
