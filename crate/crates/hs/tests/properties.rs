mod common;

use common::{random_hermitian, random_operator};
use mourre_core::linalg;
use mourre_hs::{ad_iter, commutator_expand, hs_apply, QuadratureConfig};
use mourre_symbols::{almost_analytic, lorentzian, make_cutoff_family};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ad_is_linear(seed in 0u64..1000, alpha in -3.0f64..3.0, p in 1usize..4) {
        let a = random_hermitian(5, seed);
        let b1 = random_hermitian(5, seed + 1);
        let b2 = random_hermitian(5, seed + 2);
        let combo = &b1.mapv(|v| v * alpha) + &b2;
        let lhs = ad_iter(&combo, &a, p).unwrap();
        let rhs = &ad_iter(&b1, &a, p).unwrap().mapv(|v| v * alpha) + &ad_iter(&b2, &a, p).unwrap();
        prop_assert!(linalg::max_abs_diff(&lhs, &rhs) <= 1e-10 * linalg::max_abs(&rhs).max(1.0));
    }

    #[test]
    fn ad_odd_in_a(seed in 0u64..1000, p in 1usize..5) {
        let a = random_hermitian(4, seed);
        let b = random_hermitian(4, seed + 7);
        let plus = ad_iter(&b, &a, p).unwrap();
        let minus = ad_iter(&b, &a.mapv(|v| -v), p).unwrap();
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(plus, minus.mapv(|v| v * sign));
    }

    #[test]
    fn expansion_identity_holds(seed in 0u64..1000, k in 1usize..4, n in 2usize..8) {
        let a = random_operator(n, seed);
        let b = random_hermitian(n, seed + 3);
        let r = commutator_expand(&b, &a, &lorentzian(), k, None).unwrap();
        prop_assert!(r.identity_residual() <= 1e-8 * linalg::frobenius(&r.commutator).max(1e-300));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn hs_apply_matches_oracle(seed in 0u64..1000, n in 1usize..12) {
        let fam = make_cutoff_family();
        let a = random_operator(n, seed);
        let ext = almost_analytic(&fam.chi, 4, &fam).unwrap();
        let q = QuadratureConfig::default();
        let out = hs_apply(&a, &ext, &q).unwrap();
        let oracle = a.apply_function(|t| fam.chi.value(t)).unwrap();
        let err = linalg::rel_frobenius_diff(out.operator.matrix(), oracle.matrix());
        prop_assert!(err <= q.target_rel_error.max(out.certificate.total()));
    }
}
