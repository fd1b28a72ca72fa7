mod common;

use common::random_hermitian;
use mourre_core::linalg::{self, c};
use mourre_core::matrix_io::{parse_matrix, write_matrix};
use mourre_core::{spectral_projection, weighted_resolvent_norm, RealInterval};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectral_invariants(n in 1usize..24, seed in any::<u64>()) {
        let h = random_hermitian(n, seed);
        let s = h.spectral().unwrap();
        prop_assert!(s.orthonormality_error() <= 1e-10);
        prop_assert!(s.reconstruction_error(&h) <= 1e-10);
        prop_assert!(s.residual(&h) <= 1e-9 * h.norm().unwrap().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn projections_are_orthogonal(n in 1usize..20, seed in any::<u64>(), lo in -2.0f64..1.0, w in 0.0f64..3.0) {
        let h = random_hermitian(n, seed);
        let p = spectral_projection(h.spectral().unwrap(), &RealInterval::closed(lo, lo + w).unwrap());
        let (idem, herm, tr) = p.invariant_errors();
        prop_assert!(idem <= 1e-10 && herm <= 1e-10 && tr <= 1e-8);
        let commutes = linalg::max_abs(&linalg::commutator(h.matrix(), &p.matrix));
        prop_assert!(commutes <= 1e-10);
    }

    #[test]
    fn weights_only_shrink_the_resolvent(n in 1usize..16, s1 in any::<u64>(), s2 in any::<u64>(), s in 0.0f64..2.0, x in -2.0f64..2.0, y in 0.01f64..1.0) {
        let h = random_hermitian(n, s1);
        let a = random_hermitian(n, s2);
        let z = c(x, y);
        let plain = weighted_resolvent_norm(&h, a.spectral().unwrap(), z, 0.0, None).unwrap();
        let weighted = weighted_resolvent_norm(&h, a.spectral().unwrap(), z, s, None).unwrap();
        prop_assert!(weighted <= plain * (1.0 + 1e-12));
        prop_assert!(plain <= 1.0 / y * (1.0 + 1e-12));
    }

    #[test]
    fn matrix_text_round_trips(n in 1usize..12, seed in any::<u64>()) {
        let m = random_hermitian(n, seed).into_matrix().mapv(|v| v * c(1e-7, 3e5));
        prop_assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn membership_is_deterministic(x in -2.0f64..3.0, tol in 0.0f64..0.1, cl in any::<bool>(), ch in any::<bool>()) {
        let i = RealInterval::new(0.0, 1.0, cl, ch, tol).unwrap();
        prop_assert_eq!(i.contains(x), i.contains(x));
        if x > tol && x < 1.0 - tol {
            prop_assert!(i.contains(x));
        }
        if x < -tol || x > 1.0 + tol {
            prop_assert!(!i.contains(x));
        }
    }
}
