use mourre_symbols::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_of_unity_everywhere(t in -50.0f64..50.0) {
        let f = make_cutoff_family();
        let sum = f.chi.value(t) + f.chi_tilde_plus.value(t) + f.chi_tilde_minus.value(t);
        prop_assert!((sum - 1.0).abs() <= 1e-14);
        prop_assert!((0.0..=1.0).contains(&f.chi.value(t)));
    }

    #[test]
    fn scaling_identity(t in -3.0f64..3.0, r in 1.0f64..200.0) {
        let f = make_cutoff_family();
        let cr = scale_symbol(&f.chi, r).unwrap();
        prop_assert!((cr.value(r * t) - f.chi.value(t)).abs() <= 1e-14);
    }

    #[test]
    fn psi_nonnegative_and_supported(t in -300.0f64..300.0, s in 0.51f64..0.99, r in 1.0f64..64.0) {
        let f = make_cutoff_family();
        let pp = make_phi_psi(s, r, &f).unwrap();
        let p = pp.psi_r.value(t);
        prop_assert!(p >= 0.0);
        if t.abs() < r || t.abs() > 2.0 * r {
            prop_assert_eq!(p, 0.0);
        }
        prop_assert!((pp.sqrt_psi_r.value(t).powi(2) - p).abs() <= 1e-10);
    }

    #[test]
    fn dbar_within_certificate(x in -10.0f64..10.0, u in 0.0f64..1.0) {
        let f = make_cutoff_family();
        let e = almost_analytic(&lorentzian(), 2, &f).unwrap();
        let y = u * e.c2() * mourre_core::japanese(x);
        // Off-grid points may exceed the on-grid supremum slightly.
        prop_assert!(e.dbar(x, y).norm() <= 1.05 * e.bound(x, y) + 1e-300);
    }
}
