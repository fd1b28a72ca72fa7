use mourre_core::japanese;
use mourre_symbols::*;

#[test]
fn h_exceeds_the_drift_supremum() {
    for s in [0.55, 0.6, 0.75, 0.9, 0.99] {
        let h = h_constant(s);
        let sup = (0..=200_000).map(|i| i as f64 * 2.5e-4).map(|t| t.abs() * japanese(t).powf(-2.0 * s)).fold(0.0, f64::max);
        assert!(h > sup, "s={s}");
        assert!(h <= 1.0101 * sup, "s={s}");
    }
}

#[test]
fn bad_exponent_rejected() {
    let f = make_cutoff_family();
    for s in [0.5, 1.0, 0.2, 1.3] {
        assert_eq!(make_phi_psi(s, 4.0, &f).unwrap_err(), SymbolError::BadExponent(s));
    }
    assert!(matches!(make_phi_psi(0.6, 0.5, &f), Err(SymbolError::BadScale(_))));
}

#[test]
fn psi_vanishes_near_zero_and_is_nonnegative() {
    let f = make_cutoff_family();
    for r in [1.0, 4.0, 8.0, 32.0] {
        let pp = make_phi_psi(0.6, r, &f).unwrap();
        assert_eq!(pp.psi_r.value(0.0), 0.0);
        for t in probe_grid(r) {
            let p = pp.psi_r.value(t);
            assert!(p >= 0.0, "R={r} t={t}");
            if t.abs() < r || t.abs() > 2.0 * r {
                assert_eq!(p, 0.0, "R={r} t={t}");
            }
        }
    }
}

#[test]
fn sqrt_psi_squares_back() {
    let f = make_cutoff_family();
    for s in [0.6, 0.8] {
        let pp = make_phi_psi(s, 8.0, &f).unwrap();
        let worst = probe_grid(8.0)
            .into_iter()
            .map(|t| (pp.sqrt_psi_r.value(t).powi(2) - pp.psi_r.value(t)).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-10, "{worst:e}");
    }
}

#[test]
fn derivative_form_is_twice_the_product_form() {
    let f = make_cutoff_family();
    let pp = make_phi_psi(0.6, 8.0, &f).unwrap();
    let worst = probe_grid(8.0)
        .into_iter()
        .map(|t| (pp.derivative_form(t) - 2.0 * pp.psi_r.value(t)).abs())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-9, "{worst:e}");
}

#[test]
fn phi_matches_its_definition() {
    let f = make_cutoff_family();
    let (s, r) = (0.7, 5.0);
    let pp = make_phi_psi(s, r, &f).unwrap();
    for t in [-30.0, -9.0, -6.0, 0.0, 3.0, 5.5, 7.5, 12.0] {
        let drift = t * japanese(t).powf(-2.0 * s);
        let p = f.chi_tilde_plus.value(t / r);
        let m = f.chi_tilde_minus.value(t / r);
        let want = p * p * (pp.h - drift) + m * m * (-pp.h - drift);
        assert!((pp.phi_r.value(t) - want).abs() <= 1e-14, "t={t}");
    }
}

#[test]
fn sqrt_psi_bounded_in_s0_uniformly() {
    let f = make_cutoff_family();
    for k in 0..=3 {
        let vals: Vec<f64> = [1.0, 4.0, 16.0, 64.0]
            .iter()
            .map(|&r| make_phi_psi(0.7, r, &f).unwrap().sqrt_psi_r.scaled_seminorm(k, &probe_grid(r)))
            .collect();
        // Bounded means no growth in R: the largest scales set the bound.
        let hi = vals.iter().cloned().fold(0.0, f64::max);
        let last = vals[vals.len() - 1];
        assert!(hi.is_finite() && hi <= 1.5 * last, "k={k} {vals:?}");
        assert!(last <= 1.2 * vals[vals.len() - 2], "k={k} {vals:?}");
    }
}

#[test]
fn registry_resolves_names() {
    let f = make_cutoff_family();
    let phi = symbol_from_registry("phi_R{s=0.6,R=8}", &f).unwrap();
    assert_eq!(phi.value(20.0), make_phi_psi(0.6, 8.0, &f).unwrap().phi_r.value(20.0));
    let w = symbol_from_registry("weight{s=0.7}", &f).unwrap();
    assert!((w.value(2.0) - 5f64.powf(-0.35)).abs() <= 1e-15);
    let c = symbol_from_registry("chi{R=2}", &f).unwrap();
    assert_eq!(c.value(3.0), f.chi.value(1.5));
    let b = symbol_from_registry("bump{center=1,width=0.5}", &f).unwrap();
    assert_eq!(b.value(1.4), 1.0);
    assert_eq!(b.value(2.1), 0.0);
    for name in SYMBOL_NAMES_FOR_TEST {
        assert!(symbol_from_registry(name, &f).is_ok(), "{name}");
    }
    assert!(matches!(symbol_from_registry("nope", &f), Err(SymbolError::UnknownSymbol(_))));
    assert!(matches!(symbol_from_registry("weight", &f), Err(SymbolError::BadParameter(_))));
    assert!(matches!(symbol_from_registry("chi{s=1}", &f), Err(SymbolError::BadParameter(_))));
}

const SYMBOL_NAMES_FOR_TEST: &[&str] = &[
    "identity",
    "chi",
    "chi_tilde",
    "lorentzian",
    "japanese{rho=0.5}",
    "tail{rho=0.5,R=4}",
    "psi_R{s=0.7,R=2}",
    "sqrt_psi_R{s=0.7,R=2}",
];
