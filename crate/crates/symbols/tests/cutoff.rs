use mourre_symbols::*;

#[test]
fn chi_is_one_inside_and_zero_outside() {
    let f = make_cutoff_family();
    assert_eq!(f.chi.value(0.5), 1.0);
    assert_eq!(f.chi.value(3.0), 0.0);
    for t in [-1.0, -0.3, 0.0, 0.99, 1.0] {
        assert_eq!(f.chi.value(t), 1.0);
    }
    for t in [-7.0, -2.0, 2.0, 2.5] {
        for k in 0..=6 {
            assert_eq!(f.chi.eval(k, t), 0.0, "k={k} t={t}");
        }
    }
}

#[test]
fn partition_of_unity() {
    let f = make_cutoff_family();
    for t in [-5.0, -1.5, 0.0, 1.5, 5.0] {
        let sum = f.chi.value(t) + f.chi_tilde_plus.value(t) + f.chi_tilde_minus.value(t);
        assert!((sum - 1.0).abs() <= 1e-15, "t={t}");
    }
    for t in probe_grid(2.0) {
        let sum = f.chi.value(t) + f.chi_tilde_plus.value(t) + f.chi_tilde_minus.value(t);
        assert!((sum - 1.0).abs() <= 1e-14);
        assert!((f.chi_tilde.value(t) - (1.0 - f.chi.value(t))).abs() <= 1e-14);
    }
}

#[test]
fn tilde_pieces_live_on_their_half_lines() {
    let f = make_cutoff_family();
    for t in probe_grid(2.0) {
        if t < 1.0 {
            assert_eq!(f.chi_tilde_plus.value(t), 0.0);
        }
        if t > -1.0 {
            assert_eq!(f.chi_tilde_minus.value(t), 0.0);
        }
    }
}

#[test]
fn square_roots_square_back() {
    let f = make_cutoff_family();
    let mut worst = 0.0f64;
    for t in probe_grid(2.0) {
        for sigma in [1, -1] {
            let a = f.sqrt_chi_tilde_sigma(sigma).value(t);
            worst = worst.max((a * a - f.chi_tilde_sigma(sigma).value(t)).abs());
            let b = f.sqrt_sigma_chi_tilde_prime_sigma(sigma).value(t);
            worst = worst.max((b * b - sigma as f64 * f.chi_tilde_sigma(sigma).eval(1, t)).abs());
        }
    }
    assert!(worst <= 1e-12, "{worst:e}");
}

#[test]
fn support_hints_are_honoured() {
    let f = make_cutoff_family();
    for s in f.members() {
        let Some(sup) = s.support() else { continue };
        for t in probe_grid(4.0) {
            if !sup.contains(t) {
                for k in 0..=3 {
                    assert_eq!(s.eval(k, t), 0.0, "{} k={k} t={t}", s.name());
                }
            }
        }
    }
}

#[test]
fn derivatives_are_finite_to_high_order() {
    let f = make_cutoff_family();
    for s in f.members() {
        for t in probe_grid(2.0).into_iter().step_by(7) {
            for (k, d) in s.derivs(t, s.max_deriv()).into_iter().enumerate() {
                assert!(d.is_finite(), "{} k={k} t={t}", s.name());
            }
        }
    }
}

#[test]
fn scaling_identities() {
    let f = make_cutoff_family();
    let chi2 = scale_symbol(&f.chi, 2.0).unwrap();
    assert_eq!(chi2.value(3.0), f.chi.value(1.5));
    for r in [1.0, 3.0, 17.5] {
        let cr = scale_symbol(&f.chi, r).unwrap();
        for t in [-1.7, 0.2, 1.3, 1.9] {
            assert!((cr.value(r * t) - f.chi.value(t)).abs() <= 1e-15);
            let want = f.chi.eval(2, t) / (r * r);
            assert!((cr.eval(2, r * t) - want).abs() <= 1e-12 * want.abs().max(1.0));
        }
    }
    assert_eq!(scale_symbol(&f.chi, 0.5).unwrap_err(), SymbolError::BadScale(0.5));
}

#[test]
fn scaled_first_derivative_is_uniformly_bounded() {
    let f = make_cutoff_family();
    let c1: Vec<f64> = [1.0, 4.0, 16.0]
        .iter()
        .map(|&r| scale_symbol(&f.chi, r).unwrap().scaled_seminorm(1, &probe_grid(r)))
        .collect();
    let bound = f.chi.scaled_seminorm(1, &probe_grid(1.0));
    for v in &c1 {
        assert!(*v <= bound * (1.0 + 1e-9), "{c1:?}");
    }
}

#[test]
fn scaled_seminorms_are_r_independent() {
    let f = make_cutoff_family();
    let mut taus = vec![&f.chi, &f.chi_tilde];
    for sigma in [1, -1] {
        taus.push(f.chi_tilde_sigma(sigma));
        taus.push(f.sqrt_chi_tilde_sigma(sigma));
        taus.push(f.sqrt_sigma_chi_tilde_prime_sigma(sigma));
    }
    for tau in taus {
        for k in 0..=4 {
            let vals: Vec<f64> = (0..=6)
                .map(|p| {
                    let r = 2f64.powi(p);
                    scale_symbol(tau, r).unwrap().scaled_seminorm(k, &probe_grid(r))
                })
                .collect();
            let hi = vals.iter().cloned().fold(0.0, f64::max);
            let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(hi.is_finite() && hi <= 1.05 * lo, "{} k={k} {vals:?}", tau.name());
        }
    }
}

#[test]
fn finite_differences_match_closed_forms() {
    let f = make_cutoff_family();
    let mut symbols: Vec<Symbol> = f.members().into_iter().cloned().collect();
    symbols.extend([lorentzian(), weight(0.7), japanese_power(0.5), identity()]);
    symbols.push(make_phi_psi(0.6, 2.0, &f).unwrap().phi_r);
    let probes = [-3.3, -1.8, -1.2, -0.4, 0.0, 0.7, 1.4, 1.6, 2.6, 9.0];
    for s in &symbols {
        let fd = s.as_finite_difference();
        assert_eq!(fd.mode(), DerivMode::FiniteDifference);
        for k in 0..=3 {
            let scale = (0..=k).map(|j| s.seminorm(j, &probe_grid(4.0))).fold(0.0, f64::max);
            for &t in &probes {
                let exact = s.eval(k, t);
                let err = (fd.eval(k, t) - exact).abs();
                assert!(err <= 1e-6 * exact.abs().max(scale), "{} k={k} t={t}: {err:e}", s.name());
            }
        }
    }
}
