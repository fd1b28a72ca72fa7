mod common;

use common::{random_operator, spread_operator};
use mourre_core::{linalg, SelfAdjointOperator};
use mourre_hs::{hs_apply, HsError, QuadratureConfig, RECOMMENDED_TAYLOR_ORDER};
use mourre_symbols::{almost_analytic, japanese_power, lorentzian, make_cutoff_family, make_phi_psi, scale_symbol, Symbol};

fn ext(phi: &Symbol) -> mourre_symbols::AlmostAnalyticExtension {
    almost_analytic(phi, RECOMMENDED_TAYLOR_ORDER, &make_cutoff_family()).unwrap()
}

fn oracle_error(a: &SelfAdjointOperator, phi: &Symbol, q: &QuadratureConfig) -> f64 {
    let out = hs_apply(a, &ext(phi), q).unwrap();
    let oracle = a.apply_function(|t| phi.value(t)).unwrap();
    linalg::rel_frobenius_diff(out.operator.matrix(), oracle.matrix())
}

#[test]
fn lorentzian_at_zero_is_one() {
    let a = SelfAdjointOperator::diagonal(&[0.0]);
    let out = hs_apply(&a, &ext(&lorentzian()), &QuadratureConfig::default()).unwrap();
    assert!((out.operator.matrix()[(0, 0)].re - 1.0).abs() <= 1e-8);
    assert!(out.certificate.converged);
    assert!(out.certificate.localized);
}

#[test]
fn cutoff_on_small_diagonal() {
    let fam = make_cutoff_family();
    let a = SelfAdjointOperator::diagonal(&[-1.0, 0.0, 2.0]);
    let out = hs_apply(&a, &ext(&fam.chi), &QuadratureConfig::default()).unwrap();
    let m = out.operator.matrix();
    let expected = [1.0, 1.0, 0.0];
    for i in 0..3 {
        for j in 0..3 {
            let e = if i == j { expected[i] } else { 0.0 };
            assert!((m[(i, j)].re - e).abs() < 1e-8, "entry ({i},{j}) = {}", m[(i, j)]);
        }
    }
    assert!(!out.certificate.localized);
    assert_eq!(out.certificate.x_range, (-2.0, 2.0));
}

#[test]
fn scaled_cutoff_matches_oracle() {
    let fam = make_cutoff_family();
    let chi4 = scale_symbol(&fam.chi, 4.0).unwrap();
    let a = random_operator(16, 3);
    assert!(oracle_error(&a, &chi4, &QuadratureConfig::default()) <= 1e-6);
}

#[test]
fn oracle_agreement_across_builtin_symbols() {
    let fam = make_cutoff_family();
    let symbols = vec![
        fam.chi.clone(),
        scale_symbol(&fam.chi, 4.0).unwrap(),
        lorentzian(),
        japanese_power(-0.5),
        make_phi_psi(0.6, 4.0, &fam).unwrap().phi_r,
    ];
    let q = QuadratureConfig { extended_validity: true, ..Default::default() };
    for seed in 0..5 {
        let a = spread_operator(8 + 4 * seed as usize, seed);
        for phi in &symbols {
            let out = hs_apply(&a, &ext(phi), &q).unwrap();
            let oracle = a.apply_function(|t| phi.value(t)).unwrap();
            let err = linalg::rel_frobenius_diff(out.operator.matrix(), oracle.matrix());
            let allowed = q.target_rel_error.max(out.certificate.total());
            assert!(err <= allowed, "{} seed {seed}: {err:e} > {allowed:e}", phi.name());
        }
    }
}

#[test]
fn nonnegative_order_needs_extended_mode() {
    let a = random_operator(4, 1);
    let e = ext(&japanese_power(0.5));
    let err = hs_apply(&a, &e, &QuadratureConfig::default()).unwrap_err();
    assert!(matches!(err, HsError::BadSymbolOrder(r) if r == 0.5));
    let q = QuadratureConfig { extended_validity: true, ..Default::default() };
    let out = hs_apply(&a, &e, &q).unwrap();
    let oracle = a.apply_function(|t| (1.0 + t * t).powf(0.25)).unwrap();
    assert!(linalg::rel_frobenius_diff(out.operator.matrix(), oracle.matrix()) < 1e-8);
}

#[test]
fn exhausted_refinement_returns_best_iterate() {
    let a = random_operator(6, 2);
    let q = QuadratureConfig { refinement_levels: 1, target_rel_error: 1e-14, ..Default::default() };
    match hs_apply(&a, &ext(&lorentzian()), &q) {
        Err(HsError::QuadratureNotConverged { best }) => {
            assert!(!best.certificate.converged);
            assert_eq!(best.certificate.levels_used, 1);
            assert_eq!(best.certificate.history.len(), 1);
            assert_eq!(best.operator.dim(), 6);
        }
        other => panic!("expected non-convergence, got {other:?}"),
    }
}

#[test]
fn odd_u_cells_are_rejected() {
    let a = random_operator(3, 0);
    let q = QuadratureConfig { y_cells: 15, ..Default::default() };
    assert!(matches!(hs_apply(&a, &ext(&lorentzian()), &q), Err(HsError::BadConfig(_))));
}

#[test]
fn quadrature_is_bit_stable() {
    let a = random_operator(10, 9);
    let e = ext(&lorentzian());
    let q = QuadratureConfig::default();
    let x = hs_apply(&a, &e, &q).unwrap();
    let y = hs_apply(&a, &e, &q).unwrap();
    assert_eq!(x.operator.matrix(), y.operator.matrix());
    assert_eq!(x.certificate, y.certificate);
}
