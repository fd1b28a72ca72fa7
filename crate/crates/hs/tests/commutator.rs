mod common;

use common::{random_hermitian, random_operator, real_matrix};
use mourre_core::linalg::{self, CMat};
use mourre_core::{SelfAdjointOperator, C64};
use mourre_hs::{ad_iter, commutator_expand, expansion_sign, HsError, QuadratureConfig};
use mourre_symbols::{identity, japanese_power, lorentzian, make_cutoff_family, scale_symbol, Symbol};

fn sigma_x() -> CMat {
    real_matrix(&[&[0.0, 1.0], &[1.0, 0.0]])
}

#[test]
fn ad_of_pauli_x() {
    let a = linalg::diag_real(&[1.0, 2.0]);
    let ad1 = ad_iter(&sigma_x(), &a, 1).unwrap();
    assert_eq!(ad1, real_matrix(&[&[0.0, 1.0], &[-1.0, 0.0]]));
    let ad2 = ad_iter(&sigma_x(), &a, 2).unwrap();
    assert_eq!(ad2, sigma_x());
}

#[test]
fn ad_on_diagonal_matches_entrywise_formula() {
    let a = [-2.0, 0.0, 1.0, 3.0];
    let b = random_hermitian(4, 5);
    for p in 1..=4 {
        let ad = ad_iter(&b, &linalg::diag_real(&a), p).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let e = b[(i, j)] * (a[j] - a[i]).powi(p as i32);
                assert!((ad[(i, j)] - e).norm() <= 1e-12 * e.norm().max(1.0));
            }
        }
    }
}

#[test]
fn rank_one_commutator_identity() {
    let n = 6;
    let a = random_hermitian(n, 1);
    let f = random_hermitian(n, 2).column(0).to_owned();
    let g = random_hermitian(n, 3).column(1).to_owned();
    let outer = |u: &mourre_core::CVec, v: &mourre_core::CVec| {
        CMat::from_shape_fn((n, n), |(i, j)| u[i] * v[j].conj())
    };
    let b = outer(&f, &g);
    let lhs = ad_iter(&b, &a, 1).unwrap();
    let rhs = outer(&f, &a.dot(&g)) - outer(&a.dot(&f), &g);
    assert!(linalg::max_abs_diff(&lhs, &rhs) <= 1e-12);
}

#[test]
fn ad_flips_sign_with_a() {
    let a = random_hermitian(5, 7);
    let b = random_hermitian(5, 8);
    let plus = ad_iter(&b, &a, 1).unwrap();
    let minus = ad_iter(&b, &a.mapv(|v| -v), 1).unwrap();
    assert_eq!(plus, minus.mapv(|v| -v));
}

#[test]
fn ad_rejects_mismatched_dimensions() {
    let err = ad_iter(&random_hermitian(3, 0), &random_hermitian(4, 0), 1).unwrap_err();
    assert!(matches!(err, HsError::DimensionMismatch(4, 3)));
}

#[test]
fn calibrated_sign_is_negative() {
    assert_eq!(expansion_sign(), -1);
}

#[test]
fn identity_symbol_has_vanishing_second_remainder() {
    let a = random_operator(6, 11);
    let b = random_hermitian(6, 12);
    let r = commutator_expand(&b, &a, &identity(), 2, None).unwrap();
    assert_eq!(r.terms.len(), 1);
    assert!(linalg::frobenius(&r.remainder) <= 1e-10);
    assert!(linalg::max_abs_diff(&r.commutator, &linalg::commutator(a.matrix(), &b)) <= 1e-12);
}

#[test]
fn first_order_remainder_is_the_commutator() {
    let a = random_operator(5, 2);
    let b = random_hermitian(5, 3);
    let r = commutator_expand(&b, &a, &lorentzian(), 1, None).unwrap();
    assert!(r.terms.is_empty());
    assert_eq!(r.remainder, r.commutator);
    let phi_a = a.apply_function(|t| 1.0 / (1.0 + t * t)).unwrap();
    let direct = linalg::commutator(phi_a.matrix(), &b);
    assert!(linalg::max_abs_diff(&r.commutator, &direct) <= 1e-12);
}

#[test]
fn expansion_identity_on_small_diagonal() {
    let fam = make_cutoff_family();
    let chi2 = scale_symbol(&fam.chi, 2.0).unwrap();
    let a = SelfAdjointOperator::diagonal(&[1.0, 2.0, 3.0]);
    let b = random_hermitian(3, 4);
    let r = commutator_expand(&b, &a, &chi2, 3, None).unwrap();
    assert!(r.identity_residual() <= 1e-9);
}

#[test]
fn oracle_terms_match_direct_products() {
    let a = random_operator(5, 20);
    let b = random_hermitian(5, 21);
    let phi = lorentzian();
    let r = commutator_expand(&b, &a, &phi, 3, None).unwrap();
    for (j, term) in r.terms.iter().enumerate() {
        let p = j + 1;
        let dphi = a.apply_function(|t| phi.eval(p, t)).unwrap();
        let ad = ad_iter(&b, a.matrix(), p).unwrap();
        let fact = (1..=p).product::<usize>() as f64;
        let expected = dphi.matrix().dot(&ad).mapv(|v| v * C64::new(-1.0 / fact, 0.0));
        assert!(linalg::max_abs_diff(term, &expected) <= 1e-10 * linalg::max_abs(&expected).max(1.0));
    }
}

#[test]
fn quadrature_remainder_reproduces_identity() {
    let fam = make_cutoff_family();
    let symbols: Vec<Symbol> = vec![fam.chi.clone(), lorentzian(), japanese_power(-0.5)];
    let q = QuadratureConfig::default();
    for (case, phi) in symbols.iter().enumerate() {
        let a = SelfAdjointOperator::hermitian(random_hermitian(6, 30 + case as u64).mapv(|v| v * 2.0));
        let b = random_hermitian(6, 40 + case as u64);
        for k in 1..=3 {
            let r = commutator_expand(&b, &a, phi, k, Some(&q)).unwrap();
            let quad = r.quadrature.as_ref().unwrap();
            let comm = linalg::frobenius(&r.commutator);
            let res = r.quadrature_identity_residual().unwrap();
            let allowed = 10.0 * quad.certificate.total() * comm;
            assert!(res <= allowed, "{} k={k}: {res:e} > {allowed:e}", phi.name());
            assert!(res <= 1e-7 * comm, "{} k={k}: {res:e}", phi.name());
        }
    }
}

#[test]
fn order_violation_is_reported() {
    let a = random_operator(3, 0);
    let b = random_hermitian(3, 1);
    let err = commutator_expand(&b, &a, &identity(), 1, None).unwrap_err();
    assert!(matches!(err, HsError::OrderViolation { k: 1, .. }));
}

#[test]
fn finite_difference_symbols_need_enough_derivatives() {
    let a = random_operator(3, 0);
    let b = random_hermitian(3, 1);
    let fd = lorentzian().as_finite_difference();
    assert!(commutator_expand(&b, &a, &fd, 2, None).is_ok());
    assert!(matches!(commutator_expand(&b, &a, &fd, 3, None), Err(HsError::Symbol(_))));
}
