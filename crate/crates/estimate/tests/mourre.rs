use mourre_core::linalg::{self, c, CMat, CVec};
use mourre_core::{spectral_projection, Projection, RealInterval, RegistryRef, SelfAdjointOperator};
use mourre_estimate::*;
use mourre_models::{artificial_parts, build_model, lattice_model, model_suite, LatticeFlavor};

fn sigma_x() -> SelfAdjointOperator {
    let mut m = CMat::zeros((2, 2));
    m[[0, 1]] = c(1.0, 0.0);
    m[[1, 0]] = c(1.0, 0.0);
    SelfAdjointOperator::hermitian(m)
}

fn sigma_z() -> SelfAdjointOperator {
    SelfAdjointOperator::diagonal(&[1.0, -1.0])
}

fn iv(lo: f64, hi: f64) -> RealInterval {
    RealInterval::closed(lo, hi).unwrap()
}

#[test]
fn commutator_of_operator_with_itself_vanishes() {
    let m = lattice_model(16, LatticeFlavor::Dirichlet).unwrap();
    let k = commutator_form(&m.h, &m.h).unwrap();
    assert_eq!(linalg::max_abs(k.matrix()), 0.0);
}

#[test]
fn pauli_commutator_is_twice_sigma_y() {
    let k = commutator_form(&sigma_x(), &sigma_z()).unwrap();
    let mut expected = CMat::zeros((2, 2));
    expected[[0, 1]] = c(0.0, -2.0);
    expected[[1, 0]] = c(0.0, 2.0);
    assert_eq!(k.matrix(), &expected);
}

#[test]
fn rank_one_commutator_pattern() {
    let a = SelfAdjointOperator::diagonal(&[0.5, -1.0, 2.0]);
    let f = CVec::from(vec![c(0.3, 0.1), c(-0.5, 0.0), c(0.2, 0.7)]);
    let mut h = CMat::zeros((3, 3));
    for i in 0..3 {
        for j in 0..3 {
            h[[i, j]] = f[i] * f[j].conj();
        }
    }
    let k = commutator_form(&SelfAdjointOperator::hermitian(h), &a).unwrap();
    let af = a.matrix().dot(&f);
    let mut expected = CMat::zeros((3, 3));
    for i in 0..3 {
        for j in 0..3 {
            expected[[i, j]] = c(0.0, 1.0) * (f[i] * af[j].conj() - af[i] * f[j].conj());
        }
    }
    assert!(linalg::max_abs_diff(k.matrix(), &expected) <= 1e-15);

    let e1 = SelfAdjointOperator::diagonal(&[0.0, 1.0, 0.0]);
    assert_eq!(linalg::max_abs(commutator_form(&e1, &a).unwrap().matrix()), 0.0);
}

#[test]
fn pauli_constants() {
    let r = mourre_best_constant(&sigma_x(), &sigma_z(), &iv(0.5, 1.5), None).unwrap();
    assert_eq!(r.eigenvalues_in_interval.len(), 1);
    assert!(r.c_strict.value.abs() <= 1e-15);
    let r = mourre_best_constant(&sigma_x(), &sigma_z(), &iv(-2.0, 2.0), None).unwrap();
    assert!((r.c_strict.value + 2.0).abs() <= 1e-14);
    assert!((r.commutator_norm - 2.0).abs() <= 1e-14);
}

#[test]
fn commuting_pair_has_zero_constant() {
    let h = SelfAdjointOperator::diagonal(&[1.0, 2.0, 3.0]);
    let a = SelfAdjointOperator::diagonal(&[5.0, -1.0, 0.0]);
    let r = mourre_best_constant(&h, &a, &iv(1.5, 3.5), None).unwrap();
    assert_eq!(r.c_strict.value, 0.0);
}

#[test]
fn vacuous_compression_is_flagged() {
    let r = mourre_best_constant(&sigma_x(), &sigma_z(), &iv(3.0, 4.0), None).unwrap();
    assert!(r.c_strict.vacuous && r.c_strict.value == f64::INFINITY);
    assert!(r.flags().contains(&"strict_compression_vacuous"));
    let j = r.to_json();
    assert!(j["c_strict"].is_null());
    assert_eq!(j["eigenvalues"].as_array().unwrap().len(), 0);

    let spec = sigma_x().spectral().unwrap().clone();
    let e = spectral_projection(&spec, &iv(-2.0, 2.0));
    let r = mourre_best_constant(&sigma_x(), &sigma_z(), &iv(-2.0, 2.0), Some(&e)).unwrap();
    assert!(r.c_projected.vacuous);
    assert!(r.c_projected.value >= r.c_strict.value - 1e-12);
}

#[test]
fn virial_on_pauli_and_contrast_vector() {
    let v = virial_check(&sigma_x(), &sigma_z(), &iv(0.5, 1.5), VIRIAL_TOL).unwrap();
    assert!(v.passed && v.residuals[0] <= 1e-15);
    let k = commutator_form(&sigma_x(), &sigma_z()).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let f = CVec::from(vec![c(s, 0.0), c(0.0, s)]);
    assert!((linalg::inner(&f, &k.matrix().dot(&f)).re - 2.0).abs() <= 1e-14);
    let empty = virial_check(&sigma_x(), &sigma_z(), &iv(3.0, 4.0), VIRIAL_TOL).unwrap();
    assert!(empty.residuals.is_empty() && empty.passed);
}

#[test]
fn virial_holds_across_model_suite() {
    for name in model_suite() {
        let m = build_model(&RegistryRef::parse(&name).unwrap()).unwrap();
        let spec = m.h.spectral().unwrap();
        let all = iv(spec.eigenvalues[0] - 1.0, spec.eigenvalues[spec.dim() - 1] + 1.0);
        let v = virial_check(&m.h, &m.a, &all, VIRIAL_TOL).unwrap();
        assert_eq!(v.residuals.len(), m.dim());
        assert!(v.passed, "{name}: {:e}", v.max_relative());
        let r = mourre_best_constant(&m.h, &m.a, &m.recommended_interval, None).unwrap();
        assert!(r.c_strict.value <= r.virial_max_residual() + 1e-12, "{name}");
    }
}

#[test]
fn lattice_strict_constant_is_not_positive() {
    // The compressed form has a zero diagonal in H's eigenbasis, so its trace vanishes.
    for n in [64, 128] {
        let m = lattice_model(n, LatticeFlavor::Dirichlet).unwrap();
        let r = mourre_best_constant(&m.h, &m.a, &m.recommended_interval, None).unwrap();
        assert!(r.c_strict.value < 0.0);
        assert!(r.virial_max_residual() <= 1e-10 * r.commutator_norm);
    }
}

#[test]
fn enlarging_interval_lowers_constant() {
    let m = lattice_model(48, LatticeFlavor::Circulant).unwrap();
    let mut last = f64::INFINITY;
    for w in [0.01, 0.05, 0.1, 0.2, 0.3, 0.4] {
        let r = mourre_best_constant(&m.h, &m.a, &iv(0.4 - w, 0.4 + w), None).unwrap();
        assert!(r.c_strict.value <= last + 1e-12);
        last = r.c_strict.value;
    }
}

#[test]
fn artificial_projected_constant_is_lattice_block_constant() {
    let p = artificial_parts(128, 16, 0.4, 2.0, 7).unwrap();
    let m = p.instance(2.0, 7);
    let proj = p.block_projection();
    let r = mourre_best_constant(&m.h, &m.a, &p.interval, Some(&proj)).unwrap();
    let h0 = mourre_best_constant(&p.h0.h, &p.h0.a, &p.interval, None).unwrap();
    assert!(r.c_strict.value <= 1e-8);
    assert!(r.eigenvalues_in_interval.len() >= 16);
    assert_eq!(r.c_projected.range_dim, h0.eigenvalues_in_interval.len());
    assert!((r.c_projected.value - h0.c_strict.value).abs() <= 1e-8 * h0.c_strict.value.abs());
    assert!(r.c_projected.value >= r.c_strict.value - 1e-12);
}

#[test]
fn projection_onto_eigenvectors_in_interval_raises_constant() {
    let m = lattice_model(40, LatticeFlavor::Dirichlet).unwrap();
    let spec = m.h.spectral().unwrap();
    let i = m.recommended_interval;
    let idx = mourre_core::projection::select_indices(spec, &i);
    let cols = spec.eigenvectors.select(ndarray::Axis(1), &idx[..idx.len() / 2]);
    let p = Projection::from_orthonormal_columns(&cols);
    let r = mourre_best_constant(&m.h, &m.a, &i, Some(&p)).unwrap();
    assert_eq!(r.c_projected.range_dim, idx.len() - idx.len() / 2);
    assert!(r.c_projected.value >= r.c_strict.value - 1e-12);
}
