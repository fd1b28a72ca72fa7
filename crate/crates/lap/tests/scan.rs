use mourre_core::linalg::c;
use mourre_core::{spectral_projection, Projection, RealInterval, SelfAdjointOperator};
use mourre_lap::*;
use mourre_models::{artificial_parts, lattice_model, multiplication_model, LatticeFlavor};

fn iv(lo: f64, hi: f64) -> RealInterval {
    RealInterval::closed(lo, hi).unwrap()
}

fn random_pair(n: usize, seed: u64) -> (SelfAdjointOperator, SelfAdjointOperator) {
    let mut rng = mourre_models::rng::Lcg::new(seed);
    let mut gen = || SelfAdjointOperator::hermitian(mourre_core::CMat::from_shape_fn((n, n), |_| c(rng.symmetric(), rng.symmetric())));
    (gen(), gen())
}

#[test]
fn unweighted_scan_meeting_spectrum_is_inverse_eta() {
    let (h, a) = random_pair(12, 3);
    let i = iv(-0.5, 0.5);
    let floor = eta_floor(h.spectral().unwrap(), &i);
    let grid = geometric_eta_grid(floor.max(1e-3), 16.0, 6);
    let r = lap_scan(&h, &a, &i, 0.0, &ProjectionMode::Full, &grid).unwrap();
    for (e, n) in r.eta_grid.iter().zip(&r.sup_norms) {
        assert!((n * e - 1.0).abs() <= 1e-12, "{}", n * e);
    }
    assert!((r.growth_slope - 1.0).abs() <= 1e-10);
    assert_eq!(r.verdict, TrendVerdict::DivergentTrend);
}

#[test]
fn unweighted_scan_off_spectrum_is_bounded() {
    let h = SelfAdjointOperator::diagonal(&[-2.0, -1.0, 1.5, 3.0]);
    let a = SelfAdjointOperator::diagonal(&[0.0, 1.0, 2.0, 3.0]);
    let i = iv(0.0, 1.0);
    let r = lap_scan(&h, &a, &i, 0.0, &ProjectionMode::Full, &geometric_eta_grid(1e-4, 1e3, 6)).unwrap();
    assert!(r.sup_norms.iter().all(|&n| n <= 1.0 / 0.5 + 1e-12));
    assert!(r.growth_slope.abs() < 1e-2, "{}", r.growth_slope);
    assert_eq!(r.verdict, TrendVerdict::BoundedTrend);
    assert_eq!(r.eta_floor, 3e-12);
}

#[test]
fn eta_floor_uses_mean_spacing() {
    let h = SelfAdjointOperator::diagonal(&[0.0, 0.1, 0.3, 0.6, 5.0]);
    assert!((eta_floor(h.spectral().unwrap(), &iv(-0.1, 1.0)) - 3.0 * 0.2).abs() < 1e-15);
    assert!((eta_floor(h.spectral().unwrap(), &iv(4.0, 6.0)) - 5e-12).abs() < 1e-24);
}

#[test]
fn eta_floor_merges_degenerate_eigenvalues() {
    let h = SelfAdjointOperator::diagonal(&[0.0, 0.4, 0.4, 0.4, 1.0, 2.0]);
    assert!((eta_floor(h.spectral().unwrap(), &iv(-0.1, 1.5)) - 3.0 * 0.5).abs() < 1e-15);
    assert!((eta_floor(h.spectral().unwrap(), &iv(0.2, 0.6)) - 2e-12).abs() < 1e-24);
}

#[test]
fn scan_rejects_bad_grids() {
    let m = lattice_model(16, LatticeFlavor::Dirichlet).unwrap();
    let i = m.recommended_interval;
    let floor = eta_floor(m.h.spectral().unwrap(), &i);
    let run = |g: &[f64]| lap_scan(&m.h, &m.a, &i, 0.7, &ProjectionMode::Full, g);
    assert!(matches!(run(&geometric_eta_grid(floor / 2.0, 16.0, 5)), Err(LapError::EtaBelowFloor { .. })));
    assert!(matches!(run(&[1.0, 2.0, 3.0, 4.0]), Err(LapError::BadEtaGrid)));
    assert!(matches!(run(&[1.0, 0.5, 0.25]), Err(LapError::TooFewPoints(3))));
    assert!(run(&geometric_eta_grid(floor, 16.0, 5)).is_ok());
}

#[test]
fn scan_outputs_are_well_formed() {
    let m = lattice_model(16, LatticeFlavor::Dirichlet).unwrap();
    let i = m.recommended_interval;
    let floor = eta_floor(m.h.spectral().unwrap(), &i);
    let r = lap_scan(&m.h, &m.a, &i, 0.7, &ProjectionMode::Full, &geometric_eta_grid(floor, 16.0, 4)).unwrap();
    let csv = r.to_csv();
    assert!(csv.starts_with("eta,sup_norm\n"));
    assert_eq!(csv.lines().count(), 5);
    assert_eq!(r.to_plot_data().lines().filter(|l| !l.starts_with('#')).count(), 4);
    let j = r.verdict_json();
    assert_eq!(j["mode"], "full");
    assert!(j["slope"].as_f64().is_some());
    assert!(r.eta_grid.iter().all(|&e| e >= r.eta_floor * (1.0 - 1e-12)));
}

#[test]
fn multiplication_model_slope_decreases_with_s() {
    let m = multiplication_model(128, 500.0).unwrap();
    let i = m.recommended_interval;
    let grid = geometric_eta_grid(eta_floor(m.h.spectral().unwrap(), &i), 16.0, 8);
    let low = lap_scan(&m.h, &m.a, &i, 0.3, &ProjectionMode::Full, &grid).unwrap();
    let high = lap_scan(&m.h, &m.a, &i, 0.7, &ProjectionMode::Full, &grid).unwrap();
    assert!(low.growth_slope >= DIVERGENT_SLOPE, "{}", low.growth_slope);
    assert!(high.growth_slope < low.growth_slope - 0.1, "{} vs {}", high.growth_slope, low.growth_slope);
}

#[test]
fn removing_eigenvectors_near_interval_caps_the_scan() {
    let p = artificial_parts(64, 8, 0.4, 2.0, 7).unwrap();
    let m = p.instance(2.0, 7);
    let i = p.interval;
    let spec = m.h.spectral().unwrap();
    let grid = geometric_eta_grid(eta_floor(spec, &i), 16.0, 6);
    let enlarged = i.enlarged(0.1);
    let pp: Projection = spectral_projection(spec, &enlarged);
    let s = 0.7;
    let reduced = lap_scan(&m.h, &m.a, &i, s, &ProjectionMode::Reduced(pp), &grid).unwrap();
    let full = lap_scan(&m.h, &m.a, &i, s, &ProjectionMode::Full, &grid).unwrap();
    // Remaining eigenvalues sit at distance >= d from I, and ||<A>^{-s}|| <= 1.
    let d = spec
        .eigenvalues
        .iter()
        .filter(|&&l| !enlarged.contains(l))
        .map(|&l| i.distance(l))
        .fold(f64::INFINITY, f64::min);
    for (n, eta) in reduced.sup_norms.iter().zip(&grid) {
        assert!(*n <= 1.0 / (d * d + eta * eta).sqrt() + 1e-12);
    }
    assert!(full.growth_slope >= DIVERGENT_SLOPE, "{}", full.growth_slope);
    assert!(reduced.growth_slope < full.growth_slope);
    assert_eq!(reduced.mode, "reduced");
}

#[test]
fn trend_verdict_thresholds() {
    assert_eq!(TrendVerdict::from_slope(0.1), TrendVerdict::BoundedTrend);
    assert_eq!(TrendVerdict::from_slope(0.25), TrendVerdict::Inconclusive);
    assert_eq!(TrendVerdict::from_slope(0.4), TrendVerdict::DivergentTrend);
    assert_eq!(TrendVerdict::Inconclusive.as_str(), "inconclusive");
}
