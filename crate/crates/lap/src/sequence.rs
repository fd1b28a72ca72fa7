use mourre_core::linalg::{self, c, CMat, CVec};
use mourre_core::norm::operator_norm;
use mourre_core::projection::select_indices;
use mourre_core::resolvent::weight_matrix;
use mourre_core::{RealInterval, SelfAdjointOperator, WeightedResolvent};
use mourre_symbols::Symbol;
use serde::Serialize;

use crate::scan::{re_z_grid, sup_over_grid};
use crate::{growth_slope, LapError, DIVERGENT_SLOPE};

/// Decay slopes in `eta` at or above this count as decay to zero.
pub const DECAY_SLOPE: f64 = 0.5;

/// Values below this multiple of their natural scale count as zero.
const ZERO_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Serialize)]
pub struct SequenceEntry {
    pub z: [f64; 2],
    /// `k_n = ||<A>^{-s} (H - z_n)^{-1} <A>^{-s}||`.
    pub k: f64,
    #[serde(skip)]
    pub g: CVec,
    #[serde(skip)]
    pub f: CVec,
    /// `||<A>^{-s} f_n||`, recomputed from `f_n`.
    pub weighted_norm: f64,
    /// `||<A>^{s} (H - z_n) f_n||`, recomputed from `f_n`.
    pub defect_norm: f64,
}

impl SequenceEntry {
    pub fn eta(&self) -> f64 {
        self.z[1]
    }

    /// `max(| ||<A>^{-s} f|| - 1 |, | k ||<A>^s (H - z) f|| - 1 |)`.
    pub fn identity_error(&self) -> f64 {
        (self.weighted_norm - 1.0).abs().max((self.k * self.defect_norm - 1.0).abs())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialSequence {
    pub entries: Vec<SequenceEntry>,
    pub s: f64,
    pub interval: RealInterval,
    /// `||<A>^{-s} f_n||` at the last entry.
    pub mass: f64,
    /// Slope of `log k_n` against `-log eta_n`.
    pub k_growth_slope: f64,
    /// Positive iff `k_n` diverges (slope at least the divergence threshold).
    pub positive_mass: bool,
}

impl SpecialSequence {
    pub fn max_identity_error(&self) -> f64 {
        self.entries.iter().map(SequenceEntry::identity_error).fold(0.0, f64::max)
    }

    pub fn etas(&self) -> Vec<f64> {
        self.entries.iter().map(SequenceEntry::eta).collect()
    }
}

fn check_schedule(etas: &[f64]) -> Result<(), LapError> {
    if etas.iter().any(|e| !(e.is_finite() && *e > 0.0)) || etas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(LapError::BadEtaGrid);
    }
    Ok(())
}

/// For each `eta_n`: `z_n` maximizes the weighted resolvent norm over the
/// real-part grid, `k_n` is that norm, `g_n` the top right singular vector
/// scaled to `k_n ||g_n|| = 1`, and `f_n = (H - z_n)^{-1} <A>^{-s} g_n`.
pub fn special_sequence(
    h: &SelfAdjointOperator,
    a: &SelfAdjointOperator,
    interval: &RealInterval,
    s: f64,
    eta_schedule: &[f64],
) -> Result<SpecialSequence, LapError> {
    if h.dim() != a.dim() {
        return Err(LapError::DimensionMismatch(h.dim(), a.dim()));
    }
    check_schedule(eta_schedule)?;
    let spec = h.spectral()?;
    let a_spec = a.spectral()?;
    let kernel = WeightedResolvent::new(h, a_spec, s, None)?;
    let w_minus = weight_matrix(a_spec, s);
    let w_plus = weight_matrix(a_spec, -s);
    let grid = re_z_grid(spec, interval);
    let mut entries = Vec::with_capacity(eta_schedule.len());
    for &eta in eta_schedule {
        let (k, i, v) = sup_over_grid(&kernel, &grid, eta)?;
        let z = c(grid[i], eta);
        let g = v.mapv(|x| x / k);
        let f = spec.resolvent(z)?.dot(&w_minus.dot(&g));
        let weighted_norm = linalg::vec_norm(&w_minus.dot(&f));
        let hf = h.matrix().dot(&f) - f.mapv(|x| x * z);
        let defect_norm = linalg::vec_norm(&w_plus.dot(&hf));
        entries.push(SequenceEntry { z: [z.re, z.im], k, g, f, weighted_norm, defect_norm });
    }
    let ks: Vec<f64> = entries.iter().map(|e| e.k).collect();
    let k_growth_slope = growth_slope(eta_schedule, &ks);
    Ok(SpecialSequence {
        mass: entries.last().map_or(0.0, |e| e.weighted_norm),
        entries,
        s,
        interval: *interval,
        k_growth_slope,
        positive_mass: k_growth_slope >= DIVERGENT_SLOPE,
    })
}

/// A sequence of non-negative values against `eta_n` with its decay verdict.
#[derive(Debug, Clone, Serialize)]
pub struct DecayTable {
    pub etas: Vec<f64>,
    pub values: Vec<f64>,
    /// Slope of `log value` against `log eta`; `None` when identically zero.
    pub decay_slope: Option<f64>,
    pub identically_zero: bool,
    pub passed: bool,
}

impl DecayTable {
    fn new(etas: Vec<f64>, values: Vec<f64>, scale: f64) -> Self {
        let identically_zero = values.iter().all(|&v| v <= ZERO_TOL * scale.max(f64::MIN_POSITIVE));
        if identically_zero {
            return Self { etas, values, decay_slope: None, identically_zero, passed: true };
        }
        // A zero among nonzero values is a decay point; floor it for the log fit.
        let floored: Vec<f64> = values.iter().map(|&v| v.max(ZERO_TOL * scale)).collect();
        let slope = -growth_slope(&etas, &floored);
        Self { etas, values, decay_slope: Some(slope), identically_zero, passed: slope >= DECAY_SLOPE }
    }
}

/// `v_n = |<f_n, [H, phi(A)] f_n>|` and its decay in `eta_n`.
pub fn virial_like_check(seq: &SpecialSequence, h: &SelfAdjointOperator, a: &SelfAdjointOperator, phi: &Symbol) -> Result<DecayTable, LapError> {
    if phi.order() > 0.0 {
        return Err(LapError::HypothesisViolated(format!("phi must be bounded, order {}", phi.order())));
    }
    let phi_a = a.spectral()?.apply(|t| phi.value(t))?.into_matrix();
    let comm = linalg::commutator(h.matrix(), &phi_a);
    let values: Vec<f64> = seq.entries.iter().map(|e| linalg::inner(&e.f, &comm.dot(&e.f)).norm()).collect();
    let fmax = seq.entries.iter().map(|e| linalg::vec_norm(&e.f).powi(2)).fold(0.0, f64::max);
    let scale = operator_norm(&comm).max(h.norm()? * operator_norm(&phi_a)) * fmax;
    Ok(DecayTable::new(seq.etas(), values, scale))
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalizationTable {
    /// `||(1 - theta)(H) f_n||`.
    pub off_interval: DecayTable,
    /// `||<A>^{-s} theta(H) f_n||`.
    pub localized_mass: Vec<f64>,
    /// `k_n ||<A>^s (H - z_n) theta(H) f_n||`.
    pub localized_defect: Vec<f64>,
    /// Divergence verdict of the localized sequence, by the same `k_n` slope rule.
    pub positive_mass: bool,
    /// `||<A>^s theta(H) <A>^{-s}||`, finite at every size.
    pub commutation_norm: f64,
}

/// Checks that `theta(H) f_n` carries the sequence: the part of `f_n` where
/// `theta != 1` decays, and `(theta(H) f_n, z_n)` keeps the defect bounds.
pub fn localization_check(
    seq: &SpecialSequence,
    h: &SelfAdjointOperator,
    a: &SelfAdjointOperator,
    theta: &Symbol,
) -> Result<LocalizationTable, LapError> {
    let spec = h.spectral()?;
    for j in select_indices(spec, &seq.interval) {
        let l = spec.eigenvalues[j];
        let v = theta.value(l);
        if (v - 1.0).abs() > 1e-12 {
            return Err(LapError::HypothesisViolated(format!("theta({l}) = {v}, expected 1 on the interval")));
        }
    }
    let theta_h: CMat = spec.apply(|t| theta.value(t))?.into_matrix();
    let rest = spec.apply(|t| 1.0 - theta.value(t))?.into_matrix();
    let a_spec = a.spectral()?;
    let w_minus = weight_matrix(a_spec, seq.s);
    let w_plus = weight_matrix(a_spec, -seq.s);
    let mut off = Vec::new();
    let mut localized_mass = Vec::new();
    let mut localized_defect = Vec::new();
    let mut fmax = 0.0f64;
    for e in &seq.entries {
        let z = c(e.z[0], e.z[1]);
        off.push(linalg::vec_norm(&rest.dot(&e.f)));
        fmax = fmax.max(linalg::vec_norm(&e.f));
        let tf = theta_h.dot(&e.f);
        localized_mass.push(linalg::vec_norm(&w_minus.dot(&tf)));
        let d = h.matrix().dot(&tf) - tf.mapv(|x| x * z);
        localized_defect.push(e.k * linalg::vec_norm(&w_plus.dot(&d)));
    }
    let commutation_norm = operator_norm(&w_plus.dot(&theta_h).dot(&w_minus));
    let ks: Vec<f64> = seq.entries.iter().map(|e| e.k).collect();
    Ok(LocalizationTable {
        off_interval: DecayTable::new(seq.etas(), off, fmax),
        localized_mass,
        localized_defect,
        positive_mass: growth_slope(&seq.etas(), &ks) >= DIVERGENT_SLOPE,
        commutation_norm,
    })
}
