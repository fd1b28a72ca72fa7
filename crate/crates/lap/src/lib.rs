//! Weighted resolvent scans `sup_{Re z in I} ||<A>^{-s} (H - z)^{-1} Q <A>^{-s}||`
//! as `Im z` decreases, special sequences built from their maximizers, and
//! the closed-form propagation integral.
//!
//! Finite matrices always violate the limiting absorption principle once
//! `Im z` drops below the level spacing, so every scan stops at
//! `eta_floor = 3 x` (mean spacing in `I`) and reports a trend, never a limit.

mod propagation;
mod scan;
mod sequence;

use mourre_core::OperatorError;
use serde::Serialize;
use thiserror::Error;

pub use propagation::{time_decay_probe, TimeDecay};
pub use scan::{eta_floor, geometric_eta_grid, lap_scan, re_z_grid, LapScan, ProjectionMode, RE_Z_POINTS};
pub use sequence::{
    localization_check, special_sequence, virial_like_check, DecayTable, LocalizationTable, SequenceEntry,
    SpecialSequence, DECAY_SLOPE,
};

/// Growth slopes at or below this read as bounded.
pub const BOUNDED_SLOPE: f64 = 0.1;
/// Growth slopes at or above this read as divergent.
pub const DIVERGENT_SLOPE: f64 = 0.4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LapError {
    #[error("eta = {eta:.3e} is below the floor {floor:.3e}")]
    EtaBelowFloor { eta: f64, floor: f64 },
    #[error("eta grid must be positive and strictly decreasing")]
    BadEtaGrid,
    #[error("growth fit needs at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrendVerdict {
    BoundedTrend,
    DivergentTrend,
    Inconclusive,
}

impl TrendVerdict {
    pub fn from_slope(slope: f64) -> Self {
        if slope <= BOUNDED_SLOPE {
            Self::BoundedTrend
        } else if slope >= DIVERGENT_SLOPE {
            Self::DivergentTrend
        } else {
            Self::Inconclusive
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::BoundedTrend => "bounded-trend",
            Self::DivergentTrend => "divergent-trend",
            Self::Inconclusive => "inconclusive",
        }
    }
}

/// Slope of `log y` against `-log eta`; zero with fewer than two points.
fn growth_slope(etas: &[f64], ys: &[f64]) -> f64 {
    if etas.len() < 2 {
        return 0.0;
    }
    let xs: Vec<f64> = etas.iter().map(|e| -e.ln()).collect();
    let ls: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    mourre_core::fit::fit_line(&xs, &ls).0
}
