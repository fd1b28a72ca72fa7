use serde::Serialize;

use crate::HsError;

pub const DEFAULT_SLOPE_TOL: f64 = 0.3;
pub const DEFAULT_RESIDUAL_CAP: f64 = 0.5;
/// Relative spread below which all norms count as equal.
const DEGENERATE_SPREAD: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingVerdict {
    Pass,
    Fail,
    IdenticallyZero,
    OutsideHypotheses,
}

/// Least-squares power law through `(log R, log norm)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingFit {
    pub r_values: Vec<f64>,
    pub norms: Vec<f64>,
    /// `None` when every norm vanishes.
    pub fitted_slope: Option<f64>,
    pub intercept: Option<f64>,
    /// Max absolute deviation of `log norm` from the fitted line.
    pub residual: f64,
    pub target_slope: f64,
    pub slope_tolerance: f64,
    pub residual_cap: f64,
    /// All norms equal: slope reported as exactly 0.
    pub degenerate: bool,
    pub verdict: ScalingVerdict,
}

impl ScalingFit {
    pub fn passed(&self) -> bool {
        self.verdict == ScalingVerdict::Pass
    }

    /// Marks the fit as outside the hypotheses of the law being probed.
    pub fn outside_hypotheses(mut self) -> Self {
        self.verdict = ScalingVerdict::OutsideHypotheses;
        self
    }

    /// `R,norm` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("R,norm\n");
        for (r, n) in self.r_values.iter().zip(&self.norms) {
            s.push_str(&format!("{r:e},{n:e}\n"));
        }
        s
    }
}

/// `count` points `start * ratio^i`.
pub fn geometric_grid(start: f64, ratio: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| start * ratio.powi(i as i32)).collect()
}

/// Least-squares line through `(xs, ys)`: `(slope, intercept, max |residual|)`.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    mourre_core::fit::fit_line(xs, ys)
}

pub fn scaling_probe(
    family: impl FnMut(f64) -> f64,
    r_grid: &[f64],
    target_slope: f64,
) -> Result<ScalingFit, HsError> {
    scaling_probe_with_tol(family, r_grid, target_slope, DEFAULT_SLOPE_TOL, DEFAULT_RESIDUAL_CAP)
}

/// Evaluates `family` on `r_grid` and fits `log norm` against `log R`.
pub fn scaling_probe_with_tol(
    mut family: impl FnMut(f64) -> f64,
    r_grid: &[f64],
    target_slope: f64,
    slope_tolerance: f64,
    residual_cap: f64,
) -> Result<ScalingFit, HsError> {
    if r_grid.len() < 4 {
        return Err(HsError::TooFewPoints(r_grid.len()));
    }
    if r_grid.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(HsError::BadConfig("scaling grid must be positive".into()));
    }
    let norms: Vec<f64> = r_grid.iter().map(|&r| family(r)).collect();
    if norms.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(HsError::BadConfig("norm family returned a negative or non-finite value".into()));
    }
    let mut fit = ScalingFit {
        r_values: r_grid.to_vec(),
        norms: norms.clone(),
        fitted_slope: None,
        intercept: None,
        residual: 0.0,
        target_slope,
        slope_tolerance,
        residual_cap,
        degenerate: false,
        verdict: ScalingVerdict::IdenticallyZero,
    };
    if norms.contains(&0.0) {
        return Ok(fit);
    }
    let hi = norms.iter().cloned().fold(f64::MIN, f64::max);
    let lo = norms.iter().cloned().fold(f64::MAX, f64::min);
    let xs: Vec<f64> = r_grid.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = norms.iter().map(|v| v.ln()).collect();
    let (slope, intercept, residual) = if hi - lo <= DEGENERATE_SPREAD * hi {
        fit.degenerate = true;
        (0.0, ys.iter().sum::<f64>() / ys.len() as f64, 0.0)
    } else {
        fit_power_law(&xs, &ys)
    };
    fit.fitted_slope = Some(slope);
    fit.intercept = Some(intercept);
    fit.residual = residual;
    fit.verdict = if (slope - target_slope).abs() <= slope_tolerance && residual <= residual_cap {
        ScalingVerdict::Pass
    } else {
        ScalingVerdict::Fail
    };
    Ok(fit)
}
