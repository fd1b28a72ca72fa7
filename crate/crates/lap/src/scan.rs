use mourre_core::projection::select_indices;
use mourre_core::linalg::c;
use mourre_core::{Projection, RealInterval, SelfAdjointOperator, SpectralData, WeightedResolvent};
use serde::Serialize;

use crate::{growth_slope, LapError, TrendVerdict};

/// Chebyshev points of the real-part grid.
pub const RE_Z_POINTS: usize = 64;

/// Multiple of the mean level spacing below which no scan is run.
const FLOOR_FACTOR: f64 = 3.0;

#[derive(Debug, Clone)]
pub enum ProjectionMode {
    Full,
    /// Multiply the resolvent by `1 - P`.
    Reduced(Projection),
}

impl ProjectionMode {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Full => "full",
            Self::Reduced(_) => "reduced",
        }
    }
}

/// `3 x` the mean spacing of the distinct eigenvalues of `H` in `I`, or
/// `1e-12 x` the spectral radius when `I` holds fewer than two of them.
/// Eigenvalues closer than `1e-10 x` the spectral radius count as one.
pub fn eta_floor(spec: &SpectralData, interval: &RealInterval) -> f64 {
    let radius = spec.spectral_radius().max(1.0);
    let mut distinct: Vec<f64> = Vec::new();
    for j in select_indices(spec, interval) {
        let l = spec.eigenvalues[j];
        if distinct.last().is_none_or(|&p| l - p > 1e-10 * radius) {
            distinct.push(l);
        }
    }
    if distinct.len() >= 2 {
        FLOOR_FACTOR * (distinct[distinct.len() - 1] - distinct[0]) / (distinct.len() - 1) as f64
    } else {
        1e-12 * radius
    }
}

/// `points` values from `ratio * floor` down to `floor`, geometrically spaced.
pub fn geometric_eta_grid(floor: f64, ratio: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![floor * ratio];
    }
    (0..points).map(|i| floor * ratio.powf(1.0 - i as f64 / (points - 1) as f64)).collect()
}

/// 64 Chebyshev points in `I` together with the eigenvalues of `H` in `I`,
/// ascending. The eigenvalues make the supremum exact wherever the kernel
/// peaks on the real axis.
pub fn re_z_grid(spec: &SpectralData, interval: &RealInterval) -> Vec<f64> {
    let mut g = interval.chebyshev_points(RE_Z_POINTS);
    g.extend(select_indices(spec, interval).into_iter().map(|j| spec.eigenvalues[j]));
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

#[derive(Debug, Clone, Serialize)]
pub struct LapScan {
    pub interval: RealInterval,
    pub s: f64,
    pub eta_grid: Vec<f64>,
    pub sup_norms: Vec<f64>,
    /// `Re z` attaining each supremum (smallest on ties).
    pub argmax_re: Vec<f64>,
    pub mode: &'static str,
    pub projection_rank: usize,
    pub growth_slope: f64,
    pub eta_floor: f64,
    pub verdict: TrendVerdict,
}

impl LapScan {
    /// `eta,sup_norm` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eta,sup_norm\n");
        for (e, n) in self.eta_grid.iter().zip(&self.sup_norms) {
            out.push_str(&format!("{e:e},{n:e}\n"));
        }
        out
    }

    /// Two whitespace-separated columns for plotting.
    pub fn to_plot_data(&self) -> String {
        let mut out = format!("# eta sup_norm (s = {}, {})\n", self.s, self.mode);
        for (e, n) in self.eta_grid.iter().zip(&self.sup_norms) {
            out.push_str(&format!("{e:e} {n:e}\n"));
        }
        out
    }

    pub fn verdict_json(&self) -> serde_json::Value {
        serde_json::json!({
            "slope": self.growth_slope,
            "verdict": self.verdict.as_str(),
            "eta_floor": self.eta_floor,
            "mode": self.mode,
            "s": self.s,
        })
    }
}

pub(crate) fn check_eta_grid(eta_grid: &[f64], floor: f64) -> Result<(), LapError> {
    if eta_grid.iter().any(|e| !(e.is_finite() && *e > 0.0)) || eta_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(LapError::BadEtaGrid);
    }
    if let Some(&eta) = eta_grid.iter().find(|&&e| e < floor * (1.0 - 1e-12)) {
        return Err(LapError::EtaBelowFloor { eta, floor });
    }
    Ok(())
}

/// Largest kernel norm over the real-part grid at height `eta`.
pub(crate) fn sup_over_grid(
    kernel: &WeightedResolvent,
    grid: &[f64],
    eta: f64,
) -> Result<(f64, usize, mourre_core::CVec), LapError> {
    let mut best = (-1.0, 0, None);
    let mut warm: Option<mourre_core::CVec> = None;
    for (i, &x) in grid.iter().enumerate() {
        let (n, v) = kernel.top_singular(c(x, eta), warm.as_ref())?;
        if n > best.0 {
            best = (n, i, Some(v.clone()));
        }
        warm = Some(v);
    }
    Ok((best.0, best.1, best.2.expect("grid is nonempty")))
}

/// Supremum of the weighted resolvent norm over `Re z in I` for each `eta`,
/// with the growth slope of `log sup` against `-log eta`.
pub fn lap_scan(
    h: &SelfAdjointOperator,
    a: &SelfAdjointOperator,
    interval: &RealInterval,
    s: f64,
    mode: &ProjectionMode,
    eta_grid: &[f64],
) -> Result<LapScan, LapError> {
    if h.dim() != a.dim() {
        return Err(LapError::DimensionMismatch(h.dim(), a.dim()));
    }
    if eta_grid.len() < 4 {
        return Err(LapError::TooFewPoints(eta_grid.len()));
    }
    let spec = h.spectral()?;
    let floor = eta_floor(spec, interval);
    check_eta_grid(eta_grid, floor)?;
    let (q, rank) = match mode {
        ProjectionMode::Full => (None, 0),
        ProjectionMode::Reduced(p) => (Some(p.complement()), p.rank),
    };
    let kernel = WeightedResolvent::new(h, a.spectral()?, s, q.as_ref())?;
    let grid = re_z_grid(spec, interval);
    let mut sup_norms = Vec::with_capacity(eta_grid.len());
    let mut argmax_re = Vec::with_capacity(eta_grid.len());
    for &eta in eta_grid {
        let (n, i, _) = sup_over_grid(&kernel, &grid, eta)?;
        sup_norms.push(n);
        argmax_re.push(grid[i]);
    }
    let slope = growth_slope(eta_grid, &sup_norms);
    Ok(LapScan {
        interval: *interval,
        s,
        eta_grid: eta_grid.to_vec(),
        sup_norms,
        argmax_re,
        mode: mode.name(),
        projection_rank: rank,
        growth_slope: slope,
        eta_floor: floor,
        verdict: TrendVerdict::from_slope(slope),
    })
}
