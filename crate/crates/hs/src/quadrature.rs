use mourre_core::linalg::{self, CMat};
use mourre_core::{japanese, SelfAdjointOperator, SpectralData, C64};
use mourre_symbols::aae::{Column, Profile};
use mourre_symbols::{make_cutoff_family, scale_symbol, AlmostAnalyticExtension};
use ndarray::Array1;
use serde::Serialize;

use crate::HsError;

/// Taylor order of the almost-analytic extension that balances the strip
/// bound against the growth of high derivatives of the cutoffs.
pub const RECOMMENDED_TAYLOR_ORDER: usize = 4;

/// Midpoint quadrature over `x in [a, b]`, `u = y / (c2 <x>) in [-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    /// Cells per unit length along `x` at the coarsest level.
    pub x_cells: usize,
    /// Cells along `u` at the coarsest level; must be even so `y = 0` is a cell edge.
    pub y_cells: usize,
    /// Half-width of the skipped strip `|y| < y_floor`; `None` selects
    /// `1e-4 * max(min eigengap, 1e-8)`.
    pub y_floor: Option<f64>,
    /// Number of dyadic refinements after the coarsest level.
    pub refinement_levels: usize,
    pub target_rel_error: f64,
    /// Accept symbols of order `>= 0` by localizing them to the spectrum.
    pub extended_validity: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            x_cells: 16,
            y_cells: 16,
            y_floor: None,
            refinement_levels: 5,
            target_rel_error: 1e-8,
            extended_validity: false,
        }
    }
}

/// Error certificate of a quadrature result, relative to its Frobenius norm
/// (or to `1e-3 sqrt(n) max |phi|` when that is larger).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HsCertificate {
    /// Relative Frobenius difference of the last two levels.
    pub level_difference: f64,
    /// Error estimate of the last level assuming geometric convergence
    /// across levels; never larger than `level_difference`.
    pub error_estimate: f64,
    /// Relative differences between successive levels.
    pub history: Vec<f64>,
    pub strip_bound: f64,
    pub levels_used: usize,
    /// Total cells along `x` at the last level.
    pub x_cells: usize,
    pub y_cells: usize,
    pub y_floor: f64,
    pub x_range: (f64, f64),
    pub localized: bool,
    pub converged: bool,
}

impl HsCertificate {
    pub fn total(&self) -> f64 {
        self.error_estimate + self.strip_bound
    }
}

#[derive(Debug, Clone)]
pub struct HsOutcome {
    pub operator: SelfAdjointOperator,
    pub certificate: HsCertificate,
}

/// Extension whose base is compactly supported, localized to `[-R', R']`
/// with `R' = spectral radius + 1` when needed.
pub(crate) fn localized_extension(
    ext: &AlmostAnalyticExtension,
    spec: &SpectralData,
    extended: bool,
) -> Result<(AlmostAnalyticExtension, (f64, f64), bool), HsError> {
    let base = ext.base();
    if let Some(s) = base.support() {
        if s.lo.is_finite() && s.hi.is_finite() {
            return Ok((ext.clone(), (s.lo, s.hi), false));
        }
    }
    if base.order() >= 0.0 && !extended {
        return Err(HsError::BadSymbolOrder(base.order()));
    }
    let r = spec.spectral_radius() + 1.0;
    let family = make_cutoff_family();
    let chi_r = scale_symbol(&family.chi, r)?;
    let local = base.product(&chi_r).with_scale(r);
    let support = local.support().expect("localized symbol has support");
    let e = ext.rebase(&local)?;
    Ok((e, (support.lo, support.hi), true))
}

pub(crate) fn default_y_floor(spec: &SpectralData) -> f64 {
    let gap = spec.min_gap();
    let gap = if gap.is_finite() { gap.max(1e-8) } else { 1.0 };
    1e-4 * gap
}

/// One quadrature pass over the upper half of the support cone.
///
/// `kernel(x, y, w_dbar, out)` receives the weighted value of `dbar` at
/// `(x, y)` with `y > 0`; the lower half is the complex conjugate image for
/// real symbols and is accounted for by the kernel.
pub(crate) fn sweep(
    ext: &AlmostAnalyticExtension,
    x_range: (f64, f64),
    nx: usize,
    nu_half: usize,
    y_floor: f64,
    out: &mut [f64],
    kernel: &mut dyn FnMut(f64, f64, C64, &mut [f64]),
) {
    out.iter_mut().for_each(|v| *v = 0.0);
    let (a, b) = x_range;
    let dx = (b - a) / nx as f64;
    let du = 1.0 / nu_half as f64;
    let us: Vec<f64> = (0..nu_half).map(|j| (j as f64 + 0.5) * du).collect();
    let profiles: Vec<Profile> = us.iter().map(|&u| ext.profile(u)).collect();
    let c2 = ext.c2();
    for i in 0..nx {
        let x = a + (i as f64 + 0.5) * dx;
        let col: Column = ext.column(x);
        if col.d.iter().all(|v| *v == 0.0) {
            continue;
        }
        let jac = dx * du * c2 * col.jx;
        for (&u, &p) in us.iter().zip(profiles.iter()) {
            let y = c2 * col.jx * u;
            if y < y_floor {
                continue;
            }
            let db = ext.dbar_at(&col, u, p);
            if db.re == 0.0 && db.im == 0.0 {
                continue;
            }
            kernel(x, y, db * jac, out);
        }
    }
}

/// Bound on the skipped strip `|y| < y_floor` for a kernel bounded by
/// `|y|^{-p}`: `(1/pi) c1 2 y_floor^{l+1-p} / (l+1-p) \int <x>^{rho-1-l} dx`.
pub(crate) fn strip_bound(ext: &AlmostAnalyticExtension, x_range: (f64, f64), y_floor: f64, p: usize) -> f64 {
    let l = ext.taylor_order();
    let rho = ext.base().order();
    let e = (l + 1 - p) as f64;
    let (a, b) = x_range;
    let n = 2048;
    let dx = (b - a) / n as f64;
    let integral: f64 = (0..n)
        .map(|i| japanese(a + (i as f64 + 0.5) * dx).powf(rho - 1.0 - l as f64) * dx)
        .sum();
    std::f64::consts::FRAC_1_PI * ext.c1() * 2.0 * y_floor.powf(e) / e * integral
}

pub(crate) struct Refined {
    pub matrix: CMat,
    pub history: Vec<f64>,
    pub estimate: f64,
    pub level: usize,
    pub nx: usize,
    pub nu: usize,
}

/// Geometric extrapolation of the error of the finest level from the
/// differences between successive levels.
pub(crate) fn extrapolated_error(history: &[f64]) -> f64 {
    match history {
        [] => f64::INFINITY,
        [d] => *d,
        [.., p, d] if p > d && *p > 0.0 => d * (d / p).sqrt(),
        [.., d] => *d,
    }
}

/// Refines dyadically until the extrapolated error plus `floor` drops below
/// the target.
///
/// `finish` maps the raw accumulator to a matrix; errors are Frobenius
/// differences of those matrices relative to `max(||m||_F, reference)`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn refine(
    ext: &AlmostAnalyticExtension,
    x_range: (f64, f64),
    q: &QuadratureConfig,
    y_floor: f64,
    reference: f64,
    floor: &dyn Fn(&CMat) -> f64,
    n_out: usize,
    kernel: &mut dyn FnMut(f64, f64, C64, &mut [f64]),
    finish: &dyn Fn(&[f64]) -> CMat,
) -> Result<(Refined, bool), HsError> {
    if q.x_cells == 0 || q.y_cells < 2 || !q.y_cells.is_multiple_of(2) {
        return Err(HsError::BadConfig("x_cells must be positive and y_cells even and at least 2".into()));
    }
    let mut out = vec![0.0; n_out];
    let mut prev: Option<CMat> = None;
    let mut history = Vec::new();
    let nx0 = ((x_range.1 - x_range.0) * q.x_cells as f64).ceil().max(1.0) as usize;
    let mut level = 0;
    loop {
        let nx = nx0 << level;
        let nu = q.y_cells << level;
        sweep(ext, x_range, nx, nu / 2, y_floor, &mut out, kernel);
        let m = finish(&out);
        if let Some(p) = &prev {
            let scale = linalg::frobenius(&m).max(reference);
            let d = linalg::frobenius(&(p - &m));
            history.push(if scale > 0.0 { d / scale } else { d });
        }
        let estimate = extrapolated_error(&history);
        let done = estimate + floor(&m) <= q.target_rel_error;
        if done || level == q.refinement_levels {
            let r = Refined { matrix: m, history, estimate, level, nx, nu };
            return Ok((r, done));
        }
        prev = Some(m);
        level += 1;
    }
}

/// `phi(A)` from the Helffer-Sjostrand integral, evaluated in `A`'s eigenbasis.
pub fn hs_apply(
    a: &SelfAdjointOperator,
    ext: &AlmostAnalyticExtension,
    q: &QuadratureConfig,
) -> Result<HsOutcome, HsError> {
    let spec = a.spectral()?;
    let (ext, x_range, localized) = localized_extension(ext, spec, q.extended_validity)?;
    let y_floor = q.y_floor.unwrap_or_else(|| default_y_floor(spec));
    let lam: Vec<f64> = spec.eigenvalues.to_vec();
    let n = lam.len();
    // g(lambda) = (2/pi) Re \int\int_{y>0} dbar / (lambda - z).
    let mut kernel = |x: f64, y: f64, wd: C64, out: &mut [f64]| {
        for (k, &l) in lam.iter().enumerate() {
            let d = l - x;
            out[k] += (wd.re * d - wd.im * y) / (d * d + y * y);
        }
    };
    let scale = 2.0 * std::f64::consts::FRAC_1_PI;
    let finish = |out: &[f64]| -> CMat {
        let d = Array1::from_iter(out.iter().map(|v| C64::new(scale * v, 0.0)));
        spec.compose(&d)
    };
    let strip_abs = strip_bound(&ext, x_range, y_floor, 1) * (n as f64).sqrt();
    // Results that vanish on the spectrum are measured against the size of
    // the symbol itself.
    let reference = 1e-3 * (n as f64).sqrt() * symbol_scale(&ext, x_range);
    let floor = |m: &CMat| relative(strip_abs, m, reference);
    let (r, converged) = refine(&ext, x_range, q, y_floor, reference, &floor, n, &mut kernel, &finish)?;
    let certificate = HsCertificate {
        level_difference: r.history.last().copied().unwrap_or(f64::INFINITY),
        error_estimate: r.estimate,
        history: r.history,
        strip_bound: relative(strip_abs, &r.matrix, reference),
        levels_used: r.level,
        x_cells: r.nx,
        y_cells: r.nu,
        y_floor,
        x_range,
        localized,
        converged,
    };
    let outcome = HsOutcome { operator: SelfAdjointOperator::hermitian(r.matrix), certificate };
    if converged {
        Ok(outcome)
    } else {
        Err(HsError::QuadratureNotConverged { best: Box::new(outcome) })
    }
}

/// `abs / max(||m||_F, reference)`, absolute when both vanish.
pub(crate) fn relative(abs: f64, m: &CMat, reference: f64) -> f64 {
    let n = linalg::frobenius(m).max(reference);
    if n > 0.0 {
        abs / n
    } else {
        abs
    }
}

/// `max |phi|` on a uniform sample of the integration interval.
fn symbol_scale(ext: &AlmostAnalyticExtension, (a, b): (f64, f64)) -> f64 {
    let n = 1024;
    (0..=n).map(|i| ext.base().value(a + (b - a) * i as f64 / n as f64).abs()).fold(0.0, f64::max)
}
