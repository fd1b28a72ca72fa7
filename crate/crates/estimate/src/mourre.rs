use mourre_core::linalg::{self, c};
use mourre_core::norm::operator_norm;
use mourre_core::projection::select_indices;
use mourre_core::{Projection, RealInterval, SelfAdjointOperator};
use ndarray::{s, Array2};
use serde::Serialize;

use crate::{check_dims, EstimateError};

/// Relative Virial tolerance: residuals are compared with `VIRIAL_TOL * ||[H, iA]||`.
pub const VIRIAL_TOL: f64 = 1e-10;

/// Gram eigenvalues of `E_I P^perp` below this count as outside its range.
const RANGE_TOL: f64 = 1e-8;

/// `[H, iA] = i(HA - AH)`, Hermitian up to rounding and symmetrized.
pub fn commutator_form(h: &SelfAdjointOperator, a: &SelfAdjointOperator) -> Result<SelfAdjointOperator, EstimateError> {
    check_dims(h.dim(), a.dim())?;
    let k = linalg::commutator(h.matrix(), a.matrix()).mapv(|v| v * c(0.0, 1.0));
    Ok(SelfAdjointOperator::hermitian(k))
}

/// The smallest eigenvalue of the commutator form on a compressed range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompressedConstant {
    /// `+inf` when the range is `{0}`.
    pub value: f64,
    pub range_dim: usize,
    pub vacuous: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MourreReport {
    pub interval: RealInterval,
    pub c_strict: CompressedConstant,
    pub c_projected: CompressedConstant,
    pub eigenvalues_in_interval: Vec<f64>,
    pub virial_residuals: Vec<f64>,
    pub commutator_norm: f64,
    pub projection_rank: usize,
}

impl MourreReport {
    pub fn virial_max_residual(&self) -> f64 {
        self.virial_residuals.iter().cloned().fold(0.0, f64::max)
    }

    pub fn flags(&self) -> Vec<&'static str> {
        let mut f = Vec::new();
        if self.c_strict.vacuous {
            f.push("strict_compression_vacuous");
        }
        if self.c_projected.vacuous {
            f.push("projected_compression_vacuous");
        }
        if !self.eigenvalues_in_interval.is_empty() {
            f.push("point_spectrum_in_interval");
        }
        f
    }

    /// `{interval, c_strict, c_projected, eigenvalues, virial_max_residual, flags}`;
    /// infinite constants serialize as `null` and are named in `flags`.
    pub fn to_json(&self) -> serde_json::Value {
        let num = |x: f64| if x.is_finite() { serde_json::json!(x) } else { serde_json::Value::Null };
        serde_json::json!({
            "interval": [self.interval.lo, self.interval.hi],
            "c_strict": num(self.c_strict.value),
            "c_projected": num(self.c_projected.value),
            "eigenvalues": self.eigenvalues_in_interval,
            "virial_max_residual": self.virial_max_residual(),
            "commutator_norm": self.commutator_norm,
            "projection_rank": self.projection_rank,
            "flags": self.flags(),
        })
    }
}

/// `lambda_min` of `[H, iA]` on `Ran(E_I(H) P^perp)`, computed in an orthonormal
/// basis of that range (`P = 0` when `p` is `None`).
pub fn compressed_constant(
    h: &SelfAdjointOperator,
    k: &SelfAdjointOperator,
    interval: &RealInterval,
    p: Option<&Projection>,
) -> Result<CompressedConstant, EstimateError> {
    check_dims(h.dim(), k.dim())?;
    let spec = h.spectral()?;
    let idx = select_indices(spec, interval);
    if idx.is_empty() {
        return Ok(CompressedConstant { value: f64::INFINITY, range_dim: 0, vacuous: true });
    }
    let vi = spec.eigenvectors.slice(s![.., idx[0]..=idx[idx.len() - 1]]).to_owned();
    let vih = linalg::dagger(&vi.view());
    let ki = vih.dot(k.matrix()).dot(&vi);
    let basis: Array2<_> = match p {
        None => linalg::identity(idx.len()),
        Some(p) => {
            check_dims(h.dim(), p.dim())?;
            // Ran(E_I P^perp) = V_I Ran(V_I^H P^perp V_I).
            let perp = p.complement();
            let g = SelfAdjointOperator::hermitian(vih.dot(&perp.matrix).dot(&vi));
            let gs = g.spectral()?;
            let keep: Vec<usize> = (0..idx.len()).filter(|&j| gs.eigenvalues[j] > RANGE_TOL).collect();
            if keep.is_empty() {
                return Ok(CompressedConstant { value: f64::INFINITY, range_dim: 0, vacuous: true });
            }
            gs.eigenvectors.select(ndarray::Axis(1), &keep)
        }
    };
    let m = SelfAdjointOperator::hermitian(linalg::dagger(&basis.view()).dot(&ki).dot(&basis));
    let value = m.spectral()?.eigenvalues[0];
    Ok(CompressedConstant { value, range_dim: basis.ncols(), vacuous: false })
}

/// Strict (`P = 0`) and projected constants of `[H, iA]` on `I`.
pub fn mourre_best_constant(
    h: &SelfAdjointOperator,
    a: &SelfAdjointOperator,
    interval: &RealInterval,
    p: Option<&Projection>,
) -> Result<MourreReport, EstimateError> {
    let k = commutator_form(h, a)?;
    let c_strict = compressed_constant(h, &k, interval, None)?;
    let c_projected = match p {
        Some(p) => compressed_constant(h, &k, interval, Some(p))?,
        None => c_strict,
    };
    let spec = h.spectral()?;
    let idx = select_indices(spec, interval);
    let virial = residuals(&k, spec, &idx);
    Ok(MourreReport {
        interval: *interval,
        c_strict,
        c_projected,
        eigenvalues_in_interval: idx.iter().map(|&j| spec.eigenvalues[j]).collect(),
        virial_residuals: virial,
        commutator_norm: operator_norm(k.matrix()),
        projection_rank: p.map_or(0, |p| p.rank),
    })
}

fn residuals(k: &SelfAdjointOperator, spec: &mourre_core::SpectralData, idx: &[usize]) -> Vec<f64> {
    idx.iter()
        .map(|&j| {
            let f = spec.eigenvectors.column(j).to_owned();
            linalg::inner(&f, &k.matrix().dot(&f)).norm()
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct VirialCheck {
    pub eigenvalues: Vec<f64>,
    /// `|<f, [H, iA] f>|` per eigenpair with eigenvalue in `I`.
    pub residuals: Vec<f64>,
    pub commutator_norm: f64,
    pub tol: f64,
    pub passed: bool,
}

impl VirialCheck {
    pub fn max_relative(&self) -> f64 {
        let m = self.residuals.iter().cloned().fold(0.0, f64::max);
        if self.commutator_norm > 0.0 {
            m / self.commutator_norm
        } else {
            m
        }
    }
}

/// Virial residuals; passes when every residual is at most `tol * ||[H, iA]||`.
pub fn virial_check(
    h: &SelfAdjointOperator,
    a: &SelfAdjointOperator,
    interval: &RealInterval,
    tol: f64,
) -> Result<VirialCheck, EstimateError> {
    let k = commutator_form(h, a)?;
    let spec = h.spectral()?;
    let idx = select_indices(spec, interval);
    let residuals = residuals(&k, spec, &idx);
    let commutator_norm = operator_norm(k.matrix());
    let passed = residuals.iter().all(|&r| r <= tol * commutator_norm);
    Ok(VirialCheck {
        eigenvalues: idx.iter().map(|&j| spec.eigenvalues[j]).collect(),
        residuals,
        commutator_norm,
        tol,
        passed,
    })
}
