use mourre_core::linalg::{c, C64};
use mourre_core::norm::operator_norm;
use mourre_core::{RealInterval, SelfAdjointOperator, SpectralData};
use mourre_symbols::Symbol;
use serde::Serialize;

use crate::mourre::{commutator_form, compressed_constant};
use crate::{check_dims, EstimateError};

/// Tolerance of the exact spectral identities.
pub const EXACT_TOL: f64 = 1e-10;

/// Tolerance of the `tau theta = theta` precondition on the spectrum.
const SUPPORT_TOL: f64 = 1e-12;

/// `H_tau = H tau(H)`.
pub fn local_hamiltonian(spec: &SpectralData, tau: &Symbol) -> Result<SelfAdjointOperator, EstimateError> {
    Ok(spec.apply(|t| t * tau.value(t))?)
}

/// Eight points `Re z in {lo + |I|/3, lo + 2|I|/3}`, `Im z in {+-0.1, +-0.01}`.
pub fn default_z_samples(interval: &RealInterval) -> Vec<C64> {
    let l = interval.length();
    let mut out = Vec::with_capacity(8);
    for re in [interval.lo + l / 3.0, interval.lo + 2.0 * l / 3.0] {
        for im in [0.1, -0.1, 0.01, -0.01] {
            out.push(c(re, im));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferReport {
    /// Strict constant of `[H, iA]` on `I`.
    pub c: f64,
    /// `lambda_min(theta(H) [H_tau, iA] theta(H) - c theta(H)^2)`; `None` when
    /// `theta` does not vanish on `spec(H)` outside `I` or `c` is vacuous.
    pub form_min: Option<f64>,
    pub form_scale: f64,
    /// `max_z ||(H - z)^{-1} theta(H) - (H_tau - z)^{-1} theta(H)||`.
    pub resolvent_residual: f64,
    pub z_samples: Vec<[f64; 2]>,
}

impl TransferReport {
    pub fn form_ok(&self) -> bool {
        self.form_min.is_none_or(|m| m >= -EXACT_TOL * self.form_scale)
    }

    pub fn passed(&self) -> bool {
        self.form_ok() && self.resolvent_residual <= EXACT_TOL
    }
}

/// Checks the transfer of the Mourre estimate from `H` to `H_tau` and the
/// resolvent identity `(H - z)^{-1} theta(H) = (H_tau - z)^{-1} theta(H)`.
///
/// `(H_tau - z)^{-1}` comes from a separate eigendecomposition of `H_tau`.
pub fn transfer_check(
    h: &SelfAdjointOperator,
    a: &SelfAdjointOperator,
    tau: &Symbol,
    theta: &Symbol,
    interval: &RealInterval,
    z_samples: Option<&[C64]>,
) -> Result<TransferReport, EstimateError> {
    check_dims(h.dim(), a.dim())?;
    let spec = h.spectral()?;
    for &l in spec.eigenvalues.iter() {
        let (tv, th) = (tau.value(l), theta.value(l));
        if (tv * th - th).abs() > SUPPORT_TOL {
            return Err(EstimateError::HypothesisViolated(format!(
                "tau * theta != theta at eigenvalue {l}: tau = {tv}, theta = {th}"
            )));
        }
    }
    let h_tau = SelfAdjointOperator::hermitian(local_hamiltonian(spec, tau)?.into_matrix());
    let theta_h = spec.apply(|t| theta.value(t))?.into_matrix();

    let k = commutator_form(h, a)?;
    let cc = compressed_constant(h, &k, interval, None)?;
    let supported = spec
        .eigenvalues
        .iter()
        .all(|&l| interval.contains_with_tol(l, 1e-12 * spec.spectral_radius()) || theta.value(l).abs() <= SUPPORT_TOL);
    let k_tau = commutator_form(&h_tau, a)?;
    let form_scale = operator_norm(k.matrix()) + if cc.vacuous { 0.0 } else { cc.value.abs() };
    let form_min = if supported && !cc.vacuous {
        let m = theta_h.dot(k_tau.matrix()).dot(&theta_h) - theta_h.dot(&theta_h).mapv(|v| v * cc.value);
        Some(SelfAdjointOperator::hermitian(m).spectral()?.eigenvalues[0])
    } else {
        None
    };

    let zs: Vec<C64> = match z_samples {
        Some(z) => z.to_vec(),
        None => default_z_samples(interval),
    };
    let tau_spec = h_tau.spectral()?;
    let mut resolvent_residual = 0.0f64;
    for &z in &zs {
        let lhs = spec.resolvent(z)?.dot(&theta_h);
        let rhs = tau_spec.resolvent(z)?.dot(&theta_h);
        resolvent_residual = resolvent_residual.max(operator_norm(&(&lhs - &rhs)));
    }
    Ok(TransferReport {
        c: cc.value,
        form_min,
        form_scale,
        resolvent_residual,
        z_samples: zs.iter().map(|z| [z.re, z.im]).collect(),
    })
}
