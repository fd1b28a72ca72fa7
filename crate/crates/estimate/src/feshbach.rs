use mourre_core::linalg;
use mourre_core::norm::operator_norm;
use mourre_core::{Projection, SelfAdjointOperator};
use mourre_symbols::Symbol;
use serde::Serialize;

use crate::{check_dims, EstimateError};

/// Largest admissible `||[H, P]||`, relative to `max(1, ||H||)`.
const INVARIANCE_TOL: f64 = 1e-10;
const ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FeshbachReport {
    /// `||phi(H P^perp) P||`.
    pub kills_range: f64,
    /// `||phi(H P^perp) - phi(H) P^perp||`.
    pub matches_compression: f64,
    pub residual: f64,
}

/// `max(||phi(HP^perp) P||, ||phi(HP^perp) - phi(H) P^perp||)` through the
/// spectral calculus of `HP^perp` and `H` separately.
pub fn feshbach_check(h: &SelfAdjointOperator, p: &Projection, phi: &Symbol) -> Result<FeshbachReport, EstimateError> {
    check_dims(h.dim(), p.dim())?;
    let hm = h.matrix();
    let comm = operator_norm(&linalg::commutator(hm, &p.matrix));
    if comm > INVARIANCE_TOL * h.norm()?.max(1.0) {
        return Err(EstimateError::NonInvariantProjection(comm));
    }
    let at_zero = phi.value(0.0);
    if at_zero.abs() > ZERO_TOL {
        return Err(EstimateError::SymbolNotVanishingAtZero(at_zero));
    }
    let perp = p.complement();
    let hp = SelfAdjointOperator::hermitian(hm.dot(&perp.matrix));
    let f_hp = hp.apply_function(|t| phi.value(t))?.into_matrix();
    let f_h = h.apply_function(|t| phi.value(t))?.into_matrix();
    let kills_range = operator_norm(&f_hp.dot(&p.matrix));
    let matches_compression = operator_norm(&(&f_hp - &f_h.dot(&perp.matrix)));
    Ok(FeshbachReport { kills_range, matches_compression, residual: kills_range.max(matches_compression) })
}
