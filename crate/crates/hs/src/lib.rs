//! Helffer-Sjostrand functional calculus by planar quadrature, iterated
//! commutators, commutator expansions with their integral remainder, and
//! power-law scaling probes.
//!
//! Sign conventions used throughout: `ad_A(B) = BA - AB`, and
//! `phi(A) = (1/pi) \int\int dbar phi^C(x+iy) (A - z)^{-1} dx dy`.

pub mod commutator;
pub mod probes;
pub mod quadrature;
pub mod scaling;

use mourre_core::OperatorError;
use mourre_symbols::SymbolError;
use thiserror::Error;

pub use commutator::{ad_iter, commutator_expand, expansion_sign, ExpansionResult, QuadratureRemainder};
pub use quadrature::{hs_apply, HsCertificate, HsOutcome, QuadratureConfig, RECOMMENDED_TAYLOR_ORDER};
pub use scaling::{fit_power_law, geometric_grid, scaling_probe, scaling_probe_with_tol, ScalingFit, ScalingVerdict};

#[derive(Debug, Error, Clone)]
pub enum HsError {
    #[error("quadrature did not converge: certificate {:.3e}", .best.certificate.total())]
    QuadratureNotConverged { best: Box<HsOutcome> },
    #[error("symbol order {0} is not negative and extended validity was not requested")]
    BadSymbolOrder(f64),
    #[error("symbol order {order} is not below expansion order {k}")]
    OrderViolation { order: f64, k: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("scaling probe needs at least 4 grid points, got {0}")]
    TooFewPoints(usize),
    #[error("invalid quadrature configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}
