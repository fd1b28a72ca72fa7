//! Symbol classes `S^rho`, the cutoff families of the positivity argument and
//! almost-analytic extensions.
//!
//! A [`Symbol`] carries a derivative oracle: closed-form symbols evaluate
//! truncated Taylor series ([`Jet`]) so every derivative up to order 15 is
//! exact to rounding, and products, rescalings and compositions inherit that
//! for free. Symbols known only pointwise fall back to finite differences.

pub mod aae;
pub mod cutoff;
pub mod jet;
pub mod phi_psi;
pub mod registry;
pub mod symbol;

use thiserror::Error;

pub use aae::{almost_analytic, AlmostAnalyticExtension};
pub use cutoff::{make_cutoff_family, CutoffFamily};
pub use jet::Jet;
pub use phi_psi::{h_constant, identity, japanese_power, lorentzian, make_phi_psi, tail, weight, PhiPsi};
pub use registry::{symbol_from_ref, symbol_from_registry};
pub use symbol::{probe_grid, scale_symbol, DerivMode, Symbol};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymbolError {
    #[error("scale must be at least 1, got {0}")]
    BadScale(f64),
    #[error("exponent s must lie in (1/2, 1), got {0}")]
    BadExponent(f64),
    #[error("symbol offers {available} derivatives, {needed} needed")]
    InsufficientDerivatives { needed: usize, available: usize },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("{0}")]
    BadParameter(String),
}
