//! Dense Hermitian spectral engine.
//!
//! Every higher-level computation in the workspace goes through the types
//! defined here: validated self-adjoint matrices with a cached eigensystem,
//! real intervals with deterministic membership, orthogonal projections,
//! the oracle functional calculus and the weighted resolvent kernel
//! `<A>^{-s} (H - z)^{-1} Q <A>^{-s}`.

mod error;
pub mod fit;
pub mod interval;
pub mod linalg;
pub mod matrix_io;
pub mod norm;
pub mod operator;
pub mod projection;
pub mod registry;
pub mod resolvent;

pub use error::OperatorError;
pub use interval::RealInterval;
pub use linalg::{CMat, CVec, C64};
pub use operator::{spectral_decomposition, SelfAdjointOperator, SpectralData};
pub use projection::{spectral_projection, Projection};
pub use registry::RegistryRef;
pub use resolvent::{weighted_resolvent_norm, WeightedResolvent};

/// `<t> = sqrt(1 + t^2)`.
#[inline]
pub fn japanese(t: f64) -> f64 {
    t.hypot(1.0)
}
