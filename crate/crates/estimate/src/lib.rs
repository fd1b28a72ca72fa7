//! Mourre constants, Virial residuals, local Hamiltonians `H_tau = H tau(H)`,
//! the resolvent transfer identity, Feshbach identities and eigenvector
//! regularity tables.
//!
//! In finite dimension every compact error is admissible, so a Mourre
//! estimate with compact remainder holds trivially. Reports therefore carry
//! the two constants that do carry information: the strict constant on
//! `Ran E_I(H)` and the projected constant on `Ran E_I(H) P^perp`.

mod feshbach;
mod mourre;
mod regularity;
mod transfer;

use mourre_core::OperatorError;
use thiserror::Error;

pub use feshbach::{feshbach_check, FeshbachReport};
pub use mourre::{
    commutator_form, compressed_constant, mourre_best_constant, virial_check, CompressedConstant, MourreReport,
    VirialCheck, VIRIAL_TOL,
};
pub use regularity::{eigenvector_weight_norms, regularity_probe, EigenWeights, RegularityProbe, RegularityRow};
pub use transfer::{default_z_samples, local_hamiltonian, transfer_check, TransferReport, EXACT_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EstimateError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("projection does not commute with H: ||[H, P]|| = {0:.3e}")]
    NonInvariantProjection(f64),
    #[error("symbol does not vanish at 0: phi(0) = {0:.3e}")]
    SymbolNotVanishingAtZero(f64),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

fn check_dims(x: usize, y: usize) -> Result<(), EstimateError> {
    if x != y {
        return Err(EstimateError::DimensionMismatch(x, y));
    }
    Ok(())
}
