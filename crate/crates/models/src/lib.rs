//! Built-in operator pairs `(H, A)` parameterized by truncation size.
//!
//! Every constructor is deterministic given its parameters. Models are also
//! addressable by registry strings such as `lattice{N=64}` or
//! `artificial{N0=128,N1=16,lambda=0.4,decay=2,seed=7}`.

mod artificial;
mod lattice;
mod rank_one;
mod registry;
pub mod rng;

use std::collections::BTreeMap;

use mourre_core::{OperatorError, RealInterval, SelfAdjointOperator};
use serde::Serialize;
use thiserror::Error;

pub use artificial::{artificial_example, artificial_parts, ArtificialParts};
pub use lattice::{lattice_model, laplacian, multiplication_model, LatticeFlavor, DEFAULT_BOX_HALF_WIDTH};
pub use rank_one::{basis_vector, rank_one_sum, RankOneSum};
pub use registry::{build_artificial_parts, build_model, model_suite, MODEL_NAMES};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("{model} needs N >= {min}, got {n}")]
    TooSmall { model: &'static str, n: usize, min: usize },
    #[error("{vectors} vectors but {coefficients} coefficients")]
    LengthMismatch { vectors: usize, coefficients: usize },
    #[error("vectors are linearly dependent (smallest Gram eigenvalue {0:.3e})")]
    DependentVectors(f64),
    #[error("vector {index} has ||A^2 g|| = {value:.3e} above the declared bound {bound:.3e}")]
    WeightBoundExceeded { index: usize, value: f64, bound: f64 },
    #[error("[lambda - ||C||, lambda + ||C||] = [{lo}, {hi}] leaves the interval {interval}")]
    IntervalViolation { lo: f64, hi: f64, interval: RealInterval },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unknown model {0:?}")]
    RegistryMiss(String),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// A pair `(H, A)` with the interval on which it is meant to be probed.
#[derive(Debug, Clone)]
pub struct ModelInstance {
    pub h: SelfAdjointOperator,
    pub a: SelfAdjointOperator,
    pub recommended_interval: RealInterval,
    pub metadata: BTreeMap<String, f64>,
    pub name: String,
}

impl ModelInstance {
    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn meta(&self, key: &str) -> Option<f64> {
        self.metadata.get(key).copied()
    }

    pub fn summary(&self) -> ModelSummary {
        ModelSummary {
            name: self.name.clone(),
            dim: self.dim(),
            interval: self.recommended_interval,
            metadata: self.metadata.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelSummary {
    pub name: String,
    pub dim: usize,
    pub interval: RealInterval,
    pub metadata: BTreeMap<String, f64>,
}

fn meta(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}
