//! Scenario files: top-level keys, an optional `[tolerances]` table and one
//! `[[operation]]` section per operation.
//!
//! ```toml
//! name = "lattice"
//! model = "lattice{N=64}"
//! seed = 7
//!
//! [tolerances]
//! virial = 1e-10
//!
//! [[operation]]
//! op = "mourre"
//! interval = "0.3:0.7"
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use mourre_core::RealInterval;
use serde::{Deserialize, Serialize};

use crate::HarnessError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub model: Option<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default, rename = "operation")]
    pub operations: Vec<Operation>,
}

fn default_seed() -> u64 {
    7
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Operation {
    /// Helffer-Sjostrand evaluation against the spectral oracle on random matrices.
    HsVerify {
        symbols: Vec<String>,
        #[serde(default = "default_cases")]
        cases: usize,
        #[serde(default = "default_max_dim")]
        max_dim: usize,
    },
    Mourre {
        interval: Option<String>,
        #[serde(default = "default_projection")]
        projection: String,
    },
    Virial {
        interval: Option<String>,
    },
    Lap {
        interval: Option<String>,
        s: f64,
        eta: Option<String>,
        #[serde(default = "default_projection")]
        projection: String,
        /// `bounded` or `divergent`; without it the trend is only reported.
        expect: Option<String>,
    },
    Sequence {
        interval: Option<String>,
        s: f64,
        eta: Option<String>,
    },
    Propagation {
        interval: Option<String>,
        s: f64,
        times: Vec<f64>,
        /// `eigen`, `uniform` or `basis:k`.
        #[serde(default = "default_vector")]
        vector: String,
    },
    Transfer {
        interval: Option<String>,
    },
    Feshbach {
        interval: Option<String>,
        #[serde(default = "default_feshbach_projection")]
        projection: String,
    },
    RankOne,
    RemainderScaling {
        rho: f64,
        s: f64,
        s_prime: f64,
        k: usize,
        #[serde(default = "default_half_width")]
        half_width: usize,
        r_grid: Option<Vec<f64>>,
    },
    CutoffScaling {
        s: f64,
        alpha: f64,
        #[serde(default = "default_half_width")]
        half_width: usize,
        r_grid: Option<Vec<f64>>,
    },
    Example45 {
        #[serde(default = "default_example_s")]
        s: f64,
    },
}

fn default_cases() -> usize {
    10
}
fn default_max_dim() -> usize {
    32
}
fn default_projection() -> String {
    "none".into()
}
fn default_feshbach_projection() -> String {
    "spectral".into()
}
fn default_vector() -> String {
    "eigen".into()
}
fn default_half_width() -> usize {
    256
}
fn default_example_s() -> f64 {
    0.7
}

impl Operation {
    pub fn name(&self) -> &'static str {
        match self {
            Self::HsVerify { .. } => "hs-verify",
            Self::Mourre { .. } => "mourre",
            Self::Virial { .. } => "virial",
            Self::Lap { .. } => "lap",
            Self::Sequence { .. } => "sequence",
            Self::Propagation { .. } => "propagation",
            Self::Transfer { .. } => "transfer",
            Self::Feshbach { .. } => "feshbach",
            Self::RankOne => "rank-one",
            Self::RemainderScaling { .. } => "remainder-scaling",
            Self::CutoffScaling { .. } => "cutoff-scaling",
            Self::Example45 { .. } => "example45",
        }
    }

    /// The quantity the operation checks.
    pub fn tag(&self) -> &'static str {
        match self {
            Self::HsVerify { .. } => "almost-analytic functional calculus vs spectral oracle",
            Self::Mourre { .. } => "best Mourre constants of [H, iA] on the interval",
            Self::Virial { .. } => "virial identity for eigenvectors",
            Self::Lap { .. } => "weighted resolvent growth as eta -> 0",
            Self::Sequence { .. } => "special sequence normalization and virial-like decay",
            Self::Propagation { .. } => "integrated weighted propagation J(T)",
            Self::Transfer { .. } => "Mourre estimate transfer to a localized operator",
            Self::Feshbach { .. } => "functional calculus of the compressed operator",
            Self::RankOne => "rank-one sum commutator identity",
            Self::RemainderScaling { .. } => "commutator expansion remainder decay in R",
            Self::CutoffScaling { .. } => "square-root cutoff norm and commutator decay in R",
            Self::Example45 { .. } => "strict vs projected Mourre estimate dichotomy",
        }
    }
}

/// Named thresholds with their defaults.
pub const TOLERANCES: &[(&str, f64)] = &[
    ("hs", 1e-6),
    ("identity", 1e-10),
    ("virial", 1e-10),
    ("rank_one", 1e-12),
    ("bounded_slope", 0.1),
    ("divergent_slope", 0.4),
    ("scaling_slope", 0.3),
    ("cutoff_norm_slope", 0.15),
    ("propagation", 1e-10),
    ("strict_constant", 1e-8),
    ("projected_ratio", 0.5),
];

/// Defaults overridden by `overrides`; unknown names are errors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances(BTreeMap<String, f64>);

impl Tolerances {
    pub fn resolve(overrides: &BTreeMap<String, f64>) -> Result<Self, HarnessError> {
        let mut map: BTreeMap<String, f64> = TOLERANCES.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        for (k, v) in overrides {
            if !map.contains_key(k) {
                let known: Vec<&str> = TOLERANCES.iter().map(|(k, _)| *k).collect();
                return Err(HarnessError::Parse(format!("unknown tolerance {k:?}; known: {}", known.join(", "))));
            }
            if !(v.is_finite() && *v >= 0.0) {
                return Err(HarnessError::Parse(format!("tolerance {k} must be finite and nonnegative, got {v}")));
            }
            map.insert(k.clone(), *v);
        }
        Ok(Self(map))
    }

    pub fn get(&self, name: &str) -> f64 {
        *self.0.get(name).unwrap_or_else(|| panic!("tolerance {name} is not registered"))
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::resolve(&BTreeMap::new()).expect("defaults are valid")
    }
}

/// `name=value` as given to `--tol`.
pub fn parse_tolerance(text: &str) -> Result<(String, f64), HarnessError> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| HarnessError::Parse(format!("expected name=value, got {text:?}")))?;
    let v: f64 = v.trim().parse().map_err(|_| HarnessError::Parse(format!("bad tolerance value in {text:?}")))?;
    Ok((k.trim().to_string(), v))
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            HarnessError::Parse(m) => HarnessError::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }
}

pub fn parse_interval(text: &str) -> Result<RealInterval, HarnessError> {
    text.parse().map_err(|e: mourre_core::OperatorError| HarnessError::Parse(e.to_string()))
}

/// `min:max:points` as a decreasing geometric grid from `max` to `min`.
pub fn parse_eta(text: &str) -> Result<Vec<f64>, HarnessError> {
    let bad = || HarnessError::Parse(format!("expected min:max:points for eta, got {text:?}"));
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let n: usize = parts[2].parse().map_err(|_| bad())?;
    if !(lo > 0.0 && hi > lo && n >= 2) {
        return Err(HarnessError::Parse(format!("eta needs 0 < min < max and at least 2 points, got {text:?}")));
    }
    Ok(mourre_lap::geometric_eta_grid(lo, hi / lo, n))
}
