use mourre_core::RegistryRef;

use crate::{
    artificial_parts, lattice_model, multiplication_model, ArtificialParts, LatticeFlavor, ModelError, ModelInstance,
    DEFAULT_BOX_HALF_WIDTH,
};

pub const MODEL_NAMES: &[&str] = &["lattice", "multiplication", "artificial", "pauli"];

fn count(r: &RegistryRef, key: &str, default: f64) -> Result<usize, ModelError> {
    let v = r.get_or(key, default);
    if !(v >= 0.0 && v.fract() == 0.0 && v < 1e9) {
        return Err(ModelError::BadParameter(format!("{key} must be a non-negative integer, got {v}")));
    }
    Ok(v as usize)
}

/// Resolves a registry reference:
///
/// * `lattice{N=64,periodic=0}`
/// * `multiplication{N=512,L=500}`
/// * `artificial{N0=128,N1=16,lambda=0.4,decay=2,seed=7}`
/// * `pauli`: `H = sigma_x`, `A = sigma_z` on `[-2, 2]`
pub fn build_model(r: &RegistryRef) -> Result<ModelInstance, ModelError> {
    match r.name.as_str() {
        "lattice" => {
            r.check_keys(&["N", "periodic"])?;
            let flavor = match r.get_or("periodic", 0.0) {
                p if p == 0.0 => LatticeFlavor::Dirichlet,
                p if p == 1.0 => LatticeFlavor::Circulant,
                p => return Err(ModelError::BadParameter(format!("periodic must be 0 or 1, got {p}"))),
            };
            lattice_model(count(r, "N", 64.0)?, flavor)
        }
        "multiplication" => {
            r.check_keys(&["N", "L"])?;
            multiplication_model(count(r, "N", 512.0)?, r.get_or("L", DEFAULT_BOX_HALF_WIDTH))
        }
        "artificial" => {
            let decay = r.get_or("decay", 2.0);
            let seed = count(r, "seed", 7.0)? as u64;
            Ok(build_artificial_parts(r)?.instance(decay, seed))
        }
        "pauli" => {
            r.check_keys(&[])?;
            Ok(pauli())
        }
        other => Err(ModelError::RegistryMiss(other.to_string())),
    }
}

/// The blocks of an `artificial{...}` reference, with the same defaults as [`build_model`].
pub fn build_artificial_parts(r: &RegistryRef) -> Result<ArtificialParts, ModelError> {
    if r.name != "artificial" {
        return Err(ModelError::BadParameter(format!("{} is not an artificial model", r.name)));
    }
    r.check_keys(&["N0", "N1", "lambda", "decay", "seed"])?;
    artificial_parts(
        count(r, "N0", 128.0)?,
        count(r, "N1", 16.0)?,
        r.get_or("lambda", 0.4),
        r.get_or("decay", 2.0),
        count(r, "seed", 7.0)? as u64,
    )
}

fn pauli() -> ModelInstance {
    use mourre_core::linalg::c;
    use mourre_core::{CMat, RealInterval, SelfAdjointOperator};
    let mut x = CMat::zeros((2, 2));
    x[[0, 1]] = c(1.0, 0.0);
    x[[1, 0]] = c(1.0, 0.0);
    ModelInstance {
        h: SelfAdjointOperator::hermitian(x).with_label("sigma_x"),
        a: SelfAdjointOperator::diagonal(&[1.0, -1.0]).with_label("sigma_z"),
        recommended_interval: RealInterval::closed(-2.0, 2.0).expect("valid interval"),
        metadata: Default::default(),
        name: "pauli".into(),
    }
}

/// Registry strings of the built-in model suite.
pub fn model_suite() -> Vec<String> {
    [
        "pauli",
        "lattice{N=8,periodic=1}",
        "lattice{N=64,periodic=0}",
        "lattice{N=64,periodic=1}",
        "lattice{N=128,periodic=0}",
        "multiplication{N=64,L=50}",
        "multiplication{N=256,L=500}",
        "artificial{N0=64,N1=8,lambda=0.4,decay=2,seed=1}",
        "artificial{N0=128,N1=16,lambda=0.4,decay=2,seed=7}",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}
