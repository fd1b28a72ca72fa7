use mourre_core::linalg;
use mourre_core::norm::operator_norm;
use mourre_core::projection::select_indices;
use mourre_core::{RealInterval, SelfAdjointOperator};
use serde::Serialize;

use crate::{check_dims, EstimateError};

/// `||A^j f||` for `j = 0..=k-2` and one eigenpair `(lambda, f)`.
#[derive(Debug, Clone, Serialize)]
pub struct EigenWeights {
    pub eigenvalue: f64,
    pub norms: Vec<f64>,
}

/// One row per eigenpair of `H` with eigenvalue in `I`.
pub fn eigenvector_weight_norms(
    h: &SelfAdjointOperator,
    a: &SelfAdjointOperator,
    interval: &RealInterval,
    k: usize,
) -> Result<Vec<EigenWeights>, EstimateError> {
    check_dims(h.dim(), a.dim())?;
    let spec = h.spectral()?;
    let top = k.saturating_sub(2);
    Ok(select_indices(spec, interval)
        .into_iter()
        .map(|j| {
            let mut f = spec.eigenvectors.column(j).to_owned();
            let mut norms = vec![linalg::vec_norm(&f)];
            for _ in 0..top {
                f = a.matrix().dot(&f);
                norms.push(linalg::vec_norm(&f));
            }
            EigenWeights { eigenvalue: spec.eigenvalues[j], norms }
        })
        .collect())
}

/// Per truncation size: the largest `||A^j f||` over eigenvectors in `I` and
/// `||ad_A^p(H)||` for `p = 1..=k`.
#[derive(Debug, Clone, Serialize)]
pub struct RegularityRow {
    pub dim: usize,
    pub eigenvector_norms: Vec<f64>,
    pub commutator_norms: Vec<f64>,
}

/// Uniform-in-`N` table over a truncation family, labelled as a regularity
/// probe: finite tables cannot decide membership in a regularity class.
#[derive(Debug, Clone, Serialize)]
pub struct RegularityProbe {
    pub label: &'static str,
    pub k: usize,
    pub rows: Vec<RegularityRow>,
}

impl RegularityProbe {
    /// `max_N / min_N` of each column of eigenvector norms.
    pub fn eigenvector_spread(&self) -> Vec<f64> {
        spread(self.rows.iter().map(|r| &r.eigenvector_norms))
    }

    pub fn commutator_spread(&self) -> Vec<f64> {
        spread(self.rows.iter().map(|r| &r.commutator_norms))
    }
}

fn spread<'a>(cols: impl Iterator<Item = &'a Vec<f64>> + Clone) -> Vec<f64> {
    let width = cols.clone().map(|c| c.len()).min().unwrap_or(0);
    (0..width)
        .map(|j| {
            let hi = cols.clone().map(|c| c[j]).fold(f64::MIN, f64::max);
            let lo = cols.clone().map(|c| c[j]).fold(f64::MAX, f64::min);
            if lo > 0.0 {
                hi / lo
            } else {
                f64::INFINITY
            }
        })
        .collect()
}

pub fn regularity_probe(
    family: &[(SelfAdjointOperator, SelfAdjointOperator)],
    interval: &RealInterval,
    k: usize,
) -> Result<RegularityProbe, EstimateError> {
    let mut rows = Vec::with_capacity(family.len());
    for (h, a) in family {
        let table = eigenvector_weight_norms(h, a, interval, k)?;
        let width = k.saturating_sub(2) + 1;
        let eigenvector_norms =
            (0..width).map(|j| table.iter().map(|r| r.norms[j]).fold(0.0, f64::max)).collect();
        let mut x = h.matrix().clone();
        let mut commutator_norms = Vec::with_capacity(k);
        for _ in 0..k {
            x = linalg::commutator(&x, a.matrix());
            commutator_norms.push(operator_norm(&x));
        }
        rows.push(RegularityRow { dim: h.dim(), eigenvector_norms, commutator_norms });
    }
    Ok(RegularityProbe { label: "regularity probe", k, rows })
}
