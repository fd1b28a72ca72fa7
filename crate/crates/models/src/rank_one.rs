use mourre_core::linalg::{self, c, CMat, CVec};
use mourre_core::norm::operator_norm;
use mourre_core::SelfAdjointOperator;

use crate::ModelError;

/// Relative Gram-eigenvalue threshold below which vectors count as dependent.
const DEPENDENCE_TOL: f64 = 1e-12;

/// `C = sum_{n < M} alpha_n g_n g_n^H` with its diagnostics.
#[derive(Debug, Clone)]
pub struct RankOneSum {
    pub c: SelfAdjointOperator,
    pub terms_used: usize,
    /// `sum_{n >= M} |alpha_n| ||g_n||^2` over the supplied coefficients.
    pub tail_bound: f64,
    /// `||A1^2 g_n||` for the terms used.
    pub weight_norms: Vec<f64>,
    /// Smallest eigenvalue of the Gram matrix of the terms used, relative to the largest.
    pub gram_condition: f64,
    /// `||[C, A1] - sum alpha_n (g_n (A1 g_n)^H - (A1 g_n) g_n^H)||_max`.
    pub commutator_identity_residual: f64,
}

/// Builds `C` from the first `truncation` terms (all terms when `None`).
///
/// `weight_bound`, when given, must dominate every `||A1^2 g_n||`.
pub fn rank_one_sum(
    a1: &SelfAdjointOperator,
    g: &[CVec],
    alpha: &[f64],
    truncation: Option<usize>,
    weight_bound: Option<f64>,
) -> Result<RankOneSum, ModelError> {
    if g.len() != alpha.len() {
        return Err(ModelError::LengthMismatch { vectors: g.len(), coefficients: alpha.len() });
    }
    let n = a1.dim();
    if let Some(v) = g.iter().find(|v| v.len() != n) {
        return Err(ModelError::Operator(mourre_core::OperatorError::DimensionMismatch(n, v.len())));
    }
    let m = truncation.unwrap_or(g.len()).min(g.len());
    let used = &g[..m];
    let gram_condition = gram_condition(used)?;
    if m > 0 && !(gram_condition > DEPENDENCE_TOL) {
        return Err(ModelError::DependentVectors(gram_condition));
    }
    let a = a1.matrix();
    let mut weight_norms = Vec::with_capacity(m);
    for (i, v) in used.iter().enumerate() {
        let w = linalg::vec_norm(&a.dot(&a.dot(v)));
        if let Some(bound) = weight_bound {
            if w > bound {
                return Err(ModelError::WeightBoundExceeded { index: i, value: w, bound });
            }
        }
        weight_norms.push(w);
    }
    let mut cm = CMat::zeros((n, n));
    let mut expected = CMat::zeros((n, n));
    for (v, &al) in used.iter().zip(alpha) {
        let av = a.dot(v);
        for i in 0..n {
            for j in 0..n {
                cm[[i, j]] += v[i] * v[j].conj() * al;
                expected[[i, j]] += (v[i] * av[j].conj() - av[i] * v[j].conj()) * al;
            }
        }
    }
    let c_op = SelfAdjointOperator::hermitian(cm);
    let comm = linalg::commutator(c_op.matrix(), a);
    let tail_bound = g[m..].iter().zip(&alpha[m..]).map(|(v, al)| al.abs() * linalg::vec_norm(v).powi(2)).sum();
    Ok(RankOneSum {
        c: c_op,
        terms_used: m,
        tail_bound,
        weight_norms,
        gram_condition,
        commutator_identity_residual: linalg::max_abs_diff(&comm, &expected),
    })
}

impl RankOneSum {
    pub fn norm(&self) -> f64 {
        operator_norm(self.c.matrix())
    }
}

fn gram_condition(g: &[CVec]) -> Result<f64, ModelError> {
    if g.is_empty() {
        return Ok(1.0);
    }
    let m = g.len();
    let mut gram = CMat::zeros((m, m));
    for i in 0..m {
        for j in 0..m {
            gram[[i, j]] = linalg::inner(&g[i], &g[j]);
        }
    }
    let spec = SelfAdjointOperator::hermitian(gram);
    let ev = &spec.spectral()?.eigenvalues;
    let top = ev[m - 1];
    Ok(if top > 0.0 { ev[0].max(0.0) / top } else { 0.0 })
}

/// `g` as a column vector helper for tests and callers building basis vectors.
pub fn basis_vector(n: usize, k: usize) -> CVec {
    let mut v = CVec::zeros(n);
    v[k] = c(1.0, 0.0);
    v
}
