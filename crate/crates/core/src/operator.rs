use ndarray::{Array1, Axis};
use ndarray_linalg::{Eigh, UPLO};
use std::sync::OnceLock;

use crate::linalg::{self, c, CMat, C64};
use crate::OperatorError;

/// Dense Hermitian matrix with a lazily cached eigensystem.
#[derive(Debug, Clone)]
pub struct SelfAdjointOperator {
    matrix: CMat,
    label: String,
    spectral: OnceLock<SpectralData>,
}

/// Eigenvalues in ascending order with orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub eigenvalues: Array1<f64>,
    pub eigenvectors: CMat,
}

impl SelfAdjointOperator {
    /// Validates `raw` and stores its Hermitian part.
    pub fn from_dense(raw: CMat, sym_tol: f64) -> Result<Self, OperatorError> {
        let (rows, cols) = raw.dim();
        if rows != cols {
            return Err(OperatorError::NonSquare { rows, cols });
        }
        if rows == 0 {
            return Err(OperatorError::Empty);
        }
        let adj = linalg::dagger(&raw.view());
        let measured = linalg::frobenius(&(&raw - &adj));
        let allowed = sym_tol * linalg::frobenius(&raw);
        if !(measured <= allowed) {
            return Err(OperatorError::AsymmetryExceedsTolerance { measured, allowed });
        }
        Ok(Self::hermitian(linalg::hermitian_part(&raw)))
    }

    /// Stores the Hermitian part of a matrix that is Hermitian up to rounding.
    pub fn hermitian(m: CMat) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "operator must be square");
        assert!(m.nrows() > 0, "operator must be nonempty");
        Self { matrix: linalg::hermitian_part(&m), label: String::new(), spectral: OnceLock::new() }
    }

    pub fn from_real(m: &ndarray::Array2<f64>) -> Result<Self, OperatorError> {
        Self::from_dense(linalg::from_real(m), 1e-12)
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let op = Self::hermitian(linalg::diag_real(d));
        let mut order: Vec<usize> = (0..d.len()).collect();
        order.sort_by(|&i, &j| d[i].total_cmp(&d[j]).then(i.cmp(&j)));
        let n = d.len();
        let mut vecs = CMat::zeros((n, n));
        for (col, &i) in order.iter().enumerate() {
            vecs[[i, col]] = c(1.0, 0.0);
        }
        let vals = Array1::from_iter(order.iter().map(|&i| d[i]));
        let _ = op.spectral.set(SpectralData { eigenvalues: vals, eigenvectors: vecs });
        op
    }

    pub fn zero(n: usize) -> Self {
        Self::diagonal(&vec![0.0; n])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn frobenius_norm(&self) -> f64 {
        linalg::frobenius(&self.matrix)
    }

    /// The cached eigensystem, computed on first use.
    pub fn spectral(&self) -> Result<&SpectralData, OperatorError> {
        if let Some(s) = self.spectral.get() {
            return Ok(s);
        }
        let s = compute_spectral(&self.matrix)?;
        Ok(self.spectral.get_or_init(|| s))
    }

    /// `f(self)` through the eigensystem.
    pub fn apply_function(&self, f: impl Fn(f64) -> f64) -> Result<SelfAdjointOperator, OperatorError> {
        self.spectral()?.apply(f)
    }

    /// Operator 2-norm, which equals the spectral radius.
    pub fn norm(&self) -> Result<f64, OperatorError> {
        Ok(self.spectral()?.spectral_radius())
    }
}

/// Eigendecomposition of `op`, reusing the operator's cache.
pub fn spectral_decomposition(op: &SelfAdjointOperator) -> Result<SpectralData, OperatorError> {
    op.spectral().cloned()
}

fn compute_spectral(m: &CMat) -> Result<SpectralData, OperatorError> {
    if m.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return Err(OperatorError::EigensolverFailure("non-finite matrix entry".into()));
    }
    // LAPACK sees a row-major Hermitian matrix as its conjugate, so hand it
    // a column-major copy.
    let (vals, mut vecs) = linalg::fortran_copy(m)
        .eigh(UPLO::Lower).map_err(|e| OperatorError::EigensolverFailure(e.to_string()))?;
    // Fix the phase of each column: its largest entry (first on ties) is real positive.
    for mut col in vecs.axis_iter_mut(Axis(1)) {
        let mut best = 0usize;
        let mut best_abs = -1.0;
        for (i, x) in col.iter().enumerate() {
            let a = x.norm();
            if a > best_abs * (1.0 + 1e-12) {
                best = i;
                best_abs = a;
            }
        }
        let z = col[best];
        if z.norm() > 0.0 {
            let phase = z.conj() / z.norm();
            col.mapv_inplace(|x| x * phase);
        }
    }
    Ok(SpectralData { eigenvalues: vals, eigenvectors: vecs })
}

impl SpectralData {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |a: f64, x| a.max(x.abs()))
    }

    /// Smallest distance between consecutive eigenvalues, or `+inf` in dimension 1.
    pub fn min_gap(&self) -> f64 {
        self.eigenvalues
            .windows(2)
            .into_iter()
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// `V diag(d) V^H`.
    pub fn compose(&self, d: &Array1<C64>) -> CMat {
        let v = &self.eigenvectors;
        linalg::scale_cols(v, d).dot(&linalg::dagger(&v.view()))
    }

    /// `f(H) = V diag(f(lambda)) V^H`; fails if `f` is not finite at an eigenvalue.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Result<SelfAdjointOperator, OperatorError> {
        let mut d = Array1::zeros(self.dim());
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let v = f(lam);
            if !v.is_finite() {
                return Err(OperatorError::FunctionUndefinedAtEigenvalue(lam));
            }
            d[k] = c(v, 0.0);
        }
        Ok(SelfAdjointOperator::hermitian(self.compose(&d)))
    }

    /// `f(H)` for a complex-valued `f`; the result need not be Hermitian.
    pub fn apply_complex(&self, f: impl Fn(f64) -> C64) -> Result<CMat, OperatorError> {
        let mut d = Array1::zeros(self.dim());
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let v = f(lam);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(OperatorError::FunctionUndefinedAtEigenvalue(lam));
            }
            d[k] = v;
        }
        Ok(self.compose(&d))
    }

    /// `(H - z)^{-1}`.
    pub fn resolvent(&self, z: C64) -> Result<CMat, OperatorError> {
        if z.im == 0.0 {
            return Err(OperatorError::RealShift);
        }
        self.apply_complex(|l| 1.0 / (c(l, 0.0) - z))
    }

    /// `V^H X V`: the matrix of `X` in the eigenbasis.
    pub fn to_eigenbasis(&self, x: &CMat) -> CMat {
        let v = &self.eigenvectors;
        linalg::dagger(&v.view()).dot(x).dot(v)
    }

    /// `V X V^H`: back from the eigenbasis.
    pub fn from_eigenbasis(&self, x: &CMat) -> CMat {
        let v = &self.eigenvectors;
        v.dot(x).dot(&linalg::dagger(&v.view()))
    }

    /// Max entry deviation of `V^H V` from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let v = &self.eigenvectors;
        let g = linalg::dagger(&v.view()).dot(v);
        linalg::max_abs_diff(&g, &linalg::identity(self.dim()))
    }

    /// Relative Frobenius error of `V diag(lambda) V^H` against `op`.
    pub fn reconstruction_error(&self, op: &SelfAdjointOperator) -> f64 {
        let d = self.eigenvalues.mapv(|l| c(l, 0.0));
        linalg::rel_frobenius_diff(&self.compose(&d), op.matrix())
    }

    /// `max_k |H v_k - lambda_k v_k|`.
    pub fn residual(&self, op: &SelfAdjointOperator) -> f64 {
        let hv = op.matrix().dot(&self.eigenvectors);
        let mut worst = 0.0f64;
        for k in 0..self.dim() {
            let lam = self.eigenvalues[k];
            for i in 0..self.dim() {
                worst = worst.max((hv[[i, k]] - self.eigenvectors[[i, k]] * lam).norm());
            }
        }
        worst
    }
}
