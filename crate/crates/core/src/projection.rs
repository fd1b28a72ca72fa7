use ndarray::{s, Array1};

use crate::linalg::{self, c, CMat};
use crate::{RealInterval, SpectralData};

/// Orthogonal projection with its rank.
#[derive(Debug, Clone)]
pub struct Projection {
    pub matrix: CMat,
    pub rank: usize,
}

impl Projection {
    pub fn zero(n: usize) -> Self {
        Self { matrix: CMat::zeros((n, n)), rank: 0 }
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: linalg::identity(n), rank: n }
    }

    /// Projection onto the span of orthonormal columns.
    pub fn from_orthonormal_columns(cols: &CMat) -> Self {
        let m = cols.dot(&linalg::dagger(&cols.view()));
        Self { matrix: linalg::hermitian_part(&m), rank: cols.ncols() }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `1 - P`.
    pub fn complement(&self) -> Self {
        let n = self.dim();
        Self { matrix: linalg::identity(n) - &self.matrix, rank: n - self.rank }
    }

    /// Max entry deviation in `P^2 = P` and `P = P^H`, and `|rank - tr P|`.
    pub fn invariant_errors(&self) -> (f64, f64, f64) {
        let p = &self.matrix;
        let idem = linalg::max_abs_diff(&p.dot(p), p);
        let herm = linalg::max_abs_diff(&linalg::dagger(&p.view()), p);
        let tr: f64 = (0..self.dim()).map(|i| p[[i, i]].re).sum();
        (idem, herm, (tr - self.rank as f64).abs())
    }
}

/// Indices of eigenvalues inside `interval`, with slack
/// `max(interval.boundary_tol, 1e-12 * spectral radius)`.
pub fn select_indices(spec: &SpectralData, interval: &RealInterval) -> Vec<usize> {
    let tol = interval.boundary_tol.max(1e-12 * spec.spectral_radius());
    spec.eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| interval.contains_with_tol(l, tol))
        .map(|(k, _)| k)
        .collect()
}

/// `E_I(H)`: the sum of eigenvector dyads with eigenvalue in `interval`.
pub fn spectral_projection(spec: &SpectralData, interval: &RealInterval) -> Projection {
    let idx = select_indices(spec, interval);
    let n = spec.dim();
    let mut d = Array1::from_elem(n, c(0.0, 0.0));
    for &k in &idx {
        d[k] = c(1.0, 0.0);
    }
    if idx.is_empty() {
        return Projection::zero(n);
    }
    let lo = idx[0];
    let hi = idx[idx.len() - 1] + 1;
    // Selected indices are contiguous because eigenvalues are sorted.
    let v = spec.eigenvectors.slice(s![.., lo..hi]).to_owned();
    let m = v.dot(&linalg::dagger(&v.view()));
    Projection { matrix: linalg::hermitian_part(&m), rank: idx.len() }
}
