use ndarray::Array1;

use crate::linalg::{self, c, CMat, CVec, C64};
use crate::norm::{self, DENSE_LIMIT};
use crate::{OperatorError, Projection, SelfAdjointOperator, SpectralData};

/// `<A>^{-s}` as a dense matrix.
pub fn weight_matrix(a_spec: &SpectralData, s: f64) -> CMat {
    let d = a_spec.eigenvalues.mapv(|t| c((1.0 + t * t).powf(-0.5 * s), 0.0));
    a_spec.compose(&d)
}

/// Precomputed factors of `z -> <A>^{-s} (H - z)^{-1} Q <A>^{-s}`.
///
/// With `H = V diag(lambda) V^H` the kernel is `L diag(1/(lambda - z)) R`
/// where `L = W V` and `R = V^H Q W`, so each `z` costs one diagonal scaling.
#[derive(Debug, Clone)]
pub struct WeightedResolvent {
    eigenvalues: Array1<f64>,
    left: CMat,
    right: CMat,
    left_adj: CMat,
    right_adj: CMat,
}

impl WeightedResolvent {
    pub fn new(
        h: &SelfAdjointOperator,
        a_spec: &SpectralData,
        s: f64,
        q: Option<&Projection>,
    ) -> Result<Self, OperatorError> {
        let n = h.dim();
        if a_spec.dim() != n {
            return Err(OperatorError::DimensionMismatch(n, a_spec.dim()));
        }
        if let Some(p) = q {
            if p.dim() != n {
                return Err(OperatorError::DimensionMismatch(n, p.dim()));
            }
        }
        let hs = h.spectral()?;
        let w = weight_matrix(a_spec, s);
        let v = &hs.eigenvectors;
        let vh = linalg::dagger(&v.view());
        let left = w.dot(v);
        let right = match q {
            Some(p) => vh.dot(&p.matrix).dot(&w),
            None => vh.dot(&w),
        };
        let left_adj = linalg::dagger(&left.view());
        let right_adj = linalg::dagger(&right.view());
        Ok(Self { eigenvalues: hs.eigenvalues.clone(), left, right, left_adj, right_adj })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    fn diag(&self, z: C64) -> Result<Array1<C64>, OperatorError> {
        if z.im == 0.0 {
            return Err(OperatorError::RealShift);
        }
        Ok(self.eigenvalues.mapv(|l| 1.0 / (c(l, 0.0) - z)))
    }

    /// The kernel at `z` as a dense matrix.
    pub fn matrix(&self, z: C64) -> Result<CMat, OperatorError> {
        let d = self.diag(z)?;
        Ok(linalg::scale_cols(&self.left, &d).dot(&self.right))
    }

    /// Operator norm of the kernel at `z`.
    pub fn norm(&self, z: C64) -> Result<f64, OperatorError> {
        Ok(self.top_singular(z, None)?.0)
    }

    /// Largest singular value and unit right singular vector at `z`.
    pub fn top_singular(&self, z: C64, warm: Option<&CVec>) -> Result<(f64, CVec), OperatorError> {
        if self.dim() <= DENSE_LIMIT {
            return Ok(norm::top_singular(&self.matrix(z)?));
        }
        let d = self.diag(z)?;
        let dc = d.mapv(|x| x.conj());
        let apply = |x: &CVec| self.left.dot(&(&d * &self.right.dot(x)));
        let apply_adj = |y: &CVec| self.right_adj.dot(&(&dc * &self.left_adj.dot(y)));
        Ok(norm::top_singular_matfree(apply, apply_adj, self.dim(), warm))
    }
}

/// `|| <A>^{-s} (H - z)^{-1} Q <A>^{-s} ||` with `Q` defaulting to the identity.
pub fn weighted_resolvent_norm(
    h: &SelfAdjointOperator,
    a_spec: &SpectralData,
    z: C64,
    s: f64,
    q: Option<&Projection>,
) -> Result<f64, OperatorError> {
    if z.im == 0.0 {
        return Err(OperatorError::RealShift);
    }
    WeightedResolvent::new(h, a_spec, s, q)?.norm(z)
}
