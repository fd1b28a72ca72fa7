//! Operator 2-norms: dense SVD for small matrices, Lanczos on `M^H M` otherwise.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, SVD, UPLO};

use crate::linalg::{self, c, CMat, CVec};

/// Matrices up to this size use a dense SVD.
pub const DENSE_LIMIT: usize = 160;

const LANCZOS_TOL: f64 = 1e-14;

/// Largest singular value of `m`.
pub fn operator_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    if m.nrows().max(m.ncols()) <= DENSE_LIMIT {
        let (_, s, _) = m.svd(false, false).expect("svd failed");
        return s.iter().cloned().fold(0.0, f64::max);
    }
    let mh = linalg::dagger(&m.view());
    top_singular_matfree(|x| m.dot(x), |y| mh.dot(y), m.ncols(), None).0
}

/// Largest singular value and a unit right singular vector of `m`.
pub fn top_singular(m: &CMat) -> (f64, CVec) {
    if m.nrows().max(m.ncols()) <= DENSE_LIMIT {
        let (_, s, vt) = linalg::fortran_copy(m).svd(false, true).expect("svd failed");
        let vt = vt.expect("svd returned no right vectors");
        let v = vt.row(0).mapv(|x| x.conj());
        return (s[0], v);
    }
    let mh = linalg::dagger(&m.view());
    top_singular_matfree(|x| m.dot(x), |y| mh.dot(y), m.ncols(), None)
}

/// Deterministic pseudo-random unit start vector.
pub fn start_vector(n: usize) -> CVec {
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
    };
    let v: CVec = (0..n).map(|_| c(next(), next())).collect();
    let nv = linalg::vec_norm(&v);
    v.mapv(|x| x / nv)
}

/// Lanczos with full reorthogonalization on `x -> M^H M x`.
///
/// Stops when the Ritz residual of the top pair drops below `1e-14` times
/// the Ritz value or the Krylov space is exhausted.
pub fn top_singular_matfree(
    apply: impl Fn(&CVec) -> CVec,
    apply_adj: impl Fn(&CVec) -> CVec,
    n: usize,
    warm: Option<&CVec>,
) -> (f64, CVec) {
    let mut q0 = match warm {
        Some(w) if linalg::vec_norm(w) > 0.0 => w.clone(),
        _ => start_vector(n),
    };
    let n0 = linalg::vec_norm(&q0);
    q0.mapv_inplace(|x| x / n0);
    let mut basis: Vec<CVec> = vec![q0];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut best = (0.0, basis[0].clone());
    let max_iter = n.max(1);
    for j in 0..max_iter {
        let q = &basis[j];
        let mut w = apply_adj(&apply(q));
        let a = linalg::inner(q, &w).re;
        alpha.push(a);
        for _ in 0..2 {
            for b in &basis {
                let proj = linalg::inner(b, &w);
                w.zip_mut_with(b, |wi, bi| *wi -= proj * bi);
            }
        }
        let bnorm = linalg::vec_norm(&w);
        let m = alpha.len();
        let mut t = Array2::<f64>::zeros((m, m));
        for i in 0..m {
            t[[i, i]] = alpha[i];
            if i + 1 < m {
                t[[i, i + 1]] = beta[i];
                t[[i + 1, i]] = beta[i];
            }
        }
        let (vals, vecs) = t.eigh(UPLO::Lower).expect("tridiagonal eigh failed");
        let theta = vals[m - 1].max(0.0);
        let y = vecs.column(m - 1);
        let resid = bnorm * y[m - 1].abs();
        let done = resid <= LANCZOS_TOL * theta || bnorm <= 1e-300 || m == max_iter;
        if done {
            let mut v: CVec = Array1::zeros(n);
            for (i, b) in basis.iter().enumerate() {
                let yi = y[i];
                v.zip_mut_with(b, |vi, bi| *vi += bi * yi);
            }
            let nv = linalg::vec_norm(&v);
            if nv > 0.0 {
                v.mapv_inplace(|x| x / nv);
            }
            best = (theta.sqrt(), v);
            break;
        }
        beta.push(bnorm);
        basis.push(w.mapv(|x| x / bnorm));
    }
    best
}
