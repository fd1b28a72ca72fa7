//! Small dense helpers on complex matrices.

use ndarray::{Array1, Array2, ArrayView2, ShapeBuilder, Zip};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = Array2<C64>;
pub type CVec = Array1<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Conjugate transpose.
pub fn dagger(m: &ArrayView2<C64>) -> CMat {
    m.t().mapv(|x| x.conj())
}

/// Column-major copy, the layout LAPACK routines expect.
pub fn fortran_copy(m: &CMat) -> CMat {
    let mut f = CMat::zeros(m.raw_dim().f());
    f.assign(m);
    f
}

pub fn identity(n: usize) -> CMat {
    Array2::eye(n)
}

pub fn from_real(m: &Array2<f64>) -> CMat {
    m.mapv(|x| c(x, 0.0))
}

pub fn diag_real(d: &[f64]) -> CMat {
    let n = d.len();
    let mut m = CMat::zeros((n, n));
    for (i, &x) in d.iter().enumerate() {
        m[[i, i]] = c(x, 0.0);
    }
    m
}

/// `XY - YX`.
pub fn commutator(x: &CMat, y: &CMat) -> CMat {
    x.dot(y) - y.dot(x)
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.norm()))
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    let mut worst = 0.0f64;
    Zip::from(a).and(b).for_each(|x, y| worst = worst.max((x - y).norm()));
    worst
}

pub fn rel_frobenius_diff(a: &CMat, reference: &CMat) -> f64 {
    let d = frobenius(&(a - reference));
    let r = frobenius(reference);
    if r == 0.0 {
        d
    } else {
        d / r
    }
}

/// `(M + M^H) / 2`.
pub fn hermitian_part(m: &CMat) -> CMat {
    let mut out = m.clone();
    let n = m.nrows();
    for i in 0..n {
        out[[i, i]] = c(m[[i, i]].re, 0.0);
        for j in (i + 1)..n {
            let v = (m[[i, j]] + m[[j, i]].conj()) * 0.5;
            out[[i, j]] = v;
            out[[j, i]] = v.conj();
        }
    }
    out
}

/// `diag(d) * M`.
pub fn scale_rows(d: &Array1<C64>, m: &CMat) -> CMat {
    let mut out = m.clone();
    for (mut row, &x) in out.rows_mut().into_iter().zip(d.iter()) {
        row.mapv_inplace(|v| v * x);
    }
    out
}

/// `M * diag(d)`.
pub fn scale_cols(m: &CMat, d: &Array1<C64>) -> CMat {
    let mut out = m.clone();
    for (mut col, &x) in out.columns_mut().into_iter().zip(d.iter()) {
        col.mapv_inplace(|v| v * x);
    }
    out
}

pub fn vec_norm(v: &CVec) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `<u, v>`, antilinear in the first slot.
pub fn inner(u: &CVec, v: &CVec) -> C64 {
    u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum()
}
