use std::sync::OnceLock;

use mourre_core::linalg::{self, CMat};
use mourre_core::{SelfAdjointOperator, SpectralData, C64};
use mourre_symbols::jet::factorial;
use mourre_symbols::{almost_analytic, make_cutoff_family, Symbol, SymbolError};
use ndarray::Array1;
use serde::Serialize;

use crate::quadrature::{default_y_floor, localized_extension, refine, relative, strip_bound, HsCertificate};
use crate::{HsError, QuadratureConfig};

/// `ad_A^p(B)` with `ad_A(B) = BA - AB`; `p = 0` returns `B`.
pub fn ad_iter(b: &CMat, a: &CMat, p: usize) -> Result<CMat, HsError> {
    check_square(b, a)?;
    let mut x = b.clone();
    for _ in 0..p {
        x = x.dot(a) - a.dot(&x);
    }
    Ok(x)
}

fn check_square(b: &CMat, a: &CMat) -> Result<(), HsError> {
    if !a.is_square() || !b.is_square() || a.nrows() != b.nrows() {
        return Err(HsError::DimensionMismatch(a.nrows(), b.nrows()));
    }
    Ok(())
}

/// `ad^p` in `A`'s eigenframe: entries `(a_j - a_i)^p X_ij`.
fn ad_frame(x: &CMat, a: &[f64], p: usize) -> CMat {
    let mut out = x.clone();
    for ((i, j), v) in out.indexed_iter_mut() {
        *v *= (a[j] - a[i]).powi(p as i32);
    }
    out
}

/// Quadrature evaluation of the remainder
/// `I_k = (1/pi) \int\int dbar (z - A)^{-k} ad_A^k(B) (z - A)^{-1} dx dy`,
/// with errors relative to `max(||I_k||_F, ||[phi(A), B]||_F)`.
#[derive(Debug, Clone, Serialize)]
pub struct QuadratureRemainder {
    #[serde(skip)]
    pub remainder: CMat,
    pub taylor_order: usize,
    pub certificate: HsCertificate,
}

#[derive(Debug, Clone)]
pub struct ExpansionResult {
    pub k: usize,
    /// `sign_convention / j! * phi^(j)(A) ad_A^j(B)` for `j = 1..k-1`.
    pub terms: Vec<CMat>,
    /// `[phi(A), B] - sum terms`.
    pub remainder: CMat,
    pub sign_convention: i8,
    /// `[phi(A), B]` from the spectral oracle.
    pub commutator: CMat,
    pub quadrature: Option<QuadratureRemainder>,
}

impl ExpansionResult {
    /// `||sum terms + I_k - [phi(A), B]||_F`.
    pub fn identity_residual(&self) -> f64 {
        self.residual_with(&self.remainder)
    }

    /// The same residual with the quadrature remainder in place of `I_k`.
    pub fn quadrature_identity_residual(&self) -> Option<f64> {
        self.quadrature.as_ref().map(|q| self.residual_with(&q.remainder))
    }

    fn residual_with(&self, rem: &CMat) -> f64 {
        let mut s = rem - &self.commutator;
        for t in &self.terms {
            s += t;
        }
        linalg::frobenius(&s)
    }
}

/// Sign relating `[phi(A), B]` to `sum_j phi^(j)(A) ad_A^j(B) / j!`,
/// calibrated on `phi = identity`, `k = 2`, where the remainder vanishes.
pub fn expansion_sign() -> i8 {
    static SIGN: OnceLock<i8> = OnceLock::new();
    *SIGN.get_or_init(|| {
        let a = linalg::diag_real(&[1.0, 2.0]);
        let mut b = CMat::zeros((2, 2));
        b[(0, 1)] = C64::new(1.0, 0.0);
        b[(1, 0)] = C64::new(1.0, 0.0);
        let comm = linalg::commutator(&a, &b);
        let term = ad_iter(&b, &a, 1).expect("2x2 inputs");
        let plus = linalg::frobenius(&(&comm - &term));
        let minus = linalg::frobenius(&(&comm + &term));
        if plus <= minus {
            1
        } else {
            -1
        }
    })
}

/// Expansion of `[phi(A), B]` to order `k` with its remainder `I_k`.
///
/// Terms and the commutator come from `A`'s spectral decomposition; when `q`
/// is given the remainder is also evaluated by quadrature of its integral
/// representation, as an independent check of the identity.
pub fn commutator_expand(
    b: &CMat,
    a: &SelfAdjointOperator,
    phi: &Symbol,
    k: usize,
    q: Option<&QuadratureConfig>,
) -> Result<ExpansionResult, HsError> {
    check_square(b, a.matrix())?;
    if k == 0 {
        return Err(HsError::BadConfig("expansion order k must be at least 1".into()));
    }
    if phi.order() >= k as f64 {
        return Err(HsError::OrderViolation { order: phi.order(), k });
    }
    if phi.max_deriv() < k + 2 {
        return Err(SymbolError::InsufficientDerivatives { needed: k + 2, available: phi.max_deriv() }.into());
    }
    let spec = a.spectral()?;
    let lam: Vec<f64> = spec.eigenvalues.to_vec();
    let bt = spec.to_eigenbasis(b);
    let sign = expansion_sign();
    let derivs: Vec<Vec<f64>> = lam.iter().map(|&t| phi.derivs(t, k)).collect();

    let mut comm = bt.clone();
    for ((i, j), v) in comm.indexed_iter_mut() {
        *v *= derivs[i][0] - derivs[j][0];
    }
    let mut terms = Vec::with_capacity(k.saturating_sub(1));
    let mut remainder = comm.clone();
    for p in 1..k {
        let d = Array1::from_iter(derivs.iter().map(|d| C64::new(sign as f64 * d[p] / factorial(p), 0.0)));
        let t = linalg::scale_rows(&d, &ad_frame(&bt, &lam, p));
        remainder -= &t;
        terms.push(spec.from_eigenbasis(&t));
    }
    let quadrature = match q {
        Some(q) => Some(quadrature_remainder(spec, &bt, phi, k, q, linalg::frobenius(&comm))?),
        None => None,
    };
    Ok(ExpansionResult {
        k,
        terms,
        remainder: spec.from_eigenbasis(&remainder),
        sign_convention: sign,
        commutator: spec.from_eigenbasis(&comm),
        quadrature,
    })
}

/// Extra Taylor orders beyond the `k + 1` needed for integrability.
const REMAINDER_EXTRA_ORDER: usize = 2;

fn quadrature_remainder(
    spec: &SpectralData,
    bt: &CMat,
    phi: &Symbol,
    k: usize,
    q: &QuadratureConfig,
    reference: f64,
) -> Result<QuadratureRemainder, HsError> {
    let l = (k + 1 + REMAINDER_EXTRA_ORDER).min(phi.max_deriv() - 1).max(k + 1);
    let family = make_cutoff_family();
    let ext = almost_analytic(phi, l, &family)?;
    let (ext, x_range, localized) = localized_extension(&ext, spec, true)?;
    let y_floor = q.y_floor.unwrap_or_else(|| default_y_floor(spec));
    let lam: Vec<f64> = spec.eigenvalues.to_vec();
    let n = lam.len();
    let xk = ad_frame(bt, &lam, k);
    // J_ij = (2/pi) Re \int\int_{y>0} dbar (z - a_i)^{-k} (z - a_j)^{-1}.
    let mut w = vec![C64::new(0.0, 0.0); n];
    let mut wk = vec![C64::new(0.0, 0.0); n];
    let mut kernel = |x: f64, y: f64, wd: C64, out: &mut [f64]| {
        let z = C64::new(x, y);
        for i in 0..n {
            w[i] = (z - lam[i]).inv();
            wk[i] = w[i].powu(k as u32) * wd;
        }
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for j in 0..n {
                let v = wk[i] * w[j];
                row[j] += v.re;
            }
        }
    };
    let scale = 2.0 * std::f64::consts::FRAC_1_PI;
    let finish = |out: &[f64]| -> CMat {
        let mut m = xk.clone();
        for ((i, j), v) in m.indexed_iter_mut() {
            *v *= scale * out[i * n + j];
        }
        spec.from_eigenbasis(&m)
    };
    let strip_abs = strip_bound(&ext, x_range, y_floor, k + 1) * linalg::frobenius(&xk);
    let floor = |m: &CMat| relative(strip_abs, m, reference);
    let (r, converged) = refine(&ext, x_range, q, y_floor, reference, &floor, n * n, &mut kernel, &finish)?;
    let certificate = HsCertificate {
        level_difference: r.history.last().copied().unwrap_or(f64::INFINITY),
        error_estimate: r.estimate,
        history: r.history,
        strip_bound: relative(strip_abs, &r.matrix, reference),
        levels_used: r.level,
        x_cells: r.nx,
        y_cells: r.nu,
        y_floor,
        x_range,
        localized,
        converged,
    };
    Ok(QuadratureRemainder { remainder: r.matrix, taylor_order: l, certificate })
}
