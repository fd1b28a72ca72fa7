//! Norm families whose decay in the cutoff scale `R` is checked by
//! [`scaling_probe`](crate::scaling_probe).

use mourre_core::linalg::{self, CMat};
use mourre_core::norm::operator_norm;
use mourre_core::{japanese, SelfAdjointOperator, C64};
use mourre_symbols::{make_cutoff_family, make_phi_psi, tail, CutoffFamily, Symbol};
use ndarray::Array1;
use serde::{Deserialize, Serialize};

use crate::scaling::{scaling_probe_with_tol, ScalingFit, DEFAULT_RESIDUAL_CAP, DEFAULT_SLOPE_TOL};
use crate::{commutator_expand, HsError};

/// Diagonal `A` with a bounded perturbation `B` given in `A`'s eigenbasis.
#[derive(Debug, Clone)]
pub struct DiagonalFrame {
    pub a: SelfAdjointOperator,
    pub b: CMat,
}

impl DiagonalFrame {
    /// `A = diag(-m, ..., m)` and `B` the symmetric nearest-neighbour hopping
    /// (ones on the first off-diagonals), so every `ad_A^j(B)` has norm at most 2.
    pub fn symmetric(half_width: usize) -> Self {
        let m = half_width as i64;
        let diag: Vec<f64> = (-m..=m).map(|v| v as f64).collect();
        let n = diag.len();
        let mut b = CMat::zeros((n, n));
        for i in 0..n.saturating_sub(1) {
            b[(i, i + 1)] = C64::new(1.0, 0.0);
            b[(i + 1, i)] = C64::new(1.0, 0.0);
        }
        Self { a: SelfAdjointOperator::diagonal(&diag), b }
    }

    /// `A = diag(-m, ..., m)` and `B` a direct sum of `sigma_x` blocks on the
    /// pairs `(2i, 2i+1)`, so `||[B, f(A)]||` is the largest increment of `f`
    /// across a pair, with no collective enhancement from long runs of hopping.
    pub fn dimer(half_width: usize) -> Self {
        let mut f = Self::symmetric(half_width);
        let n = f.dim();
        f.b = CMat::zeros((n, n));
        for i in (0..n.saturating_sub(1)).step_by(2) {
            f.b[(i, i + 1)] = C64::new(1.0, 0.0);
            f.b[(i + 1, i)] = C64::new(1.0, 0.0);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    fn diagonal_entries(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.a.matrix()[(i, i)].re).collect()
    }

    /// `<a_i>^s`.
    pub fn weight(&self, s: f64) -> Array1<C64> {
        Array1::from_iter(self.diagonal_entries().into_iter().map(|t| C64::new(japanese(t).powf(s), 0.0)))
    }

    /// `||<A>^s X <A>^{s2}||`.
    pub fn weighted_norm(&self, x: &CMat, s: f64, s2: f64) -> f64 {
        operator_norm(&linalg::scale_cols(&linalg::scale_rows(&self.weight(s), x), &self.weight(s2)))
    }

}

/// Exponents of the remainder decay law `||<A>^s I_k <A>^{s'}|| = O(R^{rho+s+s'-k})`
/// for symbols of order `rho` vanishing on `[-R, R]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemainderLaw {
    pub rho: f64,
    pub s: f64,
    pub s_prime: f64,
    pub k: usize,
}

impl RemainderLaw {
    pub fn target(&self) -> f64 {
        self.rho + self.s + self.s_prime - self.k as f64
    }

    pub fn within_hypotheses(&self) -> bool {
        let k = self.k as f64;
        self.s >= 0.0 && self.s_prime >= 0.0 && self.s_prime < 1.0 && self.s < k && self.rho < k && self.target() < 0.0
    }
}

/// `||<A>^s I_k(phi) <A>^{s'}||` with `I_k` from the spectral oracle.
pub fn remainder_norm(frame: &DiagonalFrame, phi: &Symbol, law: &RemainderLaw) -> Result<f64, HsError> {
    let r = commutator_expand(&frame.b, &frame.a, phi, law.k, None)?;
    Ok(frame.weighted_norm(&r.remainder, law.s, law.s_prime))
}

/// Fits the remainder norms of `chi_tilde_R <t>^rho` over `r_grid`.
pub fn remainder_probe(frame: &DiagonalFrame, law: &RemainderLaw, r_grid: &[f64]) -> Result<ScalingFit, HsError> {
    let family = make_cutoff_family();
    let symbols: Vec<Symbol> = r_grid.iter().map(|&r| tail(law.rho, r, &family)).collect::<Result<_, _>>()?;
    let mut norms = Vec::with_capacity(r_grid.len());
    for phi in &symbols {
        norms.push(remainder_norm(frame, phi, law)?);
    }
    let fit = fit_values(&norms, r_grid, law.target(), DEFAULT_SLOPE_TOL)?;
    Ok(if law.within_hypotheses() { fit } else { fit.outside_hypotheses() })
}

/// Slope tolerance of the first cutoff law, where the only deviation from a
/// pure power is the slowly varying factor `h - t^{1-2s}`.
pub const CUTOFF_NORM_SLOPE_TOL: f64 = 0.15;

/// The two decay laws of `C_R = psi_R^{1/2}(A)`, evaluated exactly in
/// `A`'s eigenbasis:
/// `||C_R <A>^alpha|| = O(R^alpha)` and `||[B, C_R] <A>^alpha|| = O(R^{alpha-1})`.
#[derive(Debug, Clone, Serialize)]
pub struct CutoffLaws {
    pub s: f64,
    pub alpha: f64,
    pub norm_fit: ScalingFit,
    pub commutator_fit: ScalingFit,
}

pub fn cutoff_probe(frame: &DiagonalFrame, s: f64, alpha: f64, r_grid: &[f64]) -> Result<CutoffLaws, HsError> {
    let family: CutoffFamily = make_cutoff_family();
    let mut norms = Vec::new();
    let mut comms = Vec::new();
    for &r in r_grid {
        let pp = make_phi_psi(s, r, &family)?;
        let d: Vec<f64> = frame.diagonal_entries().into_iter().map(|t| pp.sqrt_psi_r.value(t)).collect();
        let sup = frame
            .diagonal_entries()
            .into_iter()
            .zip(&d)
            .map(|(t, c)| (c * japanese(t).powf(alpha)).abs())
            .fold(0.0, f64::max);
        norms.push(sup);
        let mut bc = frame.b.clone();
        for ((i, j), v) in bc.indexed_iter_mut() {
            *v *= d[j] - d[i];
        }
        comms.push(frame.weighted_norm(&bc, 0.0, alpha));
    }
    let norm_fit = fit_values(&norms, r_grid, alpha, CUTOFF_NORM_SLOPE_TOL)?;
    let mut commutator_fit = fit_values(&comms, r_grid, alpha - 1.0, DEFAULT_SLOPE_TOL)?;
    if !(0.0..1.0).contains(&alpha) {
        commutator_fit = commutator_fit.outside_hypotheses();
    }
    Ok(CutoffLaws { s, alpha, norm_fit, commutator_fit })
}

fn fit_values(values: &[f64], r_grid: &[f64], target: f64, tol: f64) -> Result<ScalingFit, HsError> {
    let mut it = values.iter();
    scaling_probe_with_tol(|_| *it.next().expect("one value per grid point"), r_grid, target, tol, DEFAULT_RESIDUAL_CAP)
}

/// `||[theta(H), chi_R(A)] <A>^s||` and `||[theta(H), <A>^{-s} chi_tilde_R(A)] <A>^s||`,
/// expected to decay like `R^{s-1}` and `R^{-1}`.
#[derive(Debug, Clone, Serialize)]
pub struct LocalizationLaws {
    pub s: f64,
    pub cutoff_fit: ScalingFit,
    pub weighted_fit: ScalingFit,
}

pub fn localization_probe(
    h: &SelfAdjointOperator,
    a: &SelfAdjointOperator,
    theta: &Symbol,
    s: f64,
    r_grid: &[f64],
) -> Result<LocalizationLaws, HsError> {
    if h.dim() != a.dim() {
        return Err(HsError::DimensionMismatch(h.dim(), a.dim()));
    }
    let family = make_cutoff_family();
    let a_spec = a.spectral()?;
    let theta_h = a_spec.to_eigenbasis(&h.spectral()?.apply(|t| theta.value(t))?.into_matrix());
    let lam: Vec<f64> = a_spec.eigenvalues.to_vec();
    let w_s = Array1::from_iter(lam.iter().map(|&t| C64::new(japanese(t).powf(s), 0.0)));
    let mut cut = Vec::new();
    let mut weighted = Vec::new();
    for &r in r_grid {
        let chi_r = mourre_symbols::scale_symbol(&family.chi, r)?;
        let ct_r = mourre_symbols::scale_symbol(&family.chi_tilde, r)?;
        let d1: Vec<f64> = lam.iter().map(|&t| chi_r.value(t)).collect();
        let d2: Vec<f64> = lam.iter().map(|&t| japanese(t).powf(-s) * ct_r.value(t)).collect();
        for (d, out) in [(d1, &mut cut), (d2, &mut weighted)] {
            let mut c = theta_h.clone();
            for ((i, j), v) in c.indexed_iter_mut() {
                *v *= d[j] - d[i];
            }
            out.push(operator_norm(&linalg::scale_cols(&c, &w_s)));
        }
    }
    Ok(LocalizationLaws {
        s,
        cutoff_fit: fit_values(&cut, r_grid, s - 1.0, DEFAULT_SLOPE_TOL)?,
        weighted_fit: fit_values(&weighted, r_grid, -1.0, DEFAULT_SLOPE_TOL)?,
    })
}
