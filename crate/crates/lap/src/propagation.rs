use mourre_core::linalg::{self, CVec};
use mourre_core::projection::select_indices;
use mourre_core::resolvent::weight_matrix;
use mourre_core::{RealInterval, SelfAdjointOperator};
use ndarray::Axis;
use serde::Serialize;

use crate::LapError;

/// `|omega T|` below which `sin(omega T) / omega` uses its Taylor form.
const SMALL_PHASE: f64 = 1e-4;
/// Eigenvalue differences below this count as degenerate.
const DEGENERATE: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct TimeDecay {
    pub t_grid: Vec<f64>,
    /// `J(T) = \int_{-T}^{T} ||<A>^{-s} e^{itH} E_I(H) f||^2 dt`.
    pub integral: Vec<f64>,
    /// `J(T) / 2T`.
    pub cesaro_mean: Vec<f64>,
    /// `sum over degenerate pairs of conj(c_j) c_k M_jk`, the limit of `J(T) / 2T`.
    pub plateau: f64,
    /// `sum over non-degenerate pairs of |c_j c_k M_jk|`.
    pub oscillation_weight: f64,
    /// `||E_I(H) f||^2`.
    pub localized_weight: f64,
    /// `J(T)` grows linearly iff the plateau is positive (relative to `||f||^2`).
    pub divergent: bool,
}

/// `2 sin(omega T) / omega`, equal to `\int_{-T}^{T} e^{i omega t} dt`.
fn oscillatory(omega: f64, t: f64) -> f64 {
    let x = omega * t;
    if x.abs() < SMALL_PHASE {
        2.0 * t * (1.0 - x * x / 6.0)
    } else {
        2.0 * x.sin() / omega
    }
}

/// Closed form of `J(T)` from the eigen-expansion `E_I(H) f = sum_j c_j v_j`:
/// `J(T) = sum_{j,k} conj(c_j) c_k M_jk 2 sin((lambda_k - lambda_j) T) / (lambda_k - lambda_j)`
/// with `M_jk = <<A>^{-s} v_j, <A>^{-s} v_k>`.
pub fn time_decay_probe(
    h: &SelfAdjointOperator,
    a: &SelfAdjointOperator,
    interval: &RealInterval,
    s: f64,
    f: &CVec,
    t_grid: &[f64],
) -> Result<TimeDecay, LapError> {
    if h.dim() != a.dim() || f.len() != h.dim() {
        return Err(LapError::DimensionMismatch(h.dim(), f.len()));
    }
    let spec = h.spectral()?;
    let idx = select_indices(spec, interval);
    let v = spec.eigenvectors.select(Axis(1), &idx);
    let lam: Vec<f64> = idx.iter().map(|&j| spec.eigenvalues[j]).collect();
    let coeffs = linalg::dagger(&v.view()).dot(f);
    let wv = weight_matrix(a.spectral()?, s).dot(&v);
    let m = linalg::dagger(&wv.view()).dot(&wv);
    let n = idx.len();
    let mut plateau = 0.0;
    let mut oscillation_weight = 0.0;
    for j in 0..n {
        for k in 0..n {
            let w = coeffs[j].conj() * coeffs[k] * m[[j, k]];
            if (lam[k] - lam[j]).abs() <= DEGENERATE {
                plateau += w.re;
            } else {
                oscillation_weight += w.norm();
            }
        }
    }
    let mut integral = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let mut acc = 0.0;
        for j in 0..n {
            for k in 0..n {
                // The imaginary parts cancel between (j, k) and (k, j).
                let w = coeffs[j].conj() * coeffs[k] * m[[j, k]];
                acc += w.re * oscillatory(lam[k] - lam[j], t);
            }
        }
        integral.push(acc);
    }
    let cesaro_mean = integral.iter().zip(t_grid).map(|(j, t)| j / (2.0 * t)).collect();
    let localized_weight = coeffs.iter().map(|x| x.norm_sqr()).sum();
    Ok(TimeDecay {
        t_grid: t_grid.to_vec(),
        integral,
        cesaro_mean,
        plateau,
        oscillation_weight,
        localized_weight,
        divergent: plateau > 1e-12 * f.iter().map(|x| x.norm_sqr()).sum::<f64>(),
    })
}
