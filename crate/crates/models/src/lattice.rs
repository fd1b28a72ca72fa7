use mourre_core::linalg::{c, CMat};
use mourre_core::{RealInterval, SelfAdjointOperator};

use crate::{meta, ModelError, ModelInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeFlavor {
    /// Periodic boundary: eigenvalues `2 - 2cos(2 pi k / N)`.
    Circulant,
    /// Zero boundary: eigenvalues `2 - 2cos(pi k / (N + 1))`.
    Dirichlet,
}

/// Second-difference matrix `tridiag(-1, 2, -1)`, with corner entries for the circulant flavor.
pub fn laplacian(n: usize, flavor: LatticeFlavor) -> CMat {
    let mut m = CMat::zeros((n, n));
    for i in 0..n {
        m[[i, i]] = c(2.0, 0.0);
        if i + 1 < n {
            m[[i, i + 1]] = c(-1.0, 0.0);
            m[[i + 1, i]] = c(-1.0, 0.0);
        }
    }
    if flavor == LatticeFlavor::Circulant && n > 2 {
        m[[0, n - 1]] = c(-1.0, 0.0);
        m[[n - 1, 0]] = c(-1.0, 0.0);
    }
    m
}

/// `H = L (1 + L)^{-1}` for the discrete Laplacian `L`, and the dilation
/// generator `A = (XP + PX) / 2` with `P = -i D`, `D` the centered difference
/// and `X` the centered position grid. `A_jk = P_jk (x_j + x_k) / 2` is
/// Hermitian entry by entry.
pub fn lattice_model(n: usize, flavor: LatticeFlavor) -> Result<ModelInstance, ModelError> {
    if n < 8 {
        return Err(ModelError::TooSmall { model: "lattice", n, min: 8 });
    }
    let lap = SelfAdjointOperator::hermitian(laplacian(n, flavor));
    let h = lap.apply_function(|t| t / (1.0 + t))?;
    let x: Vec<f64> = (0..n).map(|j| j as f64 - (n as f64 - 1.0) / 2.0).collect();
    let mut a = CMat::zeros((n, n));
    let mut put = |j: usize, k: usize, d: f64| {
        // P_jk = -i D_jk.
        a[[j, k]] = c(0.0, -d * 0.5 * (x[j] + x[k]));
    };
    for j in 0..n - 1 {
        put(j, j + 1, 0.5);
        put(j + 1, j, -0.5);
    }
    if flavor == LatticeFlavor::Circulant {
        put(n - 1, 0, 0.5);
        put(0, n - 1, -0.5);
    }
    let top = 4.0 / 5.0;
    let interval = RealInterval::closed(0.25 * top, 0.75 * top)?;
    let periodic = if flavor == LatticeFlavor::Circulant { 1.0 } else { 0.0 };
    Ok(ModelInstance {
        h: h.with_label("lattice H"),
        a: SelfAdjointOperator::hermitian(a).with_label("dilation generator"),
        recommended_interval: interval,
        metadata: meta(&[("N", n as f64), ("periodic", periodic), ("band_top", top)]),
        name: format!("lattice{{N={n},periodic={periodic}}}"),
    })
}

/// Default box half-width `L` of the multiplication model.
pub const DEFAULT_BOX_HALF_WIDTH: f64 = 500.0;

/// Dirichlet Laplacian `tridiag(-1, 2, -1) / h^2` on `N` points of `[-L, L]`
/// with `A = diag(<x_j>)`; the interval is the middle half of `[0, 4/h^2]`.
pub fn multiplication_model(n: usize, half_width: f64) -> Result<ModelInstance, ModelError> {
    if n < 32 {
        return Err(ModelError::TooSmall { model: "multiplication", n, min: 32 });
    }
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err(ModelError::BadParameter(format!("box half-width must be positive, got {half_width}")));
    }
    let h = 2.0 * half_width / (n as f64 - 1.0);
    let lap = laplacian(n, LatticeFlavor::Dirichlet).mapv(|v| v / (h * h));
    let x: Vec<f64> = (0..n).map(|j| -half_width + j as f64 * h).collect();
    let weights: Vec<f64> = x.iter().map(|&t| mourre_core::japanese(t)).collect();
    let top = 4.0 / (h * h);
    Ok(ModelInstance {
        h: SelfAdjointOperator::hermitian(lap).with_label("Dirichlet Laplacian"),
        a: SelfAdjointOperator::diagonal(&weights).with_label("<x>"),
        recommended_interval: RealInterval::closed(0.25 * top, 0.75 * top)?,
        metadata: meta(&[("N", n as f64), ("L", half_width), ("h", h), ("band_top", top)]),
        name: format!("multiplication{{N={n},L={half_width}}}"),
    })
}
