//! Almost-analytic extensions
//! `phi^C(x+iy) = (sum_{r<=l} phi^(r)(x) (iy)^r / r!) * sigma(y / (c2 <x>))`
//! with `sigma(u) = chi(2u)`, so that `phi^C` vanishes for `|y| > c2 <x>`.

use std::sync::OnceLock;

use mourre_core::{japanese, C64};

use crate::cutoff::CutoffFamily;
use crate::jet::{factorial, Jet};
use crate::symbol::{probe_grid, Symbol};
use crate::SymbolError;

/// Fixed aperture of the extension's support cone.
pub const C2: f64 = 0.5;

/// Number of `u = y / (c2 <x>)` samples in `(0, 1]` used for the `c1` certificate.
const C1_U_SAMPLES: usize = 32;

#[derive(Debug, Clone)]
pub struct AlmostAnalyticExtension {
    base: Symbol,
    l: usize,
    c2: f64,
    chi: Symbol,
    c1: OnceLock<f64>,
}

/// Derivative data of the base symbol at one abscissa.
#[derive(Debug, Clone)]
pub struct Column {
    pub x: f64,
    pub jx: f64,
    /// `phi^(r)(x)` for `r = 0..=l+1`.
    pub d: Vec<f64>,
}

/// `sigma(u)` and `sigma'(u)`.
#[derive(Debug, Clone, Copy)]
pub struct Profile {
    pub sigma: f64,
    pub dsigma: f64,
}

pub fn almost_analytic(phi: &Symbol, l: usize, family: &CutoffFamily) -> Result<AlmostAnalyticExtension, SymbolError> {
    if l < 1 {
        return Err(SymbolError::BadParameter("taylor order l must be at least 1".into()));
    }
    if phi.max_deriv() < l + 1 {
        return Err(SymbolError::InsufficientDerivatives { needed: l + 1, available: phi.max_deriv() });
    }
    Ok(AlmostAnalyticExtension { base: phi.clone(), l, c2: C2, chi: family.chi.clone(), c1: OnceLock::new() })
}

impl AlmostAnalyticExtension {
    pub fn base(&self) -> &Symbol {
        &self.base
    }

    pub fn taylor_order(&self) -> usize {
        self.l
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    /// Same construction for another base symbol.
    pub fn rebase(&self, base: &Symbol) -> Result<AlmostAnalyticExtension, SymbolError> {
        if base.max_deriv() < self.l + 1 {
            return Err(SymbolError::InsufficientDerivatives { needed: self.l + 1, available: base.max_deriv() });
        }
        Ok(AlmostAnalyticExtension { base: base.clone(), l: self.l, c2: self.c2, chi: self.chi.clone(), c1: OnceLock::new() })
    }

    pub fn column(&self, x: f64) -> Column {
        Column { x, jx: japanese(x), d: self.base.derivs(x, self.l + 1) }
    }

    pub fn profile(&self, u: f64) -> Profile {
        let j = self.chi.jet(&Jet::var(2.0 * u));
        Profile { sigma: j.value(), dsigma: 2.0 * j.derivative(1) }
    }

    /// `(d/dx + i d/dy) phi^C / 2` at `y = c2 <x> u`.
    pub fn dbar_at(&self, col: &Column, u: f64, p: Profile) -> C64 {
        let l = self.l;
        let y = self.c2 * col.jx * u;
        let iy = C64::new(0.0, y);
        let mut out = C64::new(0.0, 0.0);
        if p.sigma != 0.0 && col.d[l + 1] != 0.0 {
            out += iy.powu(l as u32) * (p.sigma * col.d[l + 1] / factorial(l));
        }
        if p.dsigma != 0.0 {
            let t = taylor(&col.d[..=l], iy);
            let dx = -p.dsigma * u * col.x / (col.jx * col.jx);
            let dy = p.dsigma / (self.c2 * col.jx);
            out += t * C64::new(dx, dy);
        }
        out * 0.5
    }

    pub fn dbar(&self, x: f64, y: f64) -> C64 {
        let col = self.column(x);
        let u = y / (self.c2 * col.jx);
        if u.abs() >= 1.0 {
            return C64::new(0.0, 0.0);
        }
        self.dbar_at(&col, u, self.profile(u))
    }

    /// `phi^C(x + iy)`.
    pub fn extension(&self, x: f64, y: f64) -> C64 {
        let jx = japanese(x);
        let u = y / (self.c2 * jx);
        if u.abs() >= 1.0 {
            return C64::new(0.0, 0.0);
        }
        let d = self.base.derivs(x, self.l);
        taylor(&d, C64::new(0.0, y)) * self.profile(u).sigma
    }

    /// On-grid supremum of `|dbar| <x>^{l+1-rho} |y|^{-l}`.
    pub fn c1(&self) -> f64 {
        *self.c1.get_or_init(|| self.measure_c1())
    }

    /// `c1 <x>^{rho-1-l} |y|^l`.
    pub fn bound(&self, x: f64, y: f64) -> f64 {
        self.c1() * japanese(x).powf(self.base.order() - 1.0 - self.l as f64) * y.abs().powi(self.l as i32)
    }

    /// The abscissae used for the `c1` certificate.
    pub fn probe_abscissae(&self) -> Vec<f64> {
        probe_grid(self.base.scale().max(1.0))
    }

    fn measure_c1(&self) -> f64 {
        let us: Vec<f64> = (1..=C1_U_SAMPLES).map(|i| i as f64 / C1_U_SAMPLES as f64).collect();
        let profiles: Vec<Profile> = us.iter().map(|&u| self.profile(u)).collect();
        let rho = self.base.order();
        let mut sup = 0.0f64;
        for x in self.probe_abscissae() {
            let col = self.column(x);
            if col.d.iter().all(|v| *v == 0.0) {
                continue;
            }
            let w = col.jx.powf(self.l as f64 + 1.0 - rho);
            for (&u, &p) in us.iter().zip(profiles.iter()) {
                let y = self.c2 * col.jx * u;
                let v = self.dbar_at(&col, u, p).norm() * w / y.powi(self.l as i32);
                sup = sup.max(v);
            }
        }
        sup
    }
}

/// `sum_r d[r] w^r / r!`.
fn taylor(d: &[f64], w: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for r in (0..d.len()).rev() {
        acc = acc * w + d[r] / factorial(r);
    }
    acc
}
