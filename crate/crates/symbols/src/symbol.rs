use std::fmt;
use std::sync::{Arc, OnceLock};

use mourre_core::{japanese, RealInterval};

use crate::jet::{Jet, JET_LEN};
use crate::SymbolError;

pub type JetFn = Arc<dyn Fn(&Jet) -> Jet + Send + Sync>;
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// How derivatives are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivMode {
    /// Exact Taylor arithmetic.
    ClosedForm,
    /// Eighth-order central differences with step `2^{k-1} 1e-3 <t>`; lower accuracy.
    FiniteDifference,
}

/// Highest derivative offered by finite-difference symbols.
pub const FD_MAX_DERIV: usize = 4;

#[derive(Clone)]
enum Kernel {
    Jet(JetFn),
    Scalar(ScalarFn),
}

/// A smooth real function with a derivative oracle and a declared symbol order.
#[derive(Clone)]
pub struct Symbol {
    name: String,
    order: f64,
    max_deriv: usize,
    support: Option<RealInterval>,
    scale: f64,
    kernel: Kernel,
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Symbol")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("max_deriv", &self.max_deriv)
            .field("support", &self.support)
            .field("mode", &self.mode())
            .finish()
    }
}

impl Symbol {
    /// Symbol with exact derivatives given by a jet evaluator.
    pub fn closed_form(
        name: impl Into<String>,
        order: f64,
        f: impl Fn(&Jet) -> Jet + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            order,
            max_deriv: JET_LEN - 1,
            support: None,
            scale: 1.0,
            kernel: Kernel::Jet(Arc::new(f)),
        }
    }

    /// Symbol known only through point values.
    pub fn finite_difference(
        name: impl Into<String>,
        order: f64,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            order,
            max_deriv: FD_MAX_DERIV,
            support: None,
            scale: 1.0,
            kernel: Kernel::Scalar(Arc::new(f)),
        }
    }

    pub fn with_support(mut self, support: RealInterval) -> Self {
        self.support = Some(support);
        self
    }

    /// Characteristic length used to size probe grids.
    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn max_deriv(&self) -> usize {
        self.max_deriv
    }

    pub fn support(&self) -> Option<RealInterval> {
        self.support
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn mode(&self) -> DerivMode {
        match self.kernel {
            Kernel::Jet(_) => DerivMode::ClosedForm,
            Kernel::Scalar(_) => DerivMode::FiniteDifference,
        }
    }

    fn outside_support(&self, t: f64) -> bool {
        match &self.support {
            Some(s) => t < s.lo || t > s.hi,
            None => false,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        self.eval(0, t)
    }

    /// `phi^(k)(t)`; zero outside the declared support.
    pub fn eval(&self, k: usize, t: f64) -> f64 {
        assert!(k <= self.max_deriv, "{}: derivative {k} exceeds max_deriv {}", self.name, self.max_deriv);
        if self.outside_support(t) {
            return 0.0;
        }
        match &self.kernel {
            Kernel::Jet(f) => f(&Jet::var(t)).derivative(k),
            Kernel::Scalar(f) => fd_derivative(f.as_ref(), k, t),
        }
    }

    /// `phi^(j)(t)` for `j = 0..=upto`.
    pub fn derivs(&self, t: f64, upto: usize) -> Vec<f64> {
        assert!(upto <= self.max_deriv, "{}: derivative {upto} exceeds max_deriv {}", self.name, self.max_deriv);
        if self.outside_support(t) {
            return vec![0.0; upto + 1];
        }
        match &self.kernel {
            Kernel::Jet(f) => f(&Jet::var(t)).derivatives(upto),
            Kernel::Scalar(f) => (0..=upto).map(|k| fd_derivative(f.as_ref(), k, t)).collect(),
        }
    }

    /// `phi(x(t))` as a jet, for composition.
    pub fn jet(&self, x: &Jet) -> Jet {
        let x0 = x.value();
        if self.outside_support(x0) {
            return Jet::zero();
        }
        match &self.kernel {
            Kernel::Jet(f) => f(x),
            Kernel::Scalar(_) => {
                // Horner evaluation of sum_r phi^(r)(x0) d^r / r! with d = x - x0.
                let d = self.derivs(x0, self.max_deriv);
                let dx = *x - x0;
                let mut acc = Jet::constant(0.0);
                for r in (0..d.len()).rev() {
                    acc = acc * dx + d[r] / crate::jet::factorial(r);
                }
                acc
            }
        }
    }

    /// The same function served through finite differences only.
    pub fn as_finite_difference(&self) -> Symbol {
        let me = self.clone();
        let mut out = Symbol::finite_difference(format!("fd({})", self.name), self.order, move |t| me.value(t));
        out.support = self.support;
        out.scale = self.scale;
        out
    }

    /// Pointwise product; orders add, supports intersect.
    pub fn product(&self, other: &Symbol) -> Symbol {
        let (a, b) = (self.clone(), other.clone());
        let mut out = Symbol::closed_form(format!("{}*{}", self.name, other.name), self.order + other.order, move |x| {
            a.jet(x) * b.jet(x)
        });
        out.max_deriv = self.max_deriv.min(other.max_deriv);
        out.support = match (self.support, other.support) {
            (Some(s), Some(t)) => {
                let lo = s.lo.max(t.lo);
                let hi = s.hi.min(t.hi).max(lo);
                Some(RealInterval { lo, hi, ..s })
            }
            (s, None) => s,
            (None, t) => t,
        };
        out.scale = self.scale.max(other.scale);
        out
    }

    /// `t -> phi((t - center) / width)`.
    pub fn affine(&self, center: f64, width: f64) -> Result<Symbol, SymbolError> {
        if !(width > 0.0) || !center.is_finite() {
            return Err(SymbolError::BadScale(width));
        }
        let a = self.clone();
        let mut out = Symbol::closed_form(format!("{}((t-{center})/{width})", self.name), self.order, move |x| {
            a.jet(&((*x - center) * (1.0 / width)))
        });
        out.max_deriv = self.max_deriv;
        out.support = self.support.map(|s| RealInterval { lo: center + width * s.lo, hi: center + width * s.hi, ..s });
        out.scale = self.scale * width + center.abs();
        Ok(out)
    }

    /// `sup_grid <t>^{k - rho} |phi^(k)(t)|`.
    pub fn seminorm(&self, k: usize, grid: &[f64]) -> f64 {
        grid.iter()
            .map(|&t| japanese(t).powf(k as f64 - self.order) * self.eval(k, t).abs())
            .fold(0.0, f64::max)
    }

    /// `sup_grid |t|^k |phi^(k)(t)|`.
    pub fn scaled_seminorm(&self, k: usize, grid: &[f64]) -> f64 {
        grid.iter().map(|&t| t.abs().powi(k as i32) * self.eval(k, t).abs()).fold(0.0, f64::max)
    }
}

/// `t -> phi(t / R)` for `R >= 1`.
pub fn scale_symbol(phi: &Symbol, r: f64) -> Result<Symbol, SymbolError> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(SymbolError::BadScale(r));
    }
    let mut out = phi.affine(0.0, r)?;
    out.name = format!("{}_R{r}", phi.name);
    Ok(out)
}

/// Number of probe points behind every on-grid supremum.
pub const PROBE_POINTS: usize = 10_000;

/// `PROBE_POINTS` Chebyshev points on `[-10 r_max, 10 r_max]`, ascending.
pub fn probe_grid(r_max: f64) -> Vec<f64> {
    RealInterval { lo: -10.0 * r_max, hi: 10.0 * r_max, closed_lo: true, closed_hi: true, boundary_tol: 0.0 }
        .chebyshev_points(PROBE_POINTS)
}

fn fd_half_width(k: usize) -> usize {
    4 + k.saturating_sub(1) / 2
}

/// Fornberg weights for derivative `k` on the integer nodes `-m..=m`.
fn fornberg_weights(k: usize) -> Vec<f64> {
    let m = fd_half_width(k) as i64;
    let x: Vec<f64> = (-m..=m).map(|i| i as f64).collect();
    let n = x.len();
    let mut c = vec![vec![0.0; k + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = x[0];
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(k);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i];
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for q in (1..=mn).rev() {
                    c[i][q] = c1 * (q as f64 * c[i - 1][q - 1] - c5 * c[i - 1][q]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for q in (1..=mn).rev() {
                c[j][q] = (c4 * c[j][q] - q as f64 * c[j][q - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|row| row[k]).collect()
}

fn stencil(k: usize) -> &'static [f64] {
    static CACHE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=FD_MAX_DERIV).map(fornberg_weights).collect())[k]
}

/// `2^{k-1} 1e-3 <t>`: the widening keeps rounding below `1e-8` relative at `k = 3`.
fn fd_step(k: usize, t: f64) -> f64 {
    2f64.powi(k as i32 - 1) * 1e-3 * japanese(t)
}

fn fd_derivative(f: &(dyn Fn(f64) -> f64 + Send + Sync), k: usize, t: f64) -> f64 {
    if k == 0 {
        return f(t);
    }
    let h = fd_step(k, t);
    let w = stencil(k);
    let m = fd_half_width(k) as i64;
    let mut s = 0.0;
    for (i, wi) in (-m..=m).zip(w.iter()) {
        if *wi != 0.0 {
            s += wi * f(t + i as f64 * h);
        }
    }
    s / h.powi(k as i32)
}
