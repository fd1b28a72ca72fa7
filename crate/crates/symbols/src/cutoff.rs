//! Smooth cutoffs built from the `exp(-1/t)` bump.
//!
//! On `tau = t - 1 in (0, 1)` the ramp is the smoothstep
//! `S(tau) = e^{-1/tau} / (e^{-1/tau} + e^{-1/(1-tau)}) = 1 / (1 + e^{q})`
//! with `q = 1/tau - 1/(1-tau)`. Both `S` and `S'` are squares of explicit
//! smooth functions: `sqrt(S) = (1 + e^q)^{-1/2}` and
//! `sqrt(S') = sqrt(tau^{-2} + (1-tau)^{-2}) / (2 cosh(q/2))`.
//! Then `chi_tilde_+(t) = S(t - 1)`, `chi_tilde_-(t) = chi_tilde_+(-t)` and
//! `chi = 1 - chi_tilde_+ - chi_tilde_-`.

use mourre_core::RealInterval;

use crate::jet::Jet;
use crate::symbol::Symbol;

/// Exponent above which `exp(-x)` is treated as exactly zero.
const UNDERFLOW: f64 = 700.0;

/// Text description of the profile, recorded in reports.
pub const PROFILE: &str =
    "chi_tilde_+(t) = 1/(1+exp(1/(t-1) - 1/(2-t))) on (1,2), 0 below, 1 above; chi = 1 - chi_tilde_+(t) - chi_tilde_+(-t)";

/// `q = 1/tau - 1/(1 - tau)` with `tau = t - 1`.
fn logit(x: &Jet) -> Jet {
    let tau = *x - 1.0;
    tau.recip() - (1.0 - tau).recip()
}

/// `S(t - 1)^p` for `p` in `{1, 1/2}`: 0 at or below 1, 1 at or above 2.
fn ramp_power(x: &Jet, p: f64) -> Jet {
    let t = x.value();
    if t <= 1.0 {
        return Jet::zero();
    }
    if t >= 2.0 {
        return Jet::constant(1.0);
    }
    let q = logit(x);
    if p * q.value() > UNDERFLOW {
        return Jet::zero();
    }
    if q.value() < -UNDERFLOW {
        return Jet::constant(1.0);
    }
    if q.value() > 0.0 {
        (q * -p).exp() * ((-q).exp() + 1.0).powf(-p)
    } else {
        (q.exp() + 1.0).powf(-p)
    }
}

/// `sqrt(chi_tilde_+'(t))`, supported in `[1, 2]`.
fn ramp_sqrt_derivative(x: &Jet) -> Jet {
    let t = x.value();
    if t <= 1.0 || t >= 2.0 {
        return Jet::zero();
    }
    let q = logit(x);
    if 0.5 * q.value().abs() > UNDERFLOW {
        return Jet::zero();
    }
    let tau = *x - 1.0;
    let a = tau.recip();
    let b = (1.0 - tau).recip();
    let half = if q.value() > 0.0 { q * 0.5 } else { q * -0.5 };
    let e = (-half).exp();
    (a * a + b * b).sqrt() * e / (e * e + 1.0)
}

fn interval(lo: f64, hi: f64) -> RealInterval {
    RealInterval { lo, hi, closed_lo: true, closed_hi: true, boundary_tol: 0.0 }
}

/// The cutoff functions used by the commutator arguments.
#[derive(Debug, Clone)]
pub struct CutoffFamily {
    /// 1 on `[-1, 1]`, 0 outside `[-2, 2]`.
    pub chi: Symbol,
    /// `1 - chi`.
    pub chi_tilde: Symbol,
    pub chi_tilde_plus: Symbol,
    pub chi_tilde_minus: Symbol,
    pub sqrt_chi_tilde_plus: Symbol,
    pub sqrt_chi_tilde_minus: Symbol,
    /// `sqrt(chi_tilde_+')`.
    pub sqrt_sigma_chi_tilde_prime_plus: Symbol,
    /// `sqrt(-chi_tilde_-')`.
    pub sqrt_sigma_chi_tilde_prime_minus: Symbol,
    pub profile: &'static str,
}

impl CutoffFamily {
    /// `chi_tilde_sigma` for `sigma = +1` or `-1`.
    pub fn chi_tilde_sigma(&self, sigma: i32) -> &Symbol {
        if sigma > 0 {
            &self.chi_tilde_plus
        } else {
            &self.chi_tilde_minus
        }
    }

    pub fn sqrt_chi_tilde_sigma(&self, sigma: i32) -> &Symbol {
        if sigma > 0 {
            &self.sqrt_chi_tilde_plus
        } else {
            &self.sqrt_chi_tilde_minus
        }
    }

    pub fn sqrt_sigma_chi_tilde_prime_sigma(&self, sigma: i32) -> &Symbol {
        if sigma > 0 {
            &self.sqrt_sigma_chi_tilde_prime_plus
        } else {
            &self.sqrt_sigma_chi_tilde_prime_minus
        }
    }

    /// All named members, for sweeps over the family.
    pub fn members(&self) -> Vec<&Symbol> {
        vec![
            &self.chi,
            &self.chi_tilde,
            &self.chi_tilde_plus,
            &self.chi_tilde_minus,
            &self.sqrt_chi_tilde_plus,
            &self.sqrt_chi_tilde_minus,
            &self.sqrt_sigma_chi_tilde_prime_plus,
            &self.sqrt_sigma_chi_tilde_prime_minus,
        ]
    }
}

pub fn make_cutoff_family() -> CutoffFamily {
    let inf = f64::INFINITY;
    let chi = Symbol::closed_form("chi", 0.0, |x| 1.0 - ramp_power(x, 1.0) - ramp_power(&-*x, 1.0))
        .with_support(interval(-2.0, 2.0));
    let chi_tilde = Symbol::closed_form("chi_tilde", 0.0, |x| ramp_power(x, 1.0) + ramp_power(&-*x, 1.0));
    let chi_tilde_plus =
        Symbol::closed_form("chi_tilde_plus", 0.0, |x| ramp_power(x, 1.0)).with_support(interval(1.0, inf));
    let chi_tilde_minus =
        Symbol::closed_form("chi_tilde_minus", 0.0, |x| ramp_power(&-*x, 1.0)).with_support(interval(-inf, -1.0));
    let sqrt_chi_tilde_plus =
        Symbol::closed_form("sqrt_chi_tilde_plus", 0.0, |x| ramp_power(x, 0.5)).with_support(interval(1.0, inf));
    let sqrt_chi_tilde_minus = Symbol::closed_form("sqrt_chi_tilde_minus", 0.0, |x| ramp_power(&-*x, 0.5))
        .with_support(interval(-inf, -1.0));
    let sqrt_sigma_chi_tilde_prime_plus =
        Symbol::closed_form("sqrt_sigma_chi_tilde_prime_plus", 0.0, ramp_sqrt_derivative)
            .with_support(interval(1.0, 2.0));
    let sqrt_sigma_chi_tilde_prime_minus =
        Symbol::closed_form("sqrt_sigma_chi_tilde_prime_minus", 0.0, |x| ramp_sqrt_derivative(&-*x))
            .with_support(interval(-2.0, -1.0));
    CutoffFamily {
        chi,
        chi_tilde,
        chi_tilde_plus,
        chi_tilde_minus,
        sqrt_chi_tilde_plus,
        sqrt_chi_tilde_minus,
        sqrt_sigma_chi_tilde_prime_plus,
        sqrt_sigma_chi_tilde_prime_minus,
        profile: PROFILE,
    }
}
