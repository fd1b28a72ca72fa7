//! The symbols `phi_R`, `psi_R` and `psi_R^{1/2}` of the positivity argument,
//! together with the elementary weights.

use mourre_core::RealInterval;

use crate::cutoff::CutoffFamily;
use crate::jet::Jet;
use crate::symbol::{scale_symbol, Symbol};
use crate::SymbolError;

/// `t <t>^{-2s}`.
fn drift(x: &Jet, s: f64) -> Jet {
    *x * (*x * *x + 1.0).powf(-s)
}

/// `1.01 * sup_t |t| <t>^{-2s}`, the supremum attained at `t^2 = 1/(2s - 1)`.
pub fn h_constant(s: f64) -> f64 {
    let t2 = 1.0 / (2.0 * s - 1.0);
    1.01 * t2.sqrt() * (1.0 + t2).powf(-s)
}

/// `t -> <t>^{-s}`.
pub fn weight(s: f64) -> Symbol {
    japanese_power(-s).with_name(format!("weight{{s={s}}}"))
}

/// `t -> <t>^rho`.
pub fn japanese_power(rho: f64) -> Symbol {
    Symbol::closed_form(format!("japanese{{rho={rho}}}"), rho, move |x| (*x * *x + 1.0).powf(0.5 * rho))
}

/// `t -> (1 + t^2)^{-1}`.
pub fn lorentzian() -> Symbol {
    Symbol::closed_form("lorentzian", -2.0, |x| (*x * *x + 1.0).recip())
}

/// `t -> t`.
pub fn identity() -> Symbol {
    Symbol::closed_form("identity", 1.0, |x| *x)
}

/// `chi_tilde_R(t) <t>^rho`: order `rho`, vanishing on `[-R, R]`.
pub fn tail(rho: f64, r: f64, family: &CutoffFamily) -> Result<Symbol, SymbolError> {
    let ct = scale_symbol(&family.chi_tilde, r)?;
    Ok(ct.product(&japanese_power(rho)).with_name(format!("tail{{rho={rho},R={r}}}")))
}

/// The symbols built from a cutoff family at exponent `s` and scale `R`.
#[derive(Debug, Clone)]
pub struct PhiPsi {
    pub phi_r: Symbol,
    pub psi_r: Symbol,
    pub sqrt_psi_r: Symbol,
    pub h: f64,
    pub s: f64,
    pub r: f64,
    chi_tilde_r: Symbol,
}

impl PhiPsi {
    /// `R (phi_R'(t) - chi_tilde_R(t)^2 d/dt(-t<t>^{-2s}))`, computed from the jet of `phi_R`.
    ///
    /// Differentiating `phi_R` yields twice the product form, so this equals `2 psi_R(t)`.
    pub fn derivative_form(&self, t: f64) -> f64 {
        let s = self.s;
        let ddrift = drift(&Jet::var(t), s).derivative(1);
        let ct = self.chi_tilde_r.value(t);
        self.r * (self.phi_r.eval(1, t) + ct * ct * ddrift)
    }
}

/// Builds `phi_R`, `psi_R`, `psi_R^{1/2}` and `h` for `s` in `(1/2, 1)`.
pub fn make_phi_psi(s: f64, r: f64, family: &CutoffFamily) -> Result<PhiPsi, SymbolError> {
    if !(s > 0.5 && s < 1.0) {
        return Err(SymbolError::BadExponent(s));
    }
    if !(r >= 1.0) || !r.is_finite() {
        return Err(SymbolError::BadScale(r));
    }
    let h = h_constant(s);
    let ct = [
        (1.0, family.chi_tilde_plus.clone()),
        (-1.0, family.chi_tilde_minus.clone()),
    ];
    let sq = [
        (1.0, family.sqrt_chi_tilde_plus.clone(), family.sqrt_sigma_chi_tilde_prime_plus.clone()),
        (-1.0, family.sqrt_chi_tilde_minus.clone(), family.sqrt_sigma_chi_tilde_prime_minus.clone()),
    ];
    let inv_r = 1.0 / r;

    let ct_phi = ct.clone();
    let phi_r = Symbol::closed_form(format!("phi_R{{s={s},R={r}}}"), 0.0, move |x| {
        let u = *x * inv_r;
        let d = drift(x, s);
        let mut acc = Jet::zero();
        for (sigma, c) in &ct_phi {
            let v = c.jet(&u);
            acc = acc + v * v * (Jet::constant(sigma * h) - d);
        }
        acc
    })
    .with_scale(r);

    let sq_psi = sq.clone();
    let psi_r = Symbol::closed_form(format!("psi_R{{s={s},R={r}}}"), 0.0, move |x| {
        let u = *x * inv_r;
        let d = drift(x, s);
        let mut acc = Jet::zero();
        for (sigma, root, root_prime) in &sq_psi {
            let rp = root_prime.jet(&u);
            let rt = root.jet(&u);
            acc = acc + rp * rp * (Jet::constant(h) - d * *sigma) * rt * rt;
        }
        acc
    })
    .with_support(RealInterval { lo: -2.0 * r, hi: 2.0 * r, closed_lo: true, closed_hi: true, boundary_tol: 0.0 })
    .with_scale(r);

    let sqrt_psi_r = Symbol::closed_form(format!("sqrt_psi_R{{s={s},R={r}}}"), 0.0, move |x| {
        let u = *x * inv_r;
        let d = drift(x, s);
        let mut acc = Jet::zero();
        for (sigma, root, root_prime) in &sq {
            let rp = root_prime.jet(&u);
            if rp.0.iter().all(|v| *v == 0.0) {
                continue;
            }
            acc = acc + rp * (Jet::constant(h) - d * *sigma).sqrt() * root.jet(&u);
        }
        acc
    })
    .with_support(RealInterval { lo: -2.0 * r, hi: 2.0 * r, closed_lo: true, closed_hi: true, boundary_tol: 0.0 })
    .with_scale(r);

    let chi_tilde_r = scale_symbol(&family.chi_tilde, r)?;
    Ok(PhiPsi { phi_r, psi_r, sqrt_psi_r, h, s, r, chi_tilde_r })
}
