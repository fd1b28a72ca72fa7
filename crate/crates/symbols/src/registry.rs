use mourre_core::RegistryRef;

use crate::cutoff::CutoffFamily;
use crate::phi_psi::{identity, japanese_power, lorentzian, make_phi_psi, tail, weight};
use crate::symbol::{scale_symbol, Symbol};
use crate::SymbolError;

/// Names accepted by [`symbol_from_registry`].
pub const SYMBOL_NAMES: &[&str] = &[
    "identity",
    "chi",
    "chi_tilde",
    "chi_tilde_plus",
    "chi_tilde_minus",
    "sqrt_chi_tilde_plus",
    "sqrt_chi_tilde_minus",
    "sqrt_chi_tilde_prime_plus",
    "sqrt_chi_tilde_prime_minus",
    "weight",
    "japanese",
    "lorentzian",
    "tail",
    "bump",
    "phi_R",
    "psi_R",
    "sqrt_psi_R",
];

/// Resolves a registry string such as `phi_R{s=0.6,R=8}`.
pub fn symbol_from_registry(text: &str, family: &CutoffFamily) -> Result<Symbol, SymbolError> {
    let r = RegistryRef::parse(text).map_err(|e| SymbolError::BadParameter(e.to_string()))?;
    symbol_from_ref(&r, family)
}

pub fn symbol_from_ref(r: &RegistryRef, family: &CutoffFamily) -> Result<Symbol, SymbolError> {
    let keys = |allowed: &[&str]| r.check_keys(allowed).map_err(|e| SymbolError::BadParameter(e.to_string()));
    let need = |k: &str| r.get(k).ok_or_else(|| SymbolError::BadParameter(format!("{} requires {k}", r.name)));
    let scaled = |base: &Symbol| -> Result<Symbol, SymbolError> {
        keys(&["R"])?;
        let out = scale_symbol(base, r.get_or("R", 1.0))?;
        Ok(out.with_name(r.to_string()))
    };
    match r.name.as_str() {
        "identity" => {
            keys(&[])?;
            Ok(identity())
        }
        "chi" => scaled(&family.chi),
        "chi_tilde" => scaled(&family.chi_tilde),
        "chi_tilde_plus" => scaled(&family.chi_tilde_plus),
        "chi_tilde_minus" => scaled(&family.chi_tilde_minus),
        "sqrt_chi_tilde_plus" => scaled(&family.sqrt_chi_tilde_plus),
        "sqrt_chi_tilde_minus" => scaled(&family.sqrt_chi_tilde_minus),
        "sqrt_chi_tilde_prime_plus" => scaled(&family.sqrt_sigma_chi_tilde_prime_plus),
        "sqrt_chi_tilde_prime_minus" => scaled(&family.sqrt_sigma_chi_tilde_prime_minus),
        "weight" => {
            keys(&["s"])?;
            Ok(weight(need("s")?))
        }
        "japanese" => {
            keys(&["rho"])?;
            Ok(japanese_power(need("rho")?))
        }
        "lorentzian" => {
            keys(&[])?;
            Ok(lorentzian())
        }
        "tail" => {
            keys(&["rho", "R"])?;
            tail(need("rho")?, need("R")?, family)
        }
        "bump" => {
            keys(&["center", "width"])?;
            let out = family.chi.affine(need("center")?, need("width")?)?;
            Ok(out.with_name(r.to_string()))
        }
        "phi_R" | "psi_R" | "sqrt_psi_R" => {
            keys(&["s", "R"])?;
            let pp = make_phi_psi(need("s")?, need("R")?, family)?;
            Ok(match r.name.as_str() {
                "phi_R" => pp.phi_r,
                "psi_R" => pp.psi_r,
                _ => pp.sqrt_psi_r,
            })
        }
        other => Err(SymbolError::UnknownSymbol(other.to_string())),
    }
}
