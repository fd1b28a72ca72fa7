use mourre_core::linalg::{self, c, CMat, CVec};
use mourre_core::{japanese, spectral_projection, Projection, RealInterval, RegistryRef, SelfAdjointOperator};
use mourre_estimate::{feshbach_check, mourre_best_constant, transfer_check, virial_check};
use mourre_hs::probes::{cutoff_probe, remainder_probe, DiagonalFrame, RemainderLaw};
use mourre_hs::{geometric_grid, hs_apply, HsError, QuadratureConfig, ScalingFit, ScalingVerdict, RECOMMENDED_TAYLOR_ORDER};
use mourre_lap::{
    eta_floor, geometric_eta_grid, lap_scan, special_sequence, time_decay_probe, virial_like_check, LapScan,
    ProjectionMode,
};
use mourre_models::rng::Lcg;
use mourre_models::{build_artificial_parts, build_model, ArtificialParts, ModelInstance};
use mourre_symbols::{almost_analytic, identity, make_cutoff_family, symbol_from_registry, Symbol};
use ndarray::Array1;
use serde_json::{json, Value};

use crate::scenario::{parse_eta, parse_interval, Operation, Tolerances};
use crate::HarnessError;

/// Points in the default `eta` grid of a scan.
pub const SCAN_POINTS: usize = 8;
/// `eta` spans `[floor, SCAN_SPAN * floor]` by default.
pub const SCAN_SPAN: f64 = 16.0;

/// A model resolved from its registry reference.
#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub reference: RegistryRef,
    pub instance: ModelInstance,
}

impl LoadedModel {
    pub fn load(text: &str) -> Result<Self, HarnessError> {
        let reference = RegistryRef::parse(text).map_err(|e| HarnessError::Parse(e.to_string()))?;
        let instance = build_model(&reference)?;
        Ok(Self { reference, instance })
    }

    pub fn artificial_parts(&self) -> Result<ArtificialParts, HarnessError> {
        if self.reference.name != "artificial" {
            return Err(HarnessError::Parse(format!("operation needs an artificial model, got {}", self.reference.name)));
        }
        Ok(build_artificial_parts(&self.reference)?)
    }
}

pub struct Context<'a> {
    pub model: Option<&'a LoadedModel>,
    pub tol: &'a Tolerances,
    pub seed: u64,
}

/// Result of one operation: verdict, failure messages, JSON result and named text files.
#[derive(Debug, Clone, Default)]
pub struct OpOutcome {
    pub failures: Vec<String>,
    pub result: Value,
    pub files: Vec<(String, String)>,
}

impl OpOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }
}

impl Context<'_> {
    fn model(&self, op: &str) -> Result<&LoadedModel, HarnessError> {
        self.model.ok_or_else(|| HarnessError::Parse(format!("operation {op} needs a model")))
    }

    fn interval(&self, op: &str, text: &Option<String>) -> Result<RealInterval, HarnessError> {
        match text {
            Some(t) => parse_interval(t),
            None => Ok(self.model(op)?.instance.recommended_interval),
        }
    }

    fn projection(&self, op: &str, text: &str, interval: &RealInterval) -> Result<Option<Projection>, HarnessError> {
        let m = self.model(op)?;
        match text.trim() {
            "none" => Ok(None),
            "block" => Ok(Some(m.artificial_parts()?.block_projection())),
            "spectral" => Ok(Some(spectral_projection(m.instance.h.spectral()?, interval))),
            t => match t.strip_prefix("spectral:") {
                Some(rest) => Ok(Some(spectral_projection(m.instance.h.spectral()?, &parse_interval(rest)?))),
                None => Err(HarnessError::Parse(format!(
                    "projection must be none, block, spectral or spectral:lo:hi, got {t:?}"
                ))),
            },
        }
    }
}

pub fn execute(op: &Operation, ctx: &Context) -> Result<OpOutcome, HarnessError> {
    let name = op.name();
    match op {
        Operation::HsVerify { symbols, cases, max_dim } => hs_verify(symbols, *cases, *max_dim, ctx),
        Operation::Mourre { interval, projection } => {
            let m = ctx.model(name)?;
            let i = ctx.interval(name, interval)?;
            let p = ctx.projection(name, projection, &i)?;
            let r = mourre_best_constant(&m.instance.h, &m.instance.a, &i, p.as_ref())?;
            let mut out = OpOutcome { result: r.to_json(), ..Default::default() };
            let tol = ctx.tol.get("virial");
            out.check(r.virial_max_residual() <= tol * r.commutator_norm, || {
                format!("virial residual {:.3e} exceeds {tol:e} x ||[H, iA]||", r.virial_max_residual())
            });
            Ok(out)
        }
        Operation::Virial { interval } => {
            let m = ctx.model(name)?;
            let i = ctx.interval(name, interval)?;
            let tol = ctx.tol.get("virial");
            let v = virial_check(&m.instance.h, &m.instance.a, &i, tol)?;
            let mut out = OpOutcome {
                result: json!({
                    "eigenvalues": v.eigenvalues.len(),
                    "max_relative_residual": v.max_relative(),
                    "commutator_norm": v.commutator_norm,
                }),
                ..Default::default()
            };
            out.check(v.passed, || format!("virial residual {:.3e} x ||[H, iA]|| exceeds {tol:e}", v.max_relative()));
            Ok(out)
        }
        Operation::Lap { interval, s, eta, projection, expect } => {
            let m = ctx.model(name)?;
            let i = ctx.interval(name, interval)?;
            let p = ctx.projection(name, projection, &i)?;
            let grid = eta_grid(&m.instance, &i, eta)?;
            let mode = p.map_or(ProjectionMode::Full, ProjectionMode::Reduced);
            let scan = lap_scan(&m.instance.h, &m.instance.a, &i, *s, &mode, &grid)?;
            let mut out = OpOutcome::default();
            let trend = trend(&scan, ctx.tol);
            let mut result = scan.verdict_json();
            result["verdict"] = json!(trend);
            result["eta"] = json!(scan.eta_grid);
            result["sup_norms"] = json!(scan.sup_norms);
            if let Some(e) = expect {
                let want = match e.as_str() {
                    "bounded" => "bounded-trend",
                    "divergent" => "divergent-trend",
                    other => return Err(HarnessError::Parse(format!("expect must be bounded or divergent, got {other:?}"))),
                };
                result["expect"] = json!(want);
                out.check(trend == want, || format!("expected {want}, slope {:.4} gives {trend}", scan.growth_slope));
            }
            out.result = result;
            out.files.push(("csv".into(), scan.to_csv()));
            out.files.push(("dat".into(), scan.to_plot_data()));
            Ok(out)
        }
        Operation::Sequence { interval, s, eta } => {
            let m = ctx.model(name)?;
            let i = ctx.interval(name, interval)?;
            sequence(&m.instance, &i, *s, eta, ctx.tol)
        }
        Operation::Propagation { interval, s, times, vector } => {
            let m = ctx.model(name)?;
            let i = ctx.interval(name, interval)?;
            propagation(&m.instance, &i, *s, times, vector, ctx.tol)
        }
        Operation::Transfer { interval } => {
            let m = ctx.model(name)?;
            let i = ctx.interval(name, interval)?;
            transfer(&m.instance, &i, ctx.tol)
        }
        Operation::Feshbach { interval, projection } => {
            let m = ctx.model(name)?;
            let i = ctx.interval(name, interval)?;
            let p = ctx
                .projection(name, projection, &i)?
                .ok_or_else(|| HarnessError::Parse("feshbach needs a projection".into()))?;
            feshbach(&m.instance, &p, &i, ctx.tol)
        }
        Operation::RankOne => rank_one(&ctx.model(name)?.artificial_parts()?, ctx.tol),
        Operation::RemainderScaling { rho, s, s_prime, k, half_width, r_grid } => {
            let law = RemainderLaw { rho: *rho, s: *s, s_prime: *s_prime, k: *k };
            remainder_scaling(&law, *half_width, &r_grid.clone().unwrap_or_else(default_r_grid), ctx.tol)
        }
        Operation::CutoffScaling { s, alpha, half_width, r_grid } => {
            cutoff_scaling(*s, *alpha, *half_width, &r_grid.clone().unwrap_or_else(default_r_grid), ctx.tol)
        }
        Operation::Example45 { s } => {
            let m = ctx.model(name)?;
            dichotomy(&m.artificial_parts()?, &m.instance, *s, ctx.tol)
        }
    }
}

pub fn default_r_grid() -> Vec<f64> {
    geometric_grid(8.0, 2.0, 5)
}

fn eta_grid(m: &ModelInstance, i: &RealInterval, eta: &Option<String>) -> Result<Vec<f64>, HarnessError> {
    match eta {
        Some(t) => parse_eta(t),
        None => Ok(default_scan_grid(m, i)?),
    }
}

/// `SCAN_POINTS` values from `SCAN_SPAN * floor` down to the floor.
pub fn default_scan_grid(m: &ModelInstance, i: &RealInterval) -> Result<Vec<f64>, HarnessError> {
    let floor = eta_floor(m.h.spectral()?, i);
    Ok(geometric_eta_grid(floor, SCAN_SPAN, SCAN_POINTS))
}

/// The trend verdict under the slope tolerances in `tol`.
pub fn trend(scan: &LapScan, tol: &Tolerances) -> &'static str {
    if scan.growth_slope <= tol.get("bounded_slope") {
        "bounded-trend"
    } else if scan.growth_slope >= tol.get("divergent_slope") {
        "divergent-trend"
    } else {
        "inconclusive"
    }
}

/// A random Hermitian matrix of dimension `n` with entries of size `5 / sqrt(n)`.
pub fn random_hermitian(n: usize, rng: &mut Lcg) -> SelfAdjointOperator {
    let scale = 5.0 / (n as f64).sqrt();
    let m = CMat::from_shape_fn((n, n), |_| c(scale * rng.symmetric(), scale * rng.symmetric()));
    SelfAdjointOperator::hermitian(m)
}

fn hs_config() -> QuadratureConfig {
    QuadratureConfig { extended_validity: true, ..QuadratureConfig::default() }
}

fn hs_verify(symbols: &[String], cases: usize, max_dim: usize, ctx: &Context) -> Result<OpOutcome, HarnessError> {
    if max_dim < 1 || symbols.is_empty() {
        return Err(HarnessError::Parse("hs-verify needs at least one symbol and max_dim >= 1".into()));
    }
    let family = make_cutoff_family();
    let tol = ctx.tol.get("hs");
    let mut rng = Lcg::new(ctx.seed);
    let parsed: Vec<(String, Symbol)> = symbols
        .iter()
        .map(|t| symbol_from_registry(t, &family).map(|s| (t.clone(), s)))
        .collect::<Result<_, _>>()?;
    let exts = parsed
        .iter()
        .map(|(t, s)| almost_analytic(s, RECOMMENDED_TAYLOR_ORDER, &family).map(|e| (t, s, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = OpOutcome::default();
    let mut csv = String::from("case,dim,symbol,rel_error,certificate,converged\n");
    let mut worst = 0.0f64;
    for case in 0..cases {
        let n = (2 + (rng.next_u64() % (max_dim.max(2) as u64 - 1)) as usize).min(max_dim);
        let a = random_hermitian(n, &mut rng);
        for (text, sym, ext) in &exts {
            let oracle = a.apply_function(|t| sym.value(t))?;
            let (approx, cert, converged) = match hs_apply(&a, ext, &hs_config()) {
                Ok(o) => (o.operator, o.certificate.total(), true),
                Err(HsError::QuadratureNotConverged { best }) => (best.operator, best.certificate.total(), false),
                Err(e) => return Err(e.into()),
            };
            let reference = linalg::frobenius(oracle.matrix()).max(vanishing_reference(&a, sym)?);
            let err = linalg::frobenius(&(approx.matrix() - oracle.matrix())) / reference;
            worst = worst.max(err);
            csv.push_str(&format!("{case},{n},{text},{err:e},{cert:e},{converged}\n"));
            out.check(err <= tol, || format!("case {case} ({text}, dim {n}): relative error {err:.3e} > {tol:e}"));
        }
    }
    out.result = json!({ "cases": cases, "symbols": symbols, "max_rel_error": worst });
    out.files.push(("csv".into(), csv));
    Ok(out)
}

/// `1e-3 sqrt(n) max |phi|` over `|t| <= 4 max(||A|| + 1, scale of phi)`:
/// the error scale used when `phi` (nearly) vanishes on the spectrum.
pub fn vanishing_reference(a: &SelfAdjointOperator, phi: &Symbol) -> Result<f64, HarnessError> {
    let l = 4.0 * (a.norm()? + 1.0).max(phi.scale());
    let sup = (0..=2000).map(|k| phi.value(l * (k as f64 / 1000.0 - 1.0)).abs()).fold(0.0, f64::max);
    Ok(1e-3 * (a.dim() as f64).sqrt() * sup)
}

/// `t / <t>`: bounded, with `[H, phi(A)]` probing the virial-like decay.
pub fn virial_like_symbol() -> Symbol {
    Symbol::closed_form("t/<t>", 0.0, |x| *x * x.japanese().recip())
}

/// Lower end of the default sequence grid relative to `max(||H||, 1)`.
pub const SEQUENCE_ETA_MIN: f64 = 1e-5;

/// Six points over two decades from `floor / 1000`, well inside the level
/// spacing, but no lower than `SEQUENCE_ETA_MIN max(||H||, 1)`.
pub fn default_sequence_grid(m: &ModelInstance, i: &RealInterval) -> Result<Vec<f64>, HarnessError> {
    let floor = eta_floor(m.h.spectral()?, i);
    let lowest = (floor / 1000.0).max(SEQUENCE_ETA_MIN * m.h.norm()?.max(1.0));
    Ok(geometric_eta_grid(lowest, 100.0, 6))
}

fn sequence(m: &ModelInstance, i: &RealInterval, s: f64, eta: &Option<String>, tol: &Tolerances) -> Result<OpOutcome, HarnessError> {
    let etas = match eta {
        Some(t) => parse_eta(t)?,
        None => default_sequence_grid(m, i)?,
    };
    let seq = special_sequence(&m.h, &m.a, i, s, &etas)?;
    let v = virial_like_check(&seq, &m.h, &m.a, &virial_like_symbol())?;
    let tol_id = tol.get("identity");
    let mut out = OpOutcome::default();
    out.check(seq.max_identity_error() <= tol_id, || {
        format!("sequence identity error {:.3e} > {tol_id:e}", seq.max_identity_error())
    });
    if seq.positive_mass {
        out.check(v.passed, || format!("virial-like values do not decay (slope {:?})", v.decay_slope));
    }
    let mut csv = String::from("eta,re_z,k,weighted_norm,defect_norm,virial_like\n");
    for (e, val) in seq.entries.iter().zip(&v.values) {
        csv.push_str(&format!("{:e},{:e},{:e},{:e},{:e},{:e}\n", e.eta(), e.z[0], e.k, e.weighted_norm, e.defect_norm, val));
    }
    out.result = json!({
        "s": s,
        "entries": seq.entries.len(),
        "max_identity_error": seq.max_identity_error(),
        "positive_mass": seq.positive_mass,
        "k_growth_slope": seq.k_growth_slope,
        "virial_like_slope": v.decay_slope,
        "virial_like_identically_zero": v.identically_zero,
        "virial_like_passed": v.passed,
    });
    out.files.push(("csv".into(), csv));
    Ok(out)
}

/// `<A>^{-s} f`.
pub fn weighted(a: &SelfAdjointOperator, s: f64, f: &CVec) -> Result<CVec, HarnessError> {
    Ok(a.apply_function(|t| japanese(t).powf(-s))?.matrix().dot(f))
}

fn propagation(
    m: &ModelInstance,
    i: &RealInterval,
    s: f64,
    times: &[f64],
    vector: &str,
    tol: &Tolerances,
) -> Result<OpOutcome, HarnessError> {
    let spec = m.h.spectral()?;
    let n = m.dim();
    let f: CVec = match vector.trim() {
        "eigen" => {
            let mid = i.midpoint();
            let k = (0..n)
                .filter(|&k| i.contains(spec.eigenvalues[k]))
                .min_by(|&x, &y| (spec.eigenvalues[x] - mid).abs().total_cmp(&(spec.eigenvalues[y] - mid).abs()))
                .ok_or_else(|| HarnessError::Internal(format!("no eigenvalue of H in {i}")))?;
            spec.eigenvectors.column(k).to_owned()
        }
        "uniform" => Array1::from_elem(n, c(1.0 / (n as f64).sqrt(), 0.0)),
        t => {
            let k = t
                .strip_prefix("basis:")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k < n)
                .ok_or_else(|| HarnessError::Parse(format!("vector must be eigen, uniform or basis:k with k < {n}, got {t:?}")))?;
            mourre_models::basis_vector(n, k)
        }
    };
    let r = time_decay_probe(&m.h, &m.a, i, s, &f, times)?;
    let mut out = OpOutcome::default();
    let mut expected = Vec::new();
    if vector.trim() == "eigen" {
        let w = linalg::vec_norm(&weighted(&m.a, s, &f)?).powi(2);
        let t_tol = tol.get("propagation");
        for (t, j) in times.iter().zip(&r.integral) {
            let e = 2.0 * t * w;
            expected.push(e);
            let rel = (j - e).abs() / e.abs().max(f64::MIN_POSITIVE);
            out.check(rel <= t_tol, || format!("J({t}) = {j:e} differs from 2T||<A>^-s f||^2 = {e:e} by {rel:.3e}"));
        }
    }
    out.check(r.integral.iter().all(|v| v.is_finite()), || "J(T) is not finite".into());
    let mut csv = String::from("T,J,cesaro_mean\n");
    for ((t, j), cm) in times.iter().zip(&r.integral).zip(&r.cesaro_mean) {
        csv.push_str(&format!("{t:e},{j:e},{cm:e}\n"));
    }
    out.result = json!({
        "s": s,
        "vector": vector,
        "integral": r.integral,
        "expected": expected,
        "plateau": r.plateau,
        "localized_weight": r.localized_weight,
        "oscillation_weight": r.oscillation_weight,
        "divergent": r.divergent,
    });
    out.files.push(("csv".into(), csv));
    Ok(out)
}

/// `chi` rescaled to be 1 on `[mid - width, mid + width]`.
pub fn bump(center: f64, width: f64) -> Result<Symbol, HarnessError> {
    Ok(make_cutoff_family().chi.affine(center, width)?)
}

/// `theta` equal to 1 on the middle half of `I` and supported in `I`;
/// `tau` equal to 1 on `I`.
pub fn transfer(m: &ModelInstance, i: &RealInterval, tol: &Tolerances) -> Result<OpOutcome, HarnessError> {
    let theta = bump(i.midpoint(), i.length() / 4.0)?;
    let tau = bump(i.midpoint(), i.length() / 2.0)?;
    let r = transfer_check(&m.h, &m.a, &tau, &theta, i, None)?;
    let t = tol.get("identity");
    let mut out = OpOutcome::default();
    out.check(r.resolvent_residual <= t, || format!("resolvent residual {:.3e} > {t:e}", r.resolvent_residual));
    if let Some(fm) = r.form_min {
        out.check(fm >= -t * r.form_scale, || format!("transferred form minimum {fm:.3e} is negative"));
    }
    out.result = serde_json::to_value(&r)?;
    Ok(out)
}

/// `phi(t) = t * bump`, which vanishes at 0.
pub fn feshbach(m: &ModelInstance, p: &Projection, i: &RealInterval, tol: &Tolerances) -> Result<OpOutcome, HarnessError> {
    let phi = identity().product(&bump(i.midpoint(), i.length() / 2.0)?);
    let r = feshbach_check(&m.h, p, &phi)?;
    let t = tol.get("identity");
    let mut out = OpOutcome::default();
    out.check(r.residual <= t, || format!("compressed calculus residual {:.3e} > {t:e}", r.residual));
    out.result = json!({ "projection_rank": p.rank, "kills_range": r.kills_range,
        "matches_compression": r.matches_compression, "residual": r.residual });
    Ok(out)
}

pub fn rank_one(parts: &ArtificialParts, tol: &Tolerances) -> Result<OpOutcome, HarnessError> {
    let c = &parts.c;
    let t = tol.get("rank_one");
    let mut out = OpOutcome::default();
    out.check(c.commutator_identity_residual <= t, || {
        format!("rank-one commutator identity residual {:.3e} > {t:e}", c.commutator_identity_residual)
    });
    out.result = json!({
        "commutator_identity_residual": c.commutator_identity_residual,
        "terms_used": c.terms_used,
        "tail_bound": c.tail_bound,
        "gram_condition": c.gram_condition,
        "weight_bound": parts.weight_bound,
        "max_weight_norm": c.weight_norms.iter().cloned().fold(0.0, f64::max),
        "c_norm": parts.c_norm,
    });
    Ok(out)
}

/// A fit counts when its slope is within `tol` of the target; identically
/// vanishing norms satisfy any decay law.
pub fn fit_ok(fit: &ScalingFit, tol: f64) -> bool {
    match (fit.verdict, fit.fitted_slope) {
        (ScalingVerdict::IdenticallyZero, _) => true,
        (_, Some(slope)) => (slope - fit.target_slope).abs() <= tol && fit.residual <= fit.residual_cap,
        _ => false,
    }
}

fn fit_json(fit: &ScalingFit) -> Value {
    json!({
        "slope": fit.fitted_slope,
        "target": fit.target_slope,
        "residual": fit.residual,
        "norms": fit.norms,
        "r": fit.r_values,
    })
}

pub fn remainder_scaling(law: &RemainderLaw, half_width: usize, r_grid: &[f64], tol: &Tolerances) -> Result<OpOutcome, HarnessError> {
    let fit = remainder_probe(&DiagonalFrame::symmetric(half_width), law, r_grid)?;
    let t = tol.get("scaling_slope");
    let mut out = OpOutcome::default();
    let within = law.within_hypotheses();
    if within {
        out.check(fit_ok(&fit, t), || {
            format!("{law:?}: slope {:?} not within {t} of {}", fit.fitted_slope, law.target())
        });
    }
    let mut result = fit_json(&fit);
    result["law"] = serde_json::to_value(law)?;
    result["within_hypotheses"] = json!(within);
    out.result = result;
    out.files.push(("csv".into(), fit.to_csv()));
    Ok(out)
}

pub fn cutoff_scaling(s: f64, alpha: f64, half_width: usize, r_grid: &[f64], tol: &Tolerances) -> Result<OpOutcome, HarnessError> {
    let laws = cutoff_probe(&DiagonalFrame::dimer(half_width), s, alpha, r_grid)?;
    let (tn, tc) = (tol.get("cutoff_norm_slope"), tol.get("scaling_slope"));
    let mut out = OpOutcome::default();
    out.check(fit_ok(&laws.norm_fit, tn), || {
        format!("||C_R <A>^{alpha}|| slope {:?} not within {tn} of {alpha}", laws.norm_fit.fitted_slope)
    });
    let comm_within = (0.0..1.0).contains(&alpha);
    if comm_within {
        out.check(fit_ok(&laws.commutator_fit, tc), || {
            format!("||[B, C_R] <A>^{alpha}|| slope {:?} not within {tc} of {}", laws.commutator_fit.fitted_slope, alpha - 1.0)
        });
    }
    let mut csv = String::from("R,cutoff_norm,commutator_norm\n");
    for ((r, a), b) in r_grid.iter().zip(&laws.norm_fit.norms).zip(&laws.commutator_fit.norms) {
        csv.push_str(&format!("{r:e},{a:e},{b:e}\n"));
    }
    out.result = json!({
        "s": s,
        "alpha": alpha,
        "norm": fit_json(&laws.norm_fit),
        "commutator": fit_json(&laws.commutator_fit),
        "commutator_within_hypotheses": comm_within,
    });
    out.files.push(("csv".into(), csv));
    Ok(out)
}

/// The strict estimate fails on the interval while the estimate with the
/// second-block projection holds, and the weighted resolvent stays bounded
/// only after that block is projected out.
pub fn dichotomy(parts: &ArtificialParts, m: &ModelInstance, s: f64, tol: &Tolerances) -> Result<OpOutcome, HarnessError> {
    let i = m.recommended_interval;
    let p = parts.block_projection();
    let report = mourre_best_constant(&m.h, &m.a, &i, Some(&p))?;
    let h0 = mourre_best_constant(&parts.h0.h, &parts.h0.a, &i, None)?;
    let grid = default_scan_grid(m, &i)?;
    let reduced = lap_scan(&m.h, &m.a, &i, s, &ProjectionMode::Reduced(p.clone()), &grid)?;
    let full = lap_scan(&m.h, &m.a, &i, s, &ProjectionMode::Full, &grid)?;

    let (t_strict, ratio) = (tol.get("strict_constant"), tol.get("projected_ratio"));
    let (bounded, divergent) = (tol.get("bounded_slope"), tol.get("divergent_slope"));
    let c_strict = report.c_strict.value;
    let c_proj = report.c_projected.value;
    let c_h0 = h0.c_strict.value;
    let mut out = OpOutcome::default();
    out.check(c_strict <= t_strict, || format!("c_strict = {c_strict:.4e} exceeds {t_strict:e}"));
    out.check(c_proj >= ratio * c_h0, || {
        format!("c_projected = {c_proj:.4} is below {ratio} x c_strict(H0) = {:.4}", ratio * c_h0)
    });
    out.check(reduced.growth_slope <= bounded, || {
        format!("reduced scan slope {:.4} exceeds {bounded}", reduced.growth_slope)
    });
    out.check(full.growth_slope >= divergent, || {
        format!("full scan slope {:.4} is below {divergent}", full.growth_slope)
    });
    out.result = json!({
        "interval": [i.lo, i.hi],
        "s": s,
        "c_strict": c_strict,
        "c_projected": c_proj,
        "c_strict_h0": c_h0,
        "projection_rank": p.rank,
        "reduced_slope": reduced.growth_slope,
        "full_slope": full.growth_slope,
        "reduced_verdict": trend(&reduced, tol),
        "full_verdict": trend(&full, tol),
        "eigenvalues_in_interval": report.eigenvalues_in_interval.len(),
        "finite_dimension_note": "every finite-dimensional strict constant is <= 0 by the virial identity",
        "flags": report.flags(),
    });
    out.files.push(("reduced.csv".into(), reduced.to_csv()));
    out.files.push(("full.csv".into(), full.to_csv()));
    Ok(out)
}
