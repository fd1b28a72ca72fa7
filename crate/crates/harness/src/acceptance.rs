//! The ten acceptance criteria, shared by the `suite` subcommand and the
//! `acceptance` test target.

use std::time::Instant;

use mourre_core::linalg::{self, c, CMat};
use mourre_core::{RealInterval, SelfAdjointOperator};
use mourre_hs::probes::RemainderLaw;
use mourre_hs::{commutator_expand, QuadratureConfig};
use mourre_lap::time_decay_probe;
use mourre_models::rng::Lcg;
use mourre_models::model_suite;
use mourre_symbols::{identity, make_cutoff_family, symbol_from_registry};
use ndarray::Array1;
use serde::Serialize;
use serde_json::{json, Value};

use crate::ops::{self, default_r_grid, random_hermitian, weighted, Context, LoadedModel, OpOutcome};
use crate::scenario::{Operation, Tolerances};
use crate::HarnessError;

#[derive(Debug, Clone, Serialize)]
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub summary: String,
    pub failures: Vec<String>,
    pub seconds: f64,
    pub data: Value,
}

impl Criterion {
    pub fn line(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        format!("criterion {:>2} {mark}  {}: {} ({:.1} s)", self.id, self.title, self.summary, self.seconds)
    }
}

pub const TITLES: [&str; 10] = [
    "functional calculus oracle equivalence",
    "commutator expansion identity",
    "expansion remainder scaling",
    "square-root cutoff scaling laws",
    "virial theorem across the model suite",
    "strict vs projected Mourre dichotomy",
    "exact spectral identities",
    "resolvent growth threshold in s",
    "special sequence identities",
    "propagation probe closed forms",
];

/// Runs criterion `id` (1-based); errors count as failures.
pub fn run(id: usize) -> Criterion {
    let title = TITLES[id - 1];
    let start = Instant::now();
    let outcome = match id {
        1 => oracle_equivalence(),
        2 => expansion_identity(),
        3 => remainder_scaling(),
        4 => cutoff_scaling(),
        5 => virial(),
        6 => dichotomy(),
        7 => spectral_identities(),
        8 => threshold(),
        9 => sequences(),
        10 => propagation(),
        _ => Err(HarnessError::Internal(format!("no criterion {id}"))),
    };
    let seconds = start.elapsed().as_secs_f64();
    match outcome {
        Ok((summary, out)) => Criterion {
            id,
            title,
            passed: out.failures.is_empty(),
            summary,
            failures: out.failures,
            seconds,
            data: out.result,
        },
        Err(e) => Criterion {
            id,
            title,
            passed: false,
            summary: format!("error: {e}"),
            failures: vec![e.to_string()],
            seconds,
            data: Value::Null,
        },
    }
}

pub fn run_all() -> Vec<Criterion> {
    (1..=TITLES.len()).map(run).collect()
}

type Outcome = Result<(String, OpOutcome), HarnessError>;

/// Merges the outcomes of several operations under `label`s.
fn merge(parts: Vec<(String, OpOutcome)>) -> OpOutcome {
    let mut out = OpOutcome::default();
    let mut data = serde_json::Map::new();
    for (label, part) in parts {
        out.failures.extend(part.failures.iter().map(|f| format!("{label}: {f}")));
        data.insert(label, part.result);
    }
    out.result = Value::Object(data);
    out
}

fn with_model(text: &str, op: Operation, tol: &Tolerances) -> Result<OpOutcome, HarnessError> {
    let m = LoadedModel::load(text)?;
    ops::execute(&op, &Context { model: Some(&m), tol, seed: 7 })
}

/// Time budget for the full functional calculus sweep.
pub const SWEEP_SECONDS: f64 = 60.0;

fn oracle_equivalence() -> Outcome {
    let tol = Tolerances::default();
    let op = Operation::HsVerify {
        symbols: ["chi", "chi{R=4}", "lorentzian", "phi_R{s=0.6,R=4}"].map(String::from).to_vec(),
        cases: 50,
        max_dim: 32,
    };
    let start = Instant::now();
    let mut out = ops::execute(&op, &Context { model: None, tol: &tol, seed: 7 })?;
    let secs = start.elapsed().as_secs_f64();
    if secs > SWEEP_SECONDS {
        out.failures.push(format!("sweep took {secs:.1} s, budget {SWEEP_SECONDS} s"));
    }
    out.result["seconds"] = json!(secs);
    let worst = out.result["max_rel_error"].as_f64().unwrap_or(f64::NAN);
    Ok((format!("max relative error {worst:.2e} over 200 evaluations in {secs:.1} s"), out))
}

/// Quadrature settings for the expansion remainder.
pub fn remainder_quadrature() -> QuadratureConfig {
    QuadratureConfig { refinement_levels: 6, target_rel_error: 1e-10, ..QuadratureConfig::default() }
}

fn expansion_identity() -> Outcome {
    let family = make_cutoff_family();
    let symbols = ["lorentzian", "chi", "chi{R=2}", "japanese{rho=-0.5}", "phi_R{s=0.6,R=2}"];
    let q = remainder_quadrature();
    let mut rng = Lcg::new(11);
    let mut out = OpOutcome::default();
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for case in 0..10 {
        let n = 4 + case % 5;
        let a = random_hermitian(n, &mut rng);
        let b = random_hermitian(n, &mut rng).into_matrix();
        let text = symbols[case % symbols.len()];
        let phi = symbol_from_registry(text, &family)?;
        for k in 1..=3 {
            let r = commutator_expand(&b, &a, &phi, k, Some(&q))?;
            let comm = linalg::frobenius(&r.commutator);
            let rel = r.quadrature_identity_residual().unwrap_or(f64::NAN) / comm;
            worst = worst.max(rel);
            rows.push(json!({ "case": case, "dim": n, "symbol": text, "k": k, "relative_residual": rel }));
            if !(rel <= 1e-8) {
                out.failures.push(format!("case {case} ({text}, k = {k}): residual {rel:.3e} x ||[phi(A), B]||"));
            }
        }
    }
    let a = random_hermitian(8, &mut rng);
    let b = random_hermitian(8, &mut rng).into_matrix();
    let id = commutator_expand(&b, &a, &identity(), 2, None)?;
    let i2 = linalg::frobenius(&id.remainder);
    if !(i2 <= 1e-10) {
        out.failures.push(format!("identity symbol: ||I_2|| = {i2:.3e}"));
    }
    out.result = json!({ "cases": rows, "max_relative_residual": worst, "identity_remainder": i2 });
    Ok((format!("max residual {worst:.2e} x ||[phi(A), B]||, identity ||I_2|| = {i2:.1e}"), out))
}

/// `(rho, s, s', k)` combinations of the remainder law.
pub const REMAINDER_COMBOS: [(f64, f64, f64, usize); 6] = [
    (-1.2, 0.6, 0.6, 2),
    (0.0, 0.5, 0.5, 2),
    (-0.5, 0.3, 0.7, 2),
    (0.5, 0.5, 0.5, 2),
    (0.0, 0.5, 0.9, 3),
    (1.0, 0.6, 0.4, 3),
];

fn remainder_scaling() -> Outcome {
    let tol = Tolerances::default();
    let mut parts = Vec::new();
    let mut slopes = Vec::new();
    for (rho, s, s_prime, k) in REMAINDER_COMBOS {
        let law = RemainderLaw { rho, s, s_prime, k };
        let out = ops::remainder_scaling(&law, 256, &default_r_grid(), &tol)?;
        slopes.push(format!("{:.2}/{:.2}", out.result["slope"].as_f64().unwrap_or(f64::NAN), law.target()));
        parts.push((format!("rho={rho},s={s},s'={s_prime},k={k}"), out));
    }
    Ok((format!("fitted/target slopes {}", slopes.join(" ")), merge(parts)))
}

fn cutoff_scaling() -> Outcome {
    let tol = Tolerances::default();
    let mut parts = Vec::new();
    let mut slopes = Vec::new();
    for alpha in [0.0, 0.5] {
        let out = ops::cutoff_scaling(0.9, alpha, 256, &default_r_grid(), &tol)?;
        let f = |k: &str| out.result[k]["slope"].as_f64().unwrap_or(f64::NAN);
        slopes.push(format!("alpha={alpha}: {:.3}, {:.3}", f("norm"), f("commutator")));
        parts.push((format!("alpha={alpha}"), out));
    }
    Ok((format!("norm and commutator slopes {}", slopes.join("; ")), merge(parts)))
}

/// An interval containing the whole spectrum of `h`.
fn whole_spectrum(h: &SelfAdjointOperator) -> Result<String, HarnessError> {
    let r = h.norm()? + 1.0;
    Ok(format!("{}:{}", -r, r))
}

fn virial() -> Outcome {
    let tol = Tolerances::default();
    let mut parts = Vec::new();
    let mut worst = 0.0f64;
    for text in model_suite() {
        let m = LoadedModel::load(&text)?;
        let op = Operation::Virial { interval: Some(whole_spectrum(&m.instance.h)?) };
        let out = ops::execute(&op, &Context { model: Some(&m), tol: &tol, seed: 7 })?;
        worst = worst.max(out.result["max_relative_residual"].as_f64().unwrap_or(f64::NAN));
        parts.push((text, out));
    }
    Ok((format!("max residual {worst:.2e} x ||[H, iA]|| over {} models", parts.len()), merge(parts)))
}

pub const ARTIFICIAL: &str = "artificial{N0=128,N1=16,lambda=0.4,decay=2,seed=7}";

fn dichotomy() -> Outcome {
    let out = with_model(ARTIFICIAL, Operation::Example45 { s: 0.7 }, &Tolerances::default())?;
    let r = &out.result;
    let f = |k: &str| r[k].as_f64().unwrap_or(f64::NAN);
    let summary = format!(
        "c_strict {:.3e}, c_projected {:.3} vs c_strict(H0) {:.3}, reduced slope {:.3}, full slope {:.3}",
        f("c_strict"),
        f("c_projected"),
        f("c_strict_h0"),
        f("reduced_slope"),
        f("full_slope")
    );
    Ok((summary, out))
}

fn spectral_identities() -> Outcome {
    let tol = Tolerances::default();
    let mut parts = Vec::new();
    let (mut tr, mut fe, mut ro) = (0.0f64, 0.0f64, 0.0f64);
    for text in model_suite() {
        let m = LoadedModel::load(&text)?;
        let ctx = Context { model: Some(&m), tol: &tol, seed: 7 };
        let t = ops::execute(&Operation::Transfer { interval: None }, &ctx)?;
        tr = tr.max(t.result["resolvent_residual"].as_f64().unwrap_or(f64::NAN));
        parts.push((format!("{text} transfer"), t));
        let f = ops::execute(&Operation::Feshbach { interval: None, projection: "spectral".into() }, &ctx)?;
        fe = fe.max(f.result["residual"].as_f64().unwrap_or(f64::NAN));
        parts.push((format!("{text} feshbach"), f));
        if m.reference.name == "artificial" {
            let r = ops::execute(&Operation::RankOne, &ctx)?;
            ro = ro.max(r.result["commutator_identity_residual"].as_f64().unwrap_or(f64::NAN));
            parts.push((format!("{text} rank-one"), r));
        }
    }
    Ok((format!("transfer {tr:.1e}, compressed calculus {fe:.1e}, rank-one {ro:.1e}"), merge(parts)))
}

pub const THRESHOLD_MODEL: &str = "multiplication{N=512}";

fn threshold() -> Outcome {
    let tol = Tolerances::default();
    let m = LoadedModel::load(THRESHOLD_MODEL)?;
    let ctx = Context { model: Some(&m), tol: &tol, seed: 7 };
    let mut parts = Vec::new();
    let mut slopes = Vec::new();
    for (s, expect) in [(0.3, "divergent"), (0.7, "bounded")] {
        let op = Operation::Lap { interval: None, s, eta: None, projection: "none".into(), expect: Some(expect.into()) };
        let out = ops::execute(&op, &ctx)?;
        slopes.push(format!("s={s}: {:.3}", out.result["slope"].as_f64().unwrap_or(f64::NAN)));
        parts.push((format!("s={s}"), out));
    }
    Ok((format!("growth slopes {}", slopes.join(", ")), merge(parts)))
}

fn sequences() -> Outcome {
    let tol = Tolerances::default();
    let mut parts = Vec::new();
    let (mut worst, mut positive) = (0.0f64, 0usize);
    for text in model_suite() {
        let out = with_model(&text, Operation::Sequence { interval: None, s: 0.7, eta: None }, &tol)?;
        worst = worst.max(out.result["max_identity_error"].as_f64().unwrap_or(f64::NAN));
        positive += out.result["positive_mass"].as_bool().unwrap_or(false) as usize;
        parts.push((text, out));
    }
    let n = parts.len();
    Ok((format!("max identity error {worst:.1e}, {positive} of {n} sequences with positive mass"), merge(parts)))
}

/// `J(T)` for `H = diag(l1, l2)` and `f = (c1, c2)` by hand:
/// `2T (|c1|^2 M11 + |c2|^2 M22) + 2 Re(conj(c1) c2 M12) 2 sin((l2 - l1) T) / (l2 - l1)`
/// with `M = <A>^{-2s}`.
fn two_level_closed_form(l: [f64; 2], cf: [f64; 2], m: &CMat, t: f64) -> f64 {
    let d = l[1] - l[0];
    2.0 * t * (cf[0] * cf[0] * m[[0, 0]].re + cf[1] * cf[1] * m[[1, 1]].re)
        + 2.0 * (cf[0] * cf[1] * m[[0, 1]]).re * 2.0 * (d * t).sin() / d
}

fn propagation() -> Outcome {
    let tol = Tolerances::default();
    let times = vec![1.0, 10.0, 100.0, 1000.0];
    let mut parts = Vec::new();
    for text in ["lattice{N=64,periodic=0}", "multiplication{N=64,L=50}", ARTIFICIAL] {
        let op = Operation::Propagation { interval: None, s: 0.7, times: times.clone(), vector: "eigen".into() };
        parts.push((format!("{text} eigenvector"), with_model(text, op, &tol)?));
    }
    let (l, cf, s) = ([-0.3, 0.45], [0.6, 0.8], 0.6);
    let h = SelfAdjointOperator::diagonal(&l);
    let mut am = CMat::zeros((2, 2));
    am[[0, 0]] = c(0.7, 0.0);
    am[[1, 1]] = c(-1.3, 0.0);
    am[[0, 1]] = c(0.4, 0.0);
    am[[1, 0]] = c(0.4, 0.0);
    let a = SelfAdjointOperator::hermitian(am);
    let m = a.apply_function(|t| (1.0 + t * t).powf(-s))?.into_matrix();
    let f = Array1::from_vec(vec![c(cf[0], 0.0), c(cf[1], 0.0)]);
    let interval = RealInterval::closed(-1.0, 1.0)?;
    let r = time_decay_probe(&h, &a, &interval, s, &f, &times)?;
    let mut two = OpOutcome::default();
    let mut worst = 0.0f64;
    for (t, j) in times.iter().zip(&r.integral) {
        let e = two_level_closed_form(l, cf, &m, *t);
        let rel = (j - e).abs() / e.abs();
        worst = worst.max(rel);
        if !(rel <= tol.get("propagation")) {
            two.failures.push(format!("T = {t}: probe {j:e} vs closed form {e:e}"));
        }
    }
    let wf = linalg::vec_norm(&weighted(&a, s, &f)?).powi(2);
    two.result = json!({ "max_relative_error": worst, "weighted_norm_squared": wf, "integral": r.integral });
    parts.push(("two-level closed form".into(), two));
    let out = merge(parts);
    Ok((format!("{} eigenvector checks, two-level closed form error {worst:.1e}", 3), out))
}
