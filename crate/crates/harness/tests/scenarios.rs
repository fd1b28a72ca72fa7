use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use mourre_lab::scenario::{parse_eta, parse_interval, parse_tolerance, TOLERANCES};
use mourre_lab::{run_scenario, HarnessError, Operation, Scenario, Tolerances, SCHEMA};
use proptest::prelude::*;
use serde_json::Value;

fn shipped(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(format!("{name}.toml"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("scenarios").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

/// Absolute tolerance for a numeric field of a golden report.
fn field_tolerance(key: &str, golden: f64) -> f64 {
    if key.contains("residual") || key.contains("error") || key.contains("deviation") {
        1e-12
    } else if key.contains("slope") {
        1e-6
    } else {
        1e-9 * golden.abs().max(1.0)
    }
}

fn compare(path: &str, key: &str, got: &Value, want: &Value, diffs: &mut Vec<String>) {
    match (got, want) {
        (Value::Number(g), Value::Number(w)) => {
            let (g, w) = (g.as_f64().unwrap(), w.as_f64().unwrap());
            if (g - w).abs() > field_tolerance(key, w) {
                diffs.push(format!("{path}: {g} vs golden {w}"));
            }
        }
        (Value::Array(g), Value::Array(w)) if g.len() == w.len() => {
            for (i, (a, b)) in g.iter().zip(w).enumerate() {
                compare(&format!("{path}[{i}]"), key, a, b, diffs);
            }
        }
        (Value::Object(g), Value::Object(w)) => {
            for k in g.keys().chain(w.keys()) {
                match (g.get(k), w.get(k)) {
                    (Some(a), Some(b)) => compare(&format!("{path}.{k}"), k, a, b, diffs),
                    _ if g.contains_key(k) && w.contains_key(k) => {}
                    _ => diffs.push(format!("{path}.{k}: present on one side only")),
                }
            }
        }
        _ if got == want => {}
        _ => diffs.push(format!("{path}: {got} vs golden {want}")),
    }
}

#[test]
fn lattice_scenario_matches_golden_report() {
    let sc = Scenario::load(&shipped("lattice")).unwrap();
    let report = run_scenario(&sc).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    let golden: Value =
        serde_json::from_str(include_str!("golden/lattice.json")).unwrap();
    let mut diffs = Vec::new();
    compare("$", "", &report.json, &golden, &mut diffs);
    diffs.dedup();
    assert!(diffs.is_empty(), "{}", diffs.join("\n"));
}

#[test]
fn runs_are_byte_identical() {
    let sc = Scenario::load(&shipped("lattice")).unwrap();
    let (a, b) = (scratch("det-a"), scratch("det-b"));
    run_scenario(&sc).unwrap().write(&a).unwrap();
    run_scenario(&sc).unwrap().write(&b).unwrap();
    let mut names: Vec<_> = std::fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 3);
    for n in names.iter().filter(|n| *n != "run_info.json") {
        assert_eq!(std::fs::read(a.join(n)).unwrap(), std::fs::read(b.join(n)).unwrap(), "{n:?}");
    }
    let info: Value = serde_json::from_slice(&std::fs::read(a.join("run_info.json")).unwrap()).unwrap();
    assert!(info.get("unix_time").is_some());
}

#[test]
fn empty_scenario_passes_with_no_operations() {
    let sc = Scenario::load(&shipped("empty")).unwrap();
    let report = run_scenario(&sc).unwrap();
    assert!(report.passed());
    assert_eq!(report.json["schema"], SCHEMA);
    assert_eq!(report.json["operations"], Value::Array(vec![]));
    assert_eq!(report.json["model"], Value::Null);
    assert!(report.files.is_empty());
}

#[test]
fn every_shipped_scenario_parses() {
    for name in ["empty", "lattice", "multiplication", "example45"] {
        let sc = Scenario::load(&shipped(name)).unwrap();
        assert_eq!(sc.name, name);
        assert_eq!(Scenario::parse(&sc.to_toml()).unwrap(), sc);
    }
}

#[test]
fn unknown_operation_is_a_parse_error_naming_it() {
    let err = Scenario::parse("name = \"x\"\n[[operation]]\nop = \"spectral-flow\"\n").unwrap_err();
    assert!(matches!(&err, HarnessError::Parse(m) if m.contains("spectral-flow")), "{err}");
    assert_eq!(err.exit_code(), 1);
}

#[test]
fn unknown_key_is_a_parse_error() {
    let err = Scenario::parse("name = \"x\"\n[[operation]]\nop = \"virial\"\nwidth = 3\n").unwrap_err();
    assert!(matches!(&err, HarnessError::Parse(m) if m.contains("width")), "{err}");
}

#[test]
fn unknown_model_is_a_registry_miss() {
    let sc = Scenario { model: Some("harmonic{N=8}".into()), ..Scenario::parse("name = \"x\"").unwrap() };
    let err = run_scenario(&sc).unwrap_err();
    assert!(matches!(err, HarnessError::RegistryMiss(_)), "{err}");
    assert_eq!(err.exit_code(), 1);
}

#[test]
fn operation_without_model_is_a_parse_error() {
    let sc = Scenario::parse("name = \"x\"\n[[operation]]\nop = \"virial\"\n").unwrap();
    assert!(matches!(run_scenario(&sc).unwrap_err(), HarnessError::Parse(_)));
}

#[test]
fn tolerance_overrides_change_verdicts() {
    let text = "name = \"x\"\nmodel = \"lattice{N=16}\"\n[[operation]]\nop = \"virial\"\n";
    let mut sc = Scenario::parse(text).unwrap();
    assert!(run_scenario(&sc).unwrap().passed());
    sc.tolerances.insert("virial".into(), 0.0);
    let strict = run_scenario(&sc).unwrap();
    assert_eq!(strict.json["tolerances"]["virial"], 0.0);
    let residual = strict.json["operations"][0]["result"]["max_relative_residual"].as_f64().unwrap();
    assert_eq!(strict.passed(), residual == 0.0);
}

#[test]
fn unknown_or_negative_tolerance_is_rejected() {
    let unknown = BTreeMap::from([("virial_bound".to_string(), 1.0)]);
    assert!(matches!(Tolerances::resolve(&unknown), Err(HarnessError::Parse(m)) if m.contains("virial_bound")));
    let negative = BTreeMap::from([("virial".to_string(), -1.0)]);
    assert!(Tolerances::resolve(&negative).is_err());
    assert!(parse_tolerance("virial").is_err());
    assert_eq!(parse_tolerance("hs = 1e-4").unwrap(), ("hs".to_string(), 1e-4));
}

#[test]
fn small_lap_scan_writes_csv_and_plot_files() {
    let text = "name = \"x\"\nmodel = \"multiplication{N=32}\"\n[[operation]]\nop = \"lap\"\ns = 0.7\n";
    let report = run_scenario(&Scenario::parse(text).unwrap()).unwrap();
    let names: Vec<&str> = report.files.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["00-lap.csv", "00-lap.dat"]);
    assert!(report.files[0].1.starts_with("eta,sup_norm\n"));
    let slope = report.json["operations"][0]["result"]["slope"].as_f64().unwrap();
    assert!(slope.is_finite());
}

#[test]
fn expectation_mismatch_is_a_verdict_failure() {
    let text = "name = \"x\"\nmodel = \"lattice{N=16}\"\n[[operation]]\nop = \"lap\"\ns = 0.0\nexpect = \"bounded\"\n";
    let report = run_scenario(&Scenario::parse(text).unwrap()).unwrap();
    assert!(!report.passed());
    assert!(report.failures[0].starts_with("00-lap: "), "{:?}", report.failures);
}

#[test]
fn operation_names_round_trip_through_toml() {
    let ops = [
        Operation::RankOne,
        Operation::Example45 { s: 0.7 },
        Operation::Virial { interval: Some("0.2:0.6".into()) },
    ];
    for op in ops {
        let sc = Scenario { operations: vec![op.clone()], ..Scenario::parse("name = \"x\"").unwrap() };
        let text = sc.to_toml();
        assert!(text.contains(&format!("op = \"{}\"", op.name())), "{text}");
        assert_eq!(Scenario::parse(&text).unwrap().operations, vec![op]);
    }
}

#[test]
fn every_default_tolerance_resolves() {
    let t = Tolerances::default();
    for (name, v) in TOLERANCES {
        assert_eq!(t.get(name), *v);
    }
}

proptest! {
    #[test]
    fn eta_grid_is_decreasing_between_the_bounds(lo in 1e-8f64..1.0, ratio in 1.5f64..1e4, n in 2usize..40) {
        let hi = lo * ratio;
        let g = parse_eta(&format!("{lo:e}:{hi:e}:{n}")).unwrap();
        prop_assert_eq!(g.len(), n);
        prop_assert!((g[0] / hi - 1.0).abs() < 1e-12);
        prop_assert!((g[n - 1] / lo - 1.0).abs() < 1e-12);
        prop_assert!(g.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn eta_grid_rejects_inverted_bounds(lo in 1e-6f64..1.0, n in 2usize..10) {
        let text = format!("{}:{}:{n}", 2.0 * lo, lo);
        prop_assert!(parse_eta(&text).is_err());
    }

    #[test]
    fn interval_parses_its_endpoints(lo in -10.0f64..10.0, len in 1e-3f64..10.0) {
        let hi = lo + len;
        let i = parse_interval(&format!("{lo}:{hi}")).unwrap();
        prop_assert_eq!((i.lo, i.hi), (lo, hi));
    }

    #[test]
    fn tolerance_overrides_are_applied(idx in 0usize..11, v in 0.0f64..1.0) {
        let name = TOLERANCES[idx].0;
        let t = Tolerances::resolve(&BTreeMap::from([(name.to_string(), v)])).unwrap();
        prop_assert_eq!(t.get(name), v);
    }
}
