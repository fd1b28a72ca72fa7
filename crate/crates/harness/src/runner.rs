use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};

use crate::ops::{execute, Context, LoadedModel};
use crate::scenario::{Scenario, Tolerances};
use crate::HarnessError;

pub const SCHEMA: &str = "mourre-lab/1";

/// The JSON report and the per-operation text files of one scenario run.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub files: Vec<(String, String)>,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
        s.push('\n');
        s
    }

    /// Writes `report.json`, the operation files and a `run_info.json` sidecar
    /// holding everything that varies between identical runs.
    pub fn write(&self, dir: &Path) -> Result<(), HarnessError> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), self.to_json_string())?;
        for (name, body) in &self.files {
            std::fs::write(dir.join(name), body)?;
        }
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let info = json!({ "unix_time": secs, "version": env!("CARGO_PKG_VERSION") });
        std::fs::write(dir.join("run_info.json"), serde_json::to_string_pretty(&info)? + "\n")?;
        Ok(())
    }
}

fn file_name(index: usize, op: &str, key: &str) -> String {
    match key.rsplit_once('.') {
        Some((stem, ext)) => format!("{index:02}-{op}-{stem}.{ext}"),
        None => format!("{index:02}-{op}.{key}"),
    }
}

/// Runs every operation in order. Operation errors abort the run; verdict
/// failures are collected in the report.
pub fn run_scenario(scenario: &Scenario) -> Result<Report, HarnessError> {
    let tol = Tolerances::resolve(&scenario.tolerances)?;
    let model = scenario.model.as_deref().map(LoadedModel::load).transpose()?;
    let ctx = Context { model: model.as_ref(), tol: &tol, seed: scenario.seed };
    let mut ops = Vec::new();
    let mut files = Vec::new();
    let mut failures = Vec::new();
    for (index, op) in scenario.operations.iter().enumerate() {
        let out = execute(op, &ctx)?;
        let mut names = Vec::new();
        for (key, body) in out.files {
            let name = file_name(index, op.name(), &key);
            names.push(name.clone());
            files.push((name, body));
        }
        failures.extend(out.failures.iter().map(|f| format!("{index:02}-{}: {f}", op.name())));
        ops.push(json!({
            "index": index,
            "op": op.name(),
            "tag": op.tag(),
            "passed": out.failures.is_empty(),
            "failures": out.failures,
            "result": out.result,
            "files": names,
        }));
    }
    let json = json!({
        "schema": SCHEMA,
        "scenario": scenario.name,
        "model": model.as_ref().map(|m| json!({ "reference": m.reference.to_string(), "summary": m.instance.summary() })),
        "seed": scenario.seed,
        "tolerances": tol,
        "passed": failures.is_empty(),
        "operations": ops,
    });
    Ok(Report { json, files, failures })
}

/// Runs `scenario`, writes to `out` (or the scenario's own `out`) when given,
/// otherwise prints the report, and maps failed verdicts to an error.
pub fn run_and_emit(scenario: &Scenario, out: Option<&Path>) -> Result<Report, HarnessError> {
    let report = run_scenario(scenario)?;
    let dir: Option<PathBuf> = out.map(Path::to_path_buf).or_else(|| scenario.out.clone());
    match dir {
        Some(d) => report.write(&d)?,
        None => print!("{}", report.to_json_string()),
    }
    if report.passed() {
        Ok(report)
    } else {
        Err(HarnessError::VerdictFailure(report.failures.clone()))
    }
}
