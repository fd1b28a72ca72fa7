use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mourre_lab::acceptance;
use mourre_lab::scenario::parse_tolerance;
use mourre_lab::{run_and_emit, HarnessError, Operation, Scenario};

#[derive(Parser)]
#[command(name = "mourre-lab", version, about = "Numerical laboratory for Mourre estimates and the limiting absorption principle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Model registry reference, e.g. `lattice{N=64}`.
    #[arg(long)]
    model: Option<String>,
    /// Spectral interval `lo:hi`.
    #[arg(long)]
    interval: Option<String>,
    /// Weight exponent.
    #[arg(long)]
    s: Option<f64>,
    /// Imaginary-part grid `min:max:points`.
    #[arg(long)]
    eta: Option<String>,
    /// Output directory for the report and data files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tolerance override `name=value`; repeatable.
    #[arg(long = "tol")]
    tol: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the almost-analytic calculus with the spectral oracle on random matrices.
    HsVerify {
        /// Semicolon-separated symbol registry references.
        #[arg(long, default_value = "chi;chi{R=4};lorentzian;phi_R{s=0.6,R=4}", value_delimiter = ';')]
        symbols: Vec<String>,
        #[arg(long, default_value_t = 10)]
        cases: usize,
        #[arg(long, default_value_t = 32)]
        max_dim: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Best Mourre constants of a model on an interval.
    Mourre {
        /// `none`, `block`, `spectral` or `spectral:lo:hi`.
        #[arg(long, default_value = "none")]
        projection: String,
        #[command(flatten)]
        common: Common,
    },
    /// Weighted resolvent scan as eta decreases.
    Lap {
        #[arg(long, default_value = "none")]
        projection: String,
        /// `bounded` or `divergent`.
        #[arg(long)]
        expect: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Single probes: virial, sequence, propagation, transfer, feshbach, rank-one, remainder, cutoff.
    Probe {
        kind: String,
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long)]
        s_prime: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 256)]
        half_width: usize,
        /// Comma-separated times for the propagation probe.
        #[arg(long, value_delimiter = ',', default_value = "1,10,100,1000")]
        times: Vec<f64>,
        /// `eigen`, `uniform` or `basis:k`.
        #[arg(long, default_value = "eigen")]
        vector: String,
        #[command(flatten)]
        common: Common,
    },
    /// Strict vs projected estimate on the artificial example.
    Example45 {
        #[command(flatten)]
        common: Common,
    },
    /// Run every acceptance criterion.
    Suite {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn scenario(name: &str, common: &Common, operations: Vec<Operation>) -> Result<Scenario, HarnessError> {
    let mut tolerances = BTreeMap::new();
    for t in &common.tol {
        let (k, v) = parse_tolerance(t)?;
        tolerances.insert(k, v);
    }
    Ok(Scenario {
        name: name.into(),
        model: common.model.clone(),
        seed: common.seed.unwrap_or(7),
        out: None,
        tolerances,
        operations,
    })
}

fn need_s(common: &Common) -> Result<f64, HarnessError> {
    common.s.ok_or_else(|| HarnessError::Parse("--s is required".into()))
}

fn need(v: Option<f64>, flag: &str) -> Result<f64, HarnessError> {
    v.ok_or_else(|| HarnessError::Parse(format!("--{flag} is required")))
}

fn dispatch(cli: Cli) -> Result<(), HarnessError> {
    let (sc, out) = match cli.command {
        Command::Run { config, common } => {
            let mut sc = Scenario::load(&config)?;
            for t in &common.tol {
                let (k, v) = parse_tolerance(t)?;
                sc.tolerances.insert(k, v);
            }
            if let Some(seed) = common.seed {
                sc.seed = seed;
            }
            if let Some(m) = common.model {
                sc.model = Some(m);
            }
            (sc, common.out)
        }
        Command::HsVerify { symbols, cases, max_dim, common } => {
            (scenario("hs-verify", &common, vec![Operation::HsVerify { symbols, cases, max_dim }])?, common.out)
        }
        Command::Mourre { projection, common } => {
            let op = Operation::Mourre { interval: common.interval.clone(), projection };
            (scenario("mourre", &common, vec![op])?, common.out)
        }
        Command::Lap { projection, expect, common } => {
            let op = Operation::Lap {
                interval: common.interval.clone(),
                s: need_s(&common)?,
                eta: common.eta.clone(),
                projection,
                expect,
            };
            (scenario("lap", &common, vec![op])?, common.out)
        }
        Command::Probe { kind, rho, s_prime, k, alpha, half_width, times, vector, common } => {
            let interval = common.interval.clone();
            let op = match kind.as_str() {
                "virial" => Operation::Virial { interval },
                "sequence" => Operation::Sequence { interval, s: need_s(&common)?, eta: common.eta.clone() },
                "propagation" => Operation::Propagation { interval, s: need_s(&common)?, times, vector },
                "transfer" => Operation::Transfer { interval },
                "feshbach" => Operation::Feshbach { interval, projection: "spectral".into() },
                "rank-one" => Operation::RankOne,
                "remainder" => Operation::RemainderScaling {
                    rho: need(rho, "rho")?,
                    s: need_s(&common)?,
                    s_prime: need(s_prime, "s-prime")?,
                    k: k.ok_or_else(|| HarnessError::Parse("--k is required".into()))?,
                    half_width,
                    r_grid: None,
                },
                "cutoff" => Operation::CutoffScaling { s: need_s(&common)?, alpha: need(alpha, "alpha")?, half_width, r_grid: None },
                other => return Err(HarnessError::Parse(format!("unknown probe {other:?}"))),
            };
            (scenario(&format!("probe-{kind}"), &common, vec![op])?, common.out)
        }
        Command::Example45 { common } => {
            let mut common = common;
            common.model.get_or_insert_with(|| acceptance::ARTIFICIAL.to_string());
            let op = Operation::Example45 { s: common.s.unwrap_or(0.7) };
            (scenario("example45", &common, vec![op])?, common.out)
        }
        Command::Suite { out } => return suite(out),
    };
    run_and_emit(&sc, out.as_deref()).map(|_| ())
}

fn suite(out: Option<PathBuf>) -> Result<(), HarnessError> {
    let mut results = Vec::new();
    for id in 1..=acceptance::TITLES.len() {
        let c = acceptance::run(id);
        println!("{}", c.line());
        results.push(c);
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(&dir)?;
        let json = serde_json::json!({ "schema": mourre_lab::SCHEMA, "criteria": results });
        std::fs::write(dir.join("suite.json"), serde_json::to_string_pretty(&json)? + "\n")?;
    }
    let failed: Vec<String> = results.iter().filter(|c| !c.passed).map(|c| format!("criterion {}: {}", c.id, c.title)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(HarnessError::VerdictFailure(failed))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mourre-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
