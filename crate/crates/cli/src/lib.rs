//! The `fxxz` command-line tool.
//!
//! Every subcommand writes a JSON [`RunReport`] to stdout or to `--out`.
//! Commands producing tables write CSV next to the report (`<out>.csv`), or
//! print the CSV alone to stdout when `--out` is not given.
//!
//! Exit codes: 0 success, 1 failed check or computation error, 2 usage error.

mod commands;
pub mod config;
mod grid;
mod report;

use std::ffi::OsString;
use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use config::Config;
pub use grid::field_grid;
pub use report::{input_hash, RunReport};

use config::*;
use report::Outcome;

#[derive(Parser, Debug)]
#[command(name = "fxxz", version, about = "Exact and numeric computations for the fractured XXZ chain")]
struct Cli {
    /// TOML file with per-command defaults (sections as printed by --print-config)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the effective configuration as TOML and exit
    #[arg(long)]
    print_config: bool,
    /// Write the JSON report here instead of stdout; CSV goes beside it
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Yang-Baxter, crossing, unitarity and reflection residuals on a (q, ζ) grid
    VerifyWeights(WeightsArgs),
    /// Vacuum norms by exponential sum and by products, and the bulk-fracture overlap
    Norms(OrderArgs),
    /// Fidelity against the field
    #[command(after_help = "CSV columns: delta, h, r, fidelity")]
    Fidelity(FidelityArgs),
    /// One two-point component at the standard specialisation
    Correlate(CorrelateArgs),
    /// Site-1 magnetisation series and its checks
    Magnetize(MagnetizeArgs),
    /// Magnetisation against the field
    #[command(after_help = "CSV columns: h, fracture_mag, boundary_mag, spontaneous_mag, tail_bound \
                            (h = inf is the r = 1 sentinel row)")]
    Fig10(Fig10Args),
    /// Boundary qKZ and exchange residuals at one parameter point
    QkzCheck(QkzArgs),
    /// Finite-chain ground states, fidelity and site-1 magnetisation
    Ed(EdArgs),
    /// Fast invariant suite
    Selftest,
}

#[derive(Args, Debug, Serialize)]
#[command(allow_negative_numbers = true)]
struct WeightsArgs {
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
struct OrderArgs {
    #[arg(long)]
    order: Option<i32>,
}

#[derive(Args, Debug, Serialize)]
#[command(allow_negative_numbers = true)]
struct FidelityArgs {
    /// Anisotropy Δ < -1; repeat for several curves
    #[arg(long)]
    delta: Vec<f64>,
    #[arg(long)]
    h_min: Option<f64>,
    #[arg(long)]
    h_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct CorrelateArgs {
    #[arg(long)]
    order: Option<i32>,
    #[arg(long)]
    sector: Option<u8>,
    #[arg(long, value_enum)]
    component: Option<ComponentArg>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum)]
    path: Option<PathArg>,
}

#[derive(Args, Debug, Serialize)]
struct MagnetizeArgs {
    #[arg(long)]
    order: Option<i32>,
    /// Fail unless the series equals the closed-form conjecture
    #[arg(long)]
    check_conjecture: bool,
    /// Add the r = -1, 0, 1 table and fail on any mismatch
    #[arg(long)]
    special_cases: bool,
    /// Use the boundary chain and its closed form instead
    #[arg(long)]
    boundary: bool,
}

#[derive(Args, Debug, Serialize)]
#[command(allow_negative_numbers = true)]
struct Fig10Args {
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    h_min: Option<f64>,
    #[arg(long)]
    h_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    order: Option<i32>,
}

#[derive(Args, Debug, Serialize)]
#[command(allow_negative_numbers = true)]
struct QkzArgs {
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    zeta1: Option<f64>,
    #[arg(long)]
    zeta2: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
#[command(allow_negative_numbers = true)]
struct EdArgs {
    #[arg(long)]
    sites: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    h: Option<f64>,
    /// Total S^z sector
    #[arg(long)]
    sector: Option<i64>,
    #[arg(long, value_enum)]
    pinning: Option<PinningArg>,
    #[arg(long, value_enum)]
    observable: Option<Observable>,
    /// Write both ground states as `<stem>-bulk.bin` / `<stem>-fractured.bin` with JSON sidecars
    #[arg(long)]
    dump: Option<PathBuf>,
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

/// Overlay the flags of the chosen subcommand on the configuration.
fn merge(cfg: &mut Config, cmd: &Cmd) {
    match cmd {
        Cmd::VerifyWeights(a) => {
            set(&mut cfg.weights.grid, a.grid);
            set(&mut cfg.weights.r, a.r);
            set(&mut cfg.weights.tol, a.tol);
        }
        Cmd::Norms(a) => set(&mut cfg.norms.order, a.order),
        Cmd::Fidelity(a) => {
            if !a.delta.is_empty() {
                cfg.fidelity.deltas = a.delta.clone();
            }
            set(&mut cfg.fidelity.h_min, a.h_min);
            set(&mut cfg.fidelity.h_max, a.h_max);
            set(&mut cfg.fidelity.steps, a.steps);
        }
        Cmd::Correlate(a) => {
            let c = &mut cfg.correlate;
            set(&mut c.order, a.order);
            set(&mut c.sector, a.sector);
            set(&mut c.component, a.component);
            set(&mut c.mode, a.mode);
            set(&mut c.path, a.path);
        }
        Cmd::Magnetize(a) => set(&mut cfg.magnetize.order, a.order),
        Cmd::Fig10(a) => {
            let c = &mut cfg.fig10;
            set(&mut c.delta, a.delta);
            set(&mut c.h_min, a.h_min);
            set(&mut c.h_max, a.h_max);
            set(&mut c.steps, a.steps);
            set(&mut c.order, a.order);
        }
        Cmd::QkzCheck(a) => {
            let c = &mut cfg.qkz;
            set(&mut c.q, a.q);
            set(&mut c.r, a.r);
            set(&mut c.zeta1, a.zeta1);
            set(&mut c.zeta2, a.zeta2);
            set(&mut c.tol, a.tol);
        }
        Cmd::Ed(a) => {
            let c = &mut cfg.ed;
            set(&mut c.sites, a.sites);
            set(&mut c.delta, a.delta);
            set(&mut c.h, a.h);
            set(&mut c.sector, a.sector);
            set(&mut c.pinning, a.pinning);
            set(&mut c.observable, a.observable);
        }
        Cmd::Selftest => {}
    }
}

fn to_value<T: Serialize>(t: &T) -> serde_json::Value {
    serde_json::to_value(t).expect("parameters serialise")
}

fn execute(cfg: &Config, cmd: &Cmd) -> (String, serde_json::Value, Result<Outcome, String>) {
    match cmd {
        Cmd::VerifyWeights(_) => ("verify-weights".into(), to_value(&cfg.weights), commands::verify_weights(&cfg.weights)),
        Cmd::Norms(_) => ("norms".into(), to_value(&cfg.norms), commands::norms(&cfg.norms)),
        Cmd::Fidelity(_) => ("fidelity".into(), to_value(&cfg.fidelity), commands::fidelity(&cfg.fidelity)),
        Cmd::Correlate(_) => ("correlate".into(), to_value(&cfg.correlate), commands::correlate(&cfg.correlate)),
        Cmd::Magnetize(a) => {
            let mut p = to_value(&cfg.magnetize);
            p["check_conjecture"] = a.check_conjecture.into();
            p["special_cases"] = a.special_cases.into();
            p["boundary"] = a.boundary.into();
            let out = commands::magnetize(&cfg.magnetize, a.check_conjecture, a.special_cases, a.boundary);
            ("magnetize".into(), p, out)
        }
        Cmd::Fig10(_) => ("fig10".into(), to_value(&cfg.fig10), commands::fig10(&cfg.fig10)),
        Cmd::QkzCheck(_) => ("qkz-check".into(), to_value(&cfg.qkz), commands::qkz_check(&cfg.qkz)),
        Cmd::Ed(a) => ("ed".into(), to_value(&cfg.ed), commands::ed(&cfg.ed, a.dump.as_deref())),
        Cmd::Selftest => ("selftest".into(), serde_json::json!({}), commands::selftest()),
    }
}

fn emit(s: &str) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(s.as_bytes())?;
    out.flush()
}

fn configure_threads() {
    if let Some(n) = std::env::var("FXXZ_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parse `argv`, run the command and return the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut cfg = match &cli.config {
        Some(p) => match Config::load(p) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        },
        None => Config::default(),
    };
    if let Some(cmd) = &cli.command {
        merge(&mut cfg, cmd);
    }
    if cli.print_config {
        print!("{}", toml::to_string_pretty(&cfg).expect("config serialises"));
        return 0;
    }
    let Some(cmd) = &cli.command else {
        eprintln!("error: a subcommand is required\n\nRun `fxxz --help` for usage.");
        return 2;
    };
    configure_threads();

    let start = Instant::now();
    let (command, parameters, outcome) = execute(&cfg, cmd);
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let report = RunReport {
        input_hash: input_hash(&command, &parameters),
        command,
        parameters,
        passed: outcome.passed,
        results: outcome.results,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    };
    let text = serde_json::to_string_pretty(&report).expect("report serialises");
    let written = match (&cli.out, &outcome.csv) {
        (Some(out), csv) => {
            let mut r = std::fs::write(out, text + "\n");
            if let (Ok(()), Some(csv)) = (&r, csv) {
                r = std::fs::write(out.with_extension("csv"), csv);
            }
            r
        }
        (None, Some(csv)) => emit(csv),
        (None, None) => emit(&(text + "\n")),
    };
    if let Err(e) = written.or_else(|e| if e.kind() == ErrorKind::BrokenPipe { Ok(()) } else { Err(e) }) {
        eprintln!("error: {e}");
        return 1;
    }
    if report.passed {
        0
    } else {
        eprintln!("{}: check failed", report.command);
        1
    }
}
