//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 regime or precondition failure,
//! 3 verification failure.

pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::oracle::{find_levels_with, MeshSpec};
use crate::singular::{analyze, Regime};
use crate::spectra::{solve, SaeParameter, SolveOptions};
use crate::specfun;

pub use config::{Command, Format, KeyValues, RunConfig};
use report::{AnalysisOut, ConfigOut, LevelCheck, Real, Report, SpectrumOut, SweepRow, VerificationOut};

/// Environment variable naming the directory for relative `--output` paths.
pub const OUT_DIR_ENV: &str = "SAESPEC_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Lib(_) => EXIT_PRECONDITION,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "saespec", version, about = "Spectra of radial problems with inverse-square cores")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Near-origin analysis: regime, P, exponents.
    Classify(Common),
    /// Bound states with branch labels and solver provenance.
    Spectrum(Common),
    /// Recompute each level by shooting and report relative deviations.
    OracleVerify(Verify),
    /// Spectrum along a parameter grid.
    Sweep(Sweep),
    /// Evaluate one special function.
    #[command(hide = true)]
    SpecfunEval(SpecfunArgs),
}

#[derive(Args, Debug, Default)]
struct Common {
    /// `key = value` file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<f64>,
    #[arg(long)]
    l: Option<u32>,
    /// Inverse-square strength in `-v0/r^2`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "p")]
    v0: Option<f64>,
    /// Set `v0` through `P` instead.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    /// Coefficient of `1/r` (negative is attractive).
    #[arg(long, allow_hyphen_values = true)]
    coulomb: Option<f64>,
    /// Oscillator tail `g r^2`.
    #[arg(long, allow_hyphen_values = true)]
    oscillator_g: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "sinh_alpha")]
    sinh_strength: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "sinh_strength")]
    sinh_alpha: Option<f64>,
    /// Extension parameter; `inf` selects the additional branch.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "theta")]
    tau: Option<String>,
    /// Angle form of tau, `tau = tan(theta)`.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    fall_c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    fall_n_min: Option<i64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Relative tolerance for oracle verification.
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    points_per_decade: Option<usize>,
    /// Report file; relative paths go under $SAESPEC_OUT_DIR when set.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Verify {
    #[command(flatten)]
    common: Common,
    /// A previous JSON report to verify.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Sweep {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    param: Option<config::SweepParam>,
    #[arg(long, allow_hyphen_values = true)]
    min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    max: Option<f64>,
    #[arg(long)]
    grid_count: Option<usize>,
    #[arg(long, value_enum)]
    scale: Option<config::Scale>,
}

#[derive(Args, Debug)]
struct SpecfunArgs {
    /// gamma, lgamma, rgamma, digamma, gamma_ratio, kummer_m, tricomi_u,
    /// whittaker_w, bessel_i, bessel_k
    #[arg(long)]
    function: String,
    /// Comma-separated arguments.
    #[arg(long, allow_hyphen_values = true)]
    args: String,
}

fn put<T: ToString>(kv: &mut KeyValues, key: &str, v: &Option<T>) {
    if let Some(v) = v {
        kv.insert(key, v.to_string());
    }
}

impl Common {
    fn key_values(&self) -> KeyValues {
        let mut kv = KeyValues::default();
        put(&mut kv, "m", &self.m);
        put(&mut kv, "l", &self.l);
        put(&mut kv, "v0", &self.v0);
        put(&mut kv, "p", &self.p);
        put(&mut kv, "coulomb", &self.coulomb);
        put(&mut kv, "oscillator_g", &self.oscillator_g);
        put(&mut kv, "sinh_strength", &self.sinh_strength);
        put(&mut kv, "sinh_alpha", &self.sinh_alpha);
        put(&mut kv, "tau", &self.tau);
        put(&mut kv, "theta", &self.theta);
        put(&mut kv, "count", &self.count);
        put(&mut kv, "fall_c", &self.fall_c);
        put(&mut kv, "fall_n_min", &self.fall_n_min);
        let format = self.format.map(|f| match f {
            Format::Json => "json",
            Format::Csv => "csv",
        });
        put(&mut kv, "format", &format);
        put(&mut kv, "tolerance", &self.tolerance);
        put(&mut kv, "points_per_decade", &self.points_per_decade);
        if let Some(o) = &self.output {
            kv.insert("output", o.display().to_string());
        }
        kv
    }

    /// Flags over the config file over `below`.
    fn layered(&self, below: KeyValues) -> Result<KeyValues, CliError> {
        let mut flags = self.key_values();
        // an explicit tau or theta flag overrides either form from files
        let explicit = self.tau.is_some() || self.theta.is_some();
        let mut file = match &self.config {
            Some(path) => KeyValues::read(path)?,
            None => KeyValues::default(),
        };
        let mut below = below;
        if explicit {
            file = strip_tau(file);
            below = strip_tau(below);
        } else if file.contains("tau") || file.contains("theta") {
            below = strip_tau(below);
        }
        flags = flags.layered_over(file).layered_over(below);
        Ok(flags)
    }
}

fn strip_tau(kv: KeyValues) -> KeyValues {
    let mut out = KeyValues::default();
    for key in [
        "m", "l", "v0", "p", "coulomb", "oscillator_g", "sinh_strength", "sinh_alpha", "count",
        "fall_c", "fall_n_min", "format", "tolerance", "points_per_decade", "output", "param", "min",
        "max", "grid_count", "scale", "input", "function", "args",
    ] {
        if let Some(v) = kv.raw(key) {
            out.insert(key, v.to_string());
        }
    }
    out
}

/// Energies and configuration recovered from a previous JSON report.
struct InputReport {
    config: KeyValues,
    energies: Option<Vec<f64>>,
}

fn json_real(v: &serde_json::Value) -> Option<f64> {
    match v {
        serde_json::Value::Number(n) => n.as_f64(),
        serde_json::Value::String(s) => config::parse_real(s).ok(),
        _ => None,
    }
}

fn read_input(path: &Path) -> Result<InputReport, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read report {}: {e}", path.display())))?;
    let json: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("report {} is not JSON: {e}", path.display())))?;
    let mut config = KeyValues::default();
    if let Some(obj) = json.get("config").and_then(|c| c.as_object()) {
        for (k, v) in obj {
            match (k.as_str(), v) {
                ("command" | "sweep" | "tolerance", _) => {}
                (_, serde_json::Value::Number(n)) => config.insert(k, n.to_string()),
                (_, serde_json::Value::String(s)) => config.insert(k, s.clone()),
                _ => {}
            }
        }
        // the pair is redundant; keep the exact one
        if config.contains("tau") {
            let rest = strip_tau(config.clone());
            let tau = config.raw("tau").unwrap_or("0").to_string();
            config = rest;
            config.insert("tau", tau);
        }
    } else {
        return Err(CliError::Usage(format!("report {} has no config section", path.display())));
    }
    let energies = json
        .get("spectrum")
        .and_then(|s| s.get("states"))
        .and_then(|s| s.as_array())
        .map(|states| {
            states
                .iter()
                .map(|s| s.get("energy").and_then(json_real))
                .collect::<Option<Vec<f64>>>()
        })
        .map(|e| e.ok_or_else(|| CliError::Usage("report has a state without an energy".into())))
        .transpose()?;
    Ok(InputReport { config, energies })
}

/// What a run produced.
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
    pub diagnostics: Vec<String>,
}

/// Parse arguments, run, emit. Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion
                | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(out) => {
            for d in &out.diagnostics {
                eprintln!("saespec: {d}");
            }
            out.exit_code
        }
        Err(e) => {
            eprintln!("saespec: error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<Outcome, CliError> {
    let (config, input) = resolve(cli)?;
    let mut outcome = run_with_input(&config, input)?;
    match &config.output {
        Some(path) => {
            let path = output_path(path);
            std::fs::write(&path, &outcome.text)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            outcome.diagnostics.push(format!("report written to {}", path.display()));
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.text.as_bytes());
        }
    }
    Ok(outcome)
}

fn output_path(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn resolve(cli: Cli) -> Result<(RunConfig, Option<InputReport>), CliError> {
    match cli.command {
        Cmd::Classify(c) => Ok((RunConfig::from_key_values(Command::Classify, &c.layered(KeyValues::default())?)?, None)),
        Cmd::Spectrum(c) => Ok((RunConfig::from_key_values(Command::Spectrum, &c.layered(KeyValues::default())?)?, None)),
        Cmd::OracleVerify(v) => {
            let input = v.input.as_deref().map(read_input).transpose()?;
            let below = input.as_ref().map(|i| i.config.clone()).unwrap_or_default();
            let mut kv = v.common.layered(below)?;
            if let Some(path) = &v.input {
                kv.insert("input", path.display().to_string());
            }
            Ok((RunConfig::from_key_values(Command::OracleVerify, &kv)?, input))
        }
        Cmd::Sweep(s) => {
            let mut kv = KeyValues::default();
            let param = s.param.map(|p| p.name());
            put(&mut kv, "param", &param);
            put(&mut kv, "min", &s.min);
            put(&mut kv, "max", &s.max);
            put(&mut kv, "grid_count", &s.grid_count);
            let scale = s.scale.map(|s| match s {
                config::Scale::Linear => "linear",
                config::Scale::Geometric => "geometric",
            });
            put(&mut kv, "scale", &scale);
            let kv = kv.layered_over(s.common.layered(KeyValues::default())?);
            Ok((RunConfig::from_key_values(Command::Sweep, &kv)?, None))
        }
        Cmd::SpecfunEval(a) => {
            let mut kv = KeyValues::default();
            kv.insert("function", a.function);
            kv.insert("args", a.args);
            Ok((RunConfig::from_key_values(Command::SpecfunEval, &kv)?, None))
        }
    }
}

/// Run a resolved configuration without touching stdout.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let input = config.input.as_deref().map(read_input).transpose()?;
    run_with_input(config, input)
}

fn run_with_input(config: &RunConfig, input: Option<InputReport>) -> Result<Outcome, CliError> {
    match config.command {
        Command::Classify => classify(config),
        Command::Spectrum => spectrum(config),
        Command::OracleVerify => verify(config, input.and_then(|i| i.energies)),
        Command::Sweep => sweep(config),
        Command::SpecfunEval => specfun_eval(config),
    }
}

fn report(config: &RunConfig) -> Report {
    Report {
        config: ConfigOut::from(config),
        analysis: None,
        spectrum: None,
        verification: None,
        sweep: None,
        diagnostics: Vec::new(),
    }
}

fn finish(report: Report, exit_code: i32) -> Outcome {
    Outcome {
        text: report.to_json(),
        exit_code,
        diagnostics: report.diagnostics.clone(),
    }
}

fn classify(config: &RunConfig) -> Result<Outcome, CliError> {
    let problem = config.problem.build()?;
    let analysis = analyze(&problem);
    let mut rep = report(config);
    if analysis.regime == Regime::TwoBranch {
        rep.diagnostics
            .push("both branches vanish at the origin; tau selects the boundary condition".into());
    }
    rep.analysis = Some(AnalysisOut::from(&analysis));
    Ok(finish(rep, EXIT_OK))
}

fn solve_options(config: &RunConfig) -> SolveOptions {
    SolveOptions {
        count: config.count,
        fall_c: config.fall_c,
        fall_n_min: config.fall_n_min,
    }
}

fn spectrum(config: &RunConfig) -> Result<Outcome, CliError> {
    let problem = config.problem.build()?;
    let result = solve(&problem, config.tau, solve_options(config))?;
    let mut rep = report(config);
    rep.analysis = Some(AnalysisOut::from(&analyze(&problem)));
    rep.spectrum = Some(SpectrumOut::new(config.tau, &result.states));
    rep.diagnostics = result.diagnostics;
    Ok(finish(rep, EXIT_OK))
}

/// Window around a set of reported levels, wide enough for the oracle to
/// bracket each one.
fn verification_window(energies: &[f64]) -> (f64, f64) {
    let lo_e = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let hi_e = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = (hi_e - lo_e).max(lo_e.abs().max(hi_e.abs()));
    let lo = if lo_e < 0.0 { 1.5 * lo_e } else { lo_e - 0.5 * span };
    let hi = if hi_e < 0.0 { 0.5 * hi_e } else { hi_e + 0.5 * span };
    (lo, hi)
}

fn verify(config: &RunConfig, reported: Option<Vec<f64>>) -> Result<Outcome, CliError> {
    let problem = config.problem.build()?;
    let analysis = analyze(&problem);
    if analysis.regime == Regime::FallToCenter {
        return Err(crate::Error::Regime {
            expected: "TWO_BRANCH or STANDARD_ONLY (no shooting oracle for the fall tower)".into(),
            found: analysis.regime,
        }
        .into());
    }
    let mut rep = report(config);
    let energies = match reported {
        Some(e) => e,
        None => {
            let r = solve(&problem, config.tau, solve_options(config))?;
            rep.diagnostics.extend(r.diagnostics.iter().cloned());
            rep.spectrum = Some(SpectrumOut::new(config.tau, &r.states));
            r.energies()
        }
    };
    rep.analysis = Some(AnalysisOut::from(&analysis));
    if energies.is_empty() {
        rep.diagnostics.push("no levels to verify".into());
        rep.verification = Some(VerificationOut {
            tolerance: Real(config.tolerance),
            window: (Real(f64::NAN), Real(f64::NAN)),
            levels: Vec::new(),
            max_relative_deviation: Real(0.0),
            pass: true,
        });
        return Ok(finish(rep, EXIT_OK));
    }
    let window = verification_window(&energies);
    let mesh = MeshSpec {
        points_per_decade: config.points_per_decade,
        r_min: None,
    };
    let oracle = find_levels_with(&problem, config.tau, window, energies.len() + 4, mesh)?;
    rep.diagnostics
        .extend(oracle.diagnostics.iter().filter(|d| !d.starts_with("window too narrow")).cloned());
    let mut levels = Vec::with_capacity(energies.len());
    let mut worst: f64 = 0.0;
    for (index, &e) in energies.iter().enumerate() {
        let nearest = oracle
            .states
            .iter()
            .min_by(|a, b| (a.energy - e).abs().total_cmp(&(b.energy - e).abs()));
        let (oracle_e, nodes, dev) = match nearest {
            Some(s) => (Some(s.energy), s.nodes, (s.energy - e).abs() / e.abs()),
            None => (None, None, f64::INFINITY),
        };
        worst = worst.max(dev);
        levels.push(LevelCheck {
            index,
            reported: Real(e),
            oracle: oracle_e.map(Real),
            relative_deviation: Real(dev),
            nodes,
            pass: dev <= config.tolerance,
        });
    }
    let pass = levels.iter().all(|l| l.pass);
    rep.verification = Some(VerificationOut {
        tolerance: Real(config.tolerance),
        window: (Real(window.0), Real(window.1)),
        levels,
        max_relative_deviation: Real(worst),
        pass,
    });
    if !pass {
        rep.diagnostics
            .push(format!("verification failed: max relative deviation {worst:e}"));
    }
    Ok(finish(rep, if pass { EXIT_OK } else { EXIT_VERIFICATION }))
}

fn sweep_point(config: &RunConfig, value: f64) -> Vec<SweepRow> {
    use config::SweepParam as S;
    let spec = config.sweep.as_ref().expect("sweep spec");
    let mut problem = config.problem.clone();
    let mut tau = Ok(config.tau);
    match spec.param {
        S::Tau => tau = SaeParameter::from_tau(value),
        S::Theta => tau = SaeParameter::from_theta(value),
        S::V0 => {
            problem.v0 = Some(value);
            problem.p = None;
        }
        S::P => problem.p = Some(value),
        S::Coulomb => problem.coulomb = value,
        S::M => problem.m = value,
        S::G => problem.oscillator_g = Some(value),
    }
    let result = tau.and_then(|t| {
        let p = problem.build()?;
        solve(&p, t, solve_options(config))
    });
    let blank = |status: String| SweepRow {
        value: Real(value),
        level: None,
        energy: None,
        n_r: None,
        lambda: None,
        branch: None,
        status,
    };
    match result {
        Err(e) => vec![blank(format!("error: {e}"))],
        Ok(r) if r.states.is_empty() => vec![blank("no_level".into())],
        Ok(r) => r
            .states
            .iter()
            .enumerate()
            .map(|(k, s)| SweepRow {
                value: Real(value),
                level: Some(k),
                energy: Some(Real(s.energy)),
                n_r: Some(s.n_r),
                lambda: s.lambda.map(Real),
                branch: Some(s.branch),
                status: "ok".into(),
            })
            .collect(),
    }
}

fn sweep(config: &RunConfig) -> Result<Outcome, CliError> {
    let spec = config.sweep.as_ref().ok_or_else(|| CliError::Usage("missing sweep spec".into()))?;
    let grid = spec.grid()?;
    // evaluated in parallel, emitted in grid order
    let rows: Vec<SweepRow> = grid
        .par_iter()
        .map(|&v| sweep_point(config, v))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let param = spec.param.name();
    match config.format {
        Format::Csv => {
            let mut text = String::from(SweepRow::CSV_HEADER);
            text.push('\n');
            for row in &rows {
                text.push_str(&row.csv(param));
                text.push('\n');
            }
            Ok(Outcome {
                text,
                exit_code: EXIT_OK,
                diagnostics: Vec::new(),
            })
        }
        Format::Json => {
            let mut rep = report(config);
            rep.sweep = Some(rows);
            Ok(finish(rep, EXIT_OK))
        }
    }
}

fn specfun_eval(config: &RunConfig) -> Result<Outcome, CliError> {
    let name = config.function.as_deref().unwrap_or("");
    let a = &config.args;
    let need = |n: usize| -> Result<(), CliError> {
        if a.len() == n {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{name} takes {n} argument(s), got {}", a.len())))
        }
    };
    let value = match name {
        "gamma" => {
            need(1)?;
            specfun::gamma(a[0])?
        }
        "lgamma" => {
            need(1)?;
            specfun::log_gamma(a[0])?.log_magnitude
        }
        "rgamma" => {
            need(1)?;
            specfun::rgamma(a[0])
        }
        "digamma" => {
            need(1)?;
            specfun::digamma(a[0])?
        }
        "gamma_ratio" => {
            need(2)?;
            specfun::gamma_ratio(a[0], a[1])?
        }
        "kummer_m" => {
            need(3)?;
            specfun::kummer_m(a[0], a[1], a[2])?
        }
        "tricomi_u" => {
            need(3)?;
            specfun::tricomi_psi(a[0], a[1], a[2])?
        }
        "whittaker_w" => {
            need(3)?;
            specfun::whittaker_w(a[0], a[1], a[2])?
        }
        "bessel_i" => {
            need(2)?;
            specfun::bessel_i(a[0], a[1])?
        }
        "bessel_k" => {
            need(2)?;
            specfun::bessel_k(a[0], a[1])?
        }
        other => return Err(CliError::Usage(format!("unknown function {other:?}"))),
    };
    Ok(Outcome {
        text: format!("{}\n", Real(value).text()),
        exit_code: EXIT_OK,
        diagnostics: Vec::new(),
    })
}
