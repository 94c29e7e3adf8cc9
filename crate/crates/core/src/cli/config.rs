//! Resolved run configuration: flags layered over a `key = value` file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::singular::{RadialProblem, Tail};
use crate::spectra::SaeParameter;

use super::CliError;

/// Values read from a config file or from a previous report, keyed by
/// flag name with underscores.
#[derive(Debug, Clone, Default)]
pub struct KeyValues(BTreeMap<String, String>);

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", no + 1)))?;
            map.insert(normalize_key(k), v.trim().trim_matches('"').to_string());
        }
        Ok(KeyValues(map))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn insert(&mut self, key: &str, value: String) {
        self.0.insert(normalize_key(key), value);
    }

    pub fn contains(&self, key: &str) -> bool {
        self.0.contains_key(key)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<T>()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config key {key}: cannot parse {v:?}"))),
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    /// Lower layer under `self`: keys already present are kept.
    pub fn layered_over(mut self, lower: KeyValues) -> KeyValues {
        for (k, v) in lower.0 {
            self.0.entry(k).or_insert(v);
        }
        self
    }
}

fn normalize_key(k: &str) -> String {
    k.trim().trim_start_matches("--").replace('-', "_").to_ascii_lowercase()
}

/// Parses `inf`, `+inf`, `-inf`, `infinity` (any case) or a number.
pub fn parse_real(text: &str) -> Result<f64, CliError> {
    let t = text.trim().to_ascii_lowercase();
    match t.as_str() {
        "inf" | "+inf" | "infinity" | "+infinity" => Ok(f64::INFINITY),
        "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
        "nan" => Ok(f64::NAN),
        _ => t
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("not a number: {text:?}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Classify,
    Spectrum,
    OracleVerify,
    Sweep,
    SpecfunEval,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Spectrum => "spectrum",
            Command::OracleVerify => "oracle-verify",
            Command::Sweep => "sweep",
            Command::SpecfunEval => "specfun-eval",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scale {
    Linear,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepParam {
    Tau,
    Theta,
    V0,
    P,
    Coulomb,
    M,
    G,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Tau => "tau",
            SweepParam::Theta => "theta",
            SweepParam::V0 => "v0",
            SweepParam::P => "p",
            SweepParam::Coulomb => "coulomb",
            SweepParam::M => "m",
            SweepParam::G => "g",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn grid(&self) -> Result<Vec<f64>, CliError> {
        if self.count < 2 {
            return Err(CliError::Usage("sweep grid needs at least 2 points".into()));
        }
        let n = self.count - 1;
        match self.scale {
            Scale::Linear => Ok((0..=n)
                .map(|i| self.min + (self.max - self.min) * i as f64 / n as f64)
                .collect()),
            Scale::Geometric => {
                if !(self.min * self.max > 0.0) {
                    return Err(CliError::Usage(
                        "geometric sweep needs min and max of the same sign, both nonzero".into(),
                    ));
                }
                let (a, b) = (self.min.abs().ln(), self.max.abs().ln());
                let s = self.min.signum();
                Ok((0..=n).map(|i| s * (a + (b - a) * i as f64 / n as f64).exp()).collect())
            }
        }
    }
}

/// Problem parameters as entered.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub m: f64,
    pub l: u32,
    /// Either `v0` or `p` is set; `p` wins when both come from one layer.
    pub v0: Option<f64>,
    pub p: Option<f64>,
    pub coulomb: f64,
    pub oscillator_g: Option<f64>,
    pub sinh: Option<(f64, f64)>,
}

impl ProblemSpec {
    pub fn build(&self) -> crate::Result<RadialProblem> {
        let base = match (self.p, self.v0) {
            (Some(p), _) => RadialProblem::with_p(self.m, self.l, p, self.coulomb)?,
            (None, v0) => RadialProblem::new(self.m, self.l, v0.unwrap_or(0.0), self.coulomb)?,
        };
        let tail = match (self.oscillator_g, self.sinh) {
            (Some(g), None) => Some(Tail::Oscillator { g }),
            (None, Some((strength, alpha))) => Some(Tail::SinhCorrection { strength, alpha }),
            (None, None) => None,
            (Some(_), Some(_)) => {
                return Err(crate::Error::InvalidProblem(
                    "choose one tail: oscillator or sinh correction".into(),
                ))
            }
        };
        match tail {
            Some(t) => base.with_tail(t),
            None => Ok(base),
        }
    }
}

/// Everything a run needs, after merging flags, config file and input report.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub problem: ProblemSpec,
    pub tau: SaeParameter,
    pub count: usize,
    pub fall_c: f64,
    pub fall_n_min: i64,
    pub format: Format,
    pub tolerance: f64,
    pub points_per_decade: usize,
    pub sweep: Option<SweepSpec>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub function: Option<String>,
    pub args: Vec<f64>,
}

impl RunConfig {
    pub const DEFAULT_TOLERANCE: f64 = 1e-6;

    /// Resolve `kv` (already layered, flags on top) into a config.
    pub fn from_key_values(command: Command, kv: &KeyValues) -> Result<RunConfig, CliError> {
        let tau = match (kv.raw("tau"), kv.raw("theta")) {
            (Some(_), Some(_)) => {
                return Err(CliError::Usage("tau and theta are mutually exclusive".into()))
            }
            (Some(t), None) => SaeParameter::from_tau(parse_real(t)?).map_err(CliError::Lib)?,
            (None, Some(t)) => SaeParameter::from_theta(parse_real(t)?).map_err(CliError::Lib)?,
            (None, None) => SaeParameter::ZERO,
        };
        let real = |key: &str| -> Result<Option<f64>, CliError> { kv.raw(key).map(parse_real).transpose() };
        let sinh = match (real("sinh_strength")?, real("sinh_alpha")?) {
            (Some(s), Some(a)) => Some((s, a)),
            (None, None) => None,
            _ => {
                return Err(CliError::Usage(
                    "sinh_strength and sinh_alpha must be given together".into(),
                ))
            }
        };
        let problem = ProblemSpec {
            m: real("m")?.unwrap_or(1.0),
            l: kv.get("l")?.unwrap_or(0),
            v0: real("v0")?,
            p: real("p")?,
            coulomb: real("coulomb")?.unwrap_or(0.0),
            oscillator_g: real("oscillator_g")?,
            sinh,
        };
        let format = match kv.raw("format") {
            None => {
                if command == Command::Sweep {
                    Format::Csv
                } else {
                    Format::Json
                }
            }
            Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some(other) => return Err(CliError::Usage(format!("unknown format {other:?}"))),
        };
        if format == Format::Csv && command != Command::Sweep {
            return Err(CliError::Usage("CSV output is only available for sweep".into()));
        }
        let sweep = if command == Command::Sweep {
            let param = match kv.raw("param") {
                Some(p) => <SweepParam as clap::ValueEnum>::from_str(p, true)
                    .map_err(|_| CliError::Usage(format!("unknown sweep parameter {p:?}")))?,
                None => return Err(CliError::Usage("sweep needs --param".into())),
            };
            let scale = match kv.raw("scale") {
                Some(s) => <Scale as clap::ValueEnum>::from_str(s, true)
                    .map_err(|_| CliError::Usage(format!("unknown sweep scale {s:?}")))?,
                None => Scale::Linear,
            };
            let min = real("min")?.ok_or_else(|| CliError::Usage("sweep needs --min".into()))?;
            let max = real("max")?.ok_or_else(|| CliError::Usage("sweep needs --max".into()))?;
            let count = kv
                .get("grid_count")?
                .ok_or_else(|| CliError::Usage("sweep needs --grid-count".into()))?;
            let spec = SweepSpec {
                param,
                min,
                max,
                count,
                scale,
            };
            spec.grid()?;
            Some(spec)
        } else {
            None
        };
        let tolerance = real("tolerance")?.unwrap_or(Self::DEFAULT_TOLERANCE);
        if !(tolerance > 0.0) {
            return Err(CliError::Usage("tolerance must be positive".into()));
        }
        let args = match kv.raw("args") {
            Some(a) if !a.is_empty() => a.split(',').map(parse_real).collect::<Result<_, _>>()?,
            _ => Vec::new(),
        };
        Ok(RunConfig {
            command,
            problem,
            tau,
            count: kv.get("count")?.unwrap_or(3),
            fall_c: real("fall_c")?.unwrap_or(0.0),
            fall_n_min: kv.get("fall_n_min")?.unwrap_or(0),
            format,
            tolerance,
            points_per_decade: kv
                .get("points_per_decade")?
                .unwrap_or(crate::oracle::POINTS_PER_DECADE),
            sweep,
            input: kv.raw("input").map(PathBuf::from),
            output: kv.raw("output").map(PathBuf::from),
            function: kv.raw("function").map(str::to_string),
            args,
        })
    }
}
