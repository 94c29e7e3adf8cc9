//! Serialized report shapes. Floats go through [`Real`] so every value is
//! printed with 17 significant digits and non-finite values stay legible.

use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::singular::{Exponents, SingularityAnalysis};
use crate::spectra::{BoundState, SaeParameter};

use super::config::{RunConfig, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Real {
    pub fn text(self) -> String {
        let x = self.0;
        if x.is_nan() {
            "nan".into()
        } else if x.is_infinite() {
            if x > 0.0 { "inf".into() } else { "-inf".into() }
        } else {
            format!("{x:.16e}")
        }
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            RawValue::from_string(self.text())
                .map_err(S::Error::custom)?
                .serialize(s)
        } else {
            s.serialize_str(&self.text())
        }
    }
}

fn opt(x: Option<f64>) -> Option<Real> {
    x.map(Real)
}

#[derive(Serialize)]
pub struct ConfigOut {
    pub command: &'static str,
    pub m: Real,
    pub l: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v0: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Real>,
    pub coulomb: Real,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oscillator_g: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sinh_strength: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sinh_alpha: Option<Real>,
    pub tau: Real,
    pub theta: Real,
    pub count: usize,
    pub fall_c: Real,
    pub fall_n_min: i64,
    pub tolerance: Real,
    pub points_per_decade: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepOut>,
}

#[derive(Serialize)]
pub struct SweepOut {
    pub param: &'static str,
    pub min: Real,
    pub max: Real,
    pub grid_count: usize,
    pub scale: &'static str,
}

impl From<&SweepSpec> for SweepOut {
    fn from(s: &SweepSpec) -> Self {
        SweepOut {
            param: s.param.name(),
            min: Real(s.min),
            max: Real(s.max),
            grid_count: s.count,
            scale: match s.scale {
                super::config::Scale::Linear => "linear",
                super::config::Scale::Geometric => "geometric",
            },
        }
    }
}

impl From<&RunConfig> for ConfigOut {
    fn from(c: &RunConfig) -> Self {
        let p = &c.problem;
        ConfigOut {
            command: c.command.name(),
            m: Real(p.m),
            l: p.l,
            v0: opt(p.v0),
            p: opt(p.p),
            coulomb: Real(p.coulomb),
            oscillator_g: opt(p.oscillator_g),
            sinh_strength: p.sinh.map(|s| Real(s.0)),
            sinh_alpha: p.sinh.map(|s| Real(s.1)),
            tau: Real(c.tau.tau()),
            theta: Real(c.tau.theta()),
            count: c.count,
            fall_c: Real(c.fall_c),
            fall_n_min: c.fall_n_min,
            tolerance: Real(c.tolerance),
            points_per_decade: c.points_per_decade,
            sweep: c.sweep.as_ref().map(SweepOut::from),
        }
    }
}

#[derive(Serialize)]
pub struct AnalysisOut {
    pub regime: &'static str,
    pub gamma: Real,
    pub p_squared: Real,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub imag_p: Option<Real>,
    pub exponents: ExponentsOut,
    pub anti_centrifugal: bool,
    pub additional_branch: bool,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExponentsOut {
    Power { standard: Real, additional: Real },
    Logarithmic,
    Oscillatory { real: Real, imag: Real },
}

impl From<&SingularityAnalysis> for AnalysisOut {
    fn from(a: &SingularityAnalysis) -> Self {
        AnalysisOut {
            regime: a.regime.as_str(),
            gamma: Real(a.gamma),
            p_squared: Real(a.p_squared),
            p: opt(a.p),
            imag_p: opt(a.imag_p),
            exponents: match a.exponents {
                Exponents::Power { standard, additional } => ExponentsOut::Power {
                    standard: Real(standard),
                    additional: Real(additional),
                },
                Exponents::Logarithmic => ExponentsOut::Logarithmic,
                Exponents::Oscillatory { real, imag } => ExponentsOut::Oscillatory {
                    real: Real(real),
                    imag: Real(imag),
                },
            },
            anti_centrifugal: a.anti_centrifugal,
            additional_branch: a.regime == crate::singular::Regime::TwoBranch,
        }
    }
}

#[derive(Serialize)]
pub struct StateOut {
    pub index: usize,
    pub energy: Real,
    pub n_r: i64,
    pub branch: crate::spectra::Branch,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Real>,
    pub source: crate::spectra::Source,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u32>,
}

impl StateOut {
    pub fn new(index: usize, s: &BoundState) -> Self {
        StateOut {
            index,
            energy: Real(s.energy),
            n_r: s.n_r,
            branch: s.branch,
            lambda: opt(s.lambda),
            source: s.source,
            nodes: s.nodes,
        }
    }
}

#[derive(Serialize)]
pub struct SpectrumOut {
    pub tau: Real,
    pub theta: Real,
    pub states: Vec<StateOut>,
}

impl SpectrumOut {
    pub fn new(tau: SaeParameter, states: &[BoundState]) -> Self {
        SpectrumOut {
            tau: Real(tau.tau()),
            theta: Real(tau.theta()),
            states: states.iter().enumerate().map(|(i, s)| StateOut::new(i, s)).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct LevelCheck {
    pub index: usize,
    pub reported: Real,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Real>,
    pub relative_deviation: Real,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u32>,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct VerificationOut {
    pub tolerance: Real,
    pub window: (Real, Real),
    pub levels: Vec<LevelCheck>,
    pub max_relative_deviation: Real,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct Report {
    pub config: ConfigOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepRow>>,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

#[derive(Serialize, Clone)]
pub struct SweepRow {
    pub value: Real,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<crate::spectra::Branch>,
    pub status: String,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "param,value,level,energy,n_r,lambda,branch,status";

    pub fn csv(&self, param: &str) -> String {
        let branch = self.branch.map(|b| {
            serde_json::to_value(b)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default()
        });
        let status = if self.status.contains([',', '"', '\n']) {
            format!("\"{}\"", self.status.replace('"', "\"\""))
        } else {
            self.status.clone()
        };
        format!(
            "{param},{},{},{},{},{},{},{status}",
            self.value.text(),
            self.level.map(|l| l.to_string()).unwrap_or_default(),
            self.energy.map(Real::text).unwrap_or_default(),
            self.n_r.map(|n| n.to_string()).unwrap_or_default(),
            self.lambda.map(Real::text).unwrap_or_default(),
            branch.unwrap_or_default(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_print_seventeen_digits() {
        assert_eq!(serde_json::to_string(&Real(-0.5)).unwrap(), "-5.0000000000000000e-1");
        assert_eq!(serde_json::to_string(&Real(f64::INFINITY)).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Real(f64::NAN)).unwrap(), "\"nan\"");
        let x = 0.1 + 0.2;
        let back: f64 = Real(x).text().parse().unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn csv_quotes_commas() {
        let row = SweepRow {
            value: Real(1.0),
            level: None,
            energy: None,
            n_r: None,
            lambda: None,
            branch: None,
            status: "error: a, b".into(),
        };
        assert!(row.csv("tau").ends_with("\"error: a, b\""));
    }
}
