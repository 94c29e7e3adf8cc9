//! Near-origin analysis of the radial equation
//!
//! ```text
//! u'' + [2m(E - V) - l(l+1)/r^2] u = 0,   V = -v0/r^2 + coulomb/r + tail(r)
//! ```
//!
//! The Frobenius exponents are `1/2 ± P` with `P^2 = (l+1/2)^2 - 2 m v0`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `|P^2|` below this counts as the logarithmic case.
pub const LOG_CASE_TOLERANCE: f64 = 1e-12;
/// Fraction of `(l+1/2)^2` below which the small-`v0` defect expansion is trusted.
pub const EXPANSION_THRESHOLD: f64 = 0.1;

/// Regular extra potential added to the singular core.
#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tail {
    /// `g r^2`.
    Oscillator { g: f64 },
    /// `strength * (1/x^2 - 1/sinh(x)^2)` with `x = alpha r`.
    ///
    /// Together with an inverse-square strength `v0 = strength / alpha^2`
    /// this gives `V = -strength / sinh(alpha r)^2`.
    SinhCorrection { strength: f64, alpha: f64 },
    /// Arbitrary sampler. Not serializable.
    #[serde(skip)]
    Custom(CustomTail),
}

/// Shared closure used by [`Tail::Custom`].
#[derive(Clone)]
pub struct CustomTail(pub Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl Tail {
    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Tail::Custom(CustomTail(Arc::new(f)))
    }

    pub fn value(&self, r: f64) -> f64 {
        match self {
            Tail::Oscillator { g } => g * r * r,
            Tail::SinhCorrection { strength, alpha } => strength * sinh_correction(alpha * r),
            Tail::Custom(f) => (f.0)(r),
        }
    }

    /// `dV/dr`; central differences for custom samplers.
    pub fn derivative(&self, r: f64) -> f64 {
        match self {
            Tail::Oscillator { g } => 2.0 * g * r,
            Tail::SinhCorrection { strength, alpha } => {
                strength * alpha * sinh_correction_derivative(alpha * r)
            }
            Tail::Custom(f) => {
                let h = 1e-5 * r.max(1e-300);
                ((f.0)(r + h) - (f.0)(r - h)) / (2.0 * h)
            }
        }
    }

    /// Natural length of the tail, if it has one.
    pub fn length_scale(&self, m: f64) -> Option<f64> {
        match self {
            Tail::Oscillator { g } if *g > 0.0 => Some((2.0 * m * g).powf(-0.25)),
            Tail::SinhCorrection { alpha, .. } if *alpha > 0.0 => Some(1.0 / alpha),
            _ => None,
        }
    }

    /// True when `V -> +inf` as `r -> inf`, so positive energies are bound too.
    pub fn is_confining(&self) -> bool {
        matches!(self, Tail::Oscillator { g } if *g > 0.0)
    }
}

fn sinh_correction(x: f64) -> f64 {
    if x < 0.1 {
        let x2 = x * x;
        1.0 / 3.0 - x2 / 15.0 + 2.0 * x2 * x2 / 189.0 - x2 * x2 * x2 / 675.0
            + 2.0 * x2 * x2 * x2 * x2 / 10395.0
    } else {
        let s = x.sinh();
        1.0 / (x * x) - 1.0 / (s * s)
    }
}

fn sinh_correction_derivative(x: f64) -> f64 {
    if x < 0.1 {
        let x2 = x * x;
        -2.0 * x / 15.0 + 8.0 * x * x2 / 189.0 - 6.0 * x * x2 * x2 / 675.0
            + 16.0 * x * x2 * x2 * x2 / 10395.0
    } else {
        let s = x.sinh();
        -2.0 / (x * x * x) + 2.0 / (x.tanh() * s * s)
    }
}

impl fmt::Debug for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tail::Oscillator { g } => f.debug_struct("Oscillator").field("g", g).finish(),
            Tail::SinhCorrection { strength, alpha } => f
                .debug_struct("SinhCorrection")
                .field("strength", strength)
                .field("alpha", alpha)
                .finish(),
            Tail::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl PartialEq for Tail {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Tail::Oscillator { g: a }, Tail::Oscillator { g: b }) => a == b,
            (
                Tail::SinhCorrection { strength: s1, alpha: a1 },
                Tail::SinhCorrection { strength: s2, alpha: a2 },
            ) => s1 == s2 && a1 == a2,
            (Tail::Custom(a), Tail::Custom(b)) => Arc::ptr_eq(&a.0, &b.0),
            _ => false,
        }
    }
}

/// The canonical input: `hbar = 1`, potential `-v0/r^2 + coulomb/r + tail`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProblem {
    pub m: f64,
    pub l: u32,
    /// Positive is attractive.
    pub v0: f64,
    /// Negative is attractive.
    pub coulomb: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<Tail>,
}

impl RadialProblem {
    pub fn new(m: f64, l: u32, v0: f64, coulomb: f64) -> Result<Self> {
        let p = RadialProblem {
            m,
            l,
            v0,
            coulomb,
            tail: None,
        };
        p.validate()?;
        Ok(p)
    }

    /// Problem with `2 m v0` chosen so that `P` takes the requested value.
    pub fn with_p(m: f64, l: u32, p: f64, coulomb: f64) -> Result<Self> {
        let lh = f64::from(l) + 0.5;
        Self::new(m, l, (lh * lh - p * p) / (2.0 * m), coulomb)
    }

    pub fn with_tail(mut self, tail: Tail) -> Result<Self> {
        self.tail = Some(tail);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m > 0.0 && self.m.is_finite()) {
            return Err(Error::InvalidProblem(format!("mass must be positive, got {}", self.m)));
        }
        if !self.v0.is_finite() || !self.coulomb.is_finite() {
            return Err(Error::InvalidProblem("v0 and coulomb must be finite".into()));
        }
        if let Some(tail) = &self.tail {
            check_tail_regularity(tail, self.v0)?;
        }
        Ok(())
    }

    pub fn two_m_v0(&self) -> f64 {
        2.0 * self.m * self.v0
    }

    pub fn p_squared(&self) -> f64 {
        let lh = f64::from(self.l) + 0.5;
        lh * lh - self.two_m_v0()
    }

    /// Full potential including the singular core, without centrifugal term.
    pub fn potential(&self, r: f64) -> f64 {
        -self.v0 / (r * r) + self.coulomb / r + self.tail_value(r)
    }

    pub fn tail_value(&self, r: f64) -> f64 {
        self.tail.as_ref().map_or(0.0, |t| t.value(r))
    }

    pub fn tail_derivative(&self, r: f64) -> f64 {
        self.tail.as_ref().map_or(0.0, |t| t.derivative(r))
    }

    /// Pure `-v0/r^2`, the setting of the single `tau`-dependent level.
    pub fn is_pure_inverse_square(&self) -> bool {
        self.coulomb == 0.0 && self.tail.is_none()
    }
}

/// `r^2 V_tail -> 0`: checked at `r = 1e-8` and `1e-6`.
fn check_tail_regularity(tail: &Tail, v0: f64) -> Result<()> {
    let s8 = 1e-16 * tail.value(1e-8);
    let s6 = 1e-12 * tail.value(1e-6);
    if !s8.is_finite() || !s6.is_finite() {
        return Err(Error::InvalidProblem("tail is not finite near the origin".into()));
    }
    if s8.abs() <= 1e-6 * v0.abs().max(1.0) || s8.abs() < 0.5 * s6.abs() {
        Ok(())
    } else {
        Err(Error::InvalidProblem(format!(
            "tail is not regular at the origin: r^2 V = {s8:e} at r = 1e-8, {s6:e} at r = 1e-6"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    /// `P >= 1/2`: only `r^(1/2+P)` is admissible.
    StandardOnly,
    /// `0 < P < 1/2`: both branches vanish at the origin.
    TwoBranch,
    /// `P = 0`: basis `r^(1/2)`, `r^(1/2) ln r`.
    LogCase,
    /// `P^2 < 0`: oscillating solutions, spectrum unbounded below.
    FallToCenter,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::StandardOnly => "STANDARD_ONLY",
            Regime::TwoBranch => "TWO_BRANCH",
            Regime::LogCase => "LOG_CASE",
            Regime::FallToCenter => "FALL_TO_CENTER",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exponents {
    /// `(1/2 + P, 1/2 - P)`.
    Power { standard: f64, additional: f64 },
    /// Both solutions behave as `r^(1/2)`, the second with a logarithm.
    Logarithmic,
    /// `1/2 ± i s`.
    Oscillatory { real: f64, imag: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularityAnalysis {
    /// `2 m v0 - l(l+1)`.
    pub gamma: f64,
    pub p_squared: f64,
    pub p: Option<f64>,
    pub imag_p: Option<f64>,
    pub exponents: Exponents,
    pub regime: Regime,
    pub anti_centrifugal: bool,
}

impl SingularityAnalysis {
    /// `P`, or a regime error when it is not real and positive.
    pub fn real_p(&self) -> Result<f64> {
        match self.p {
            Some(p) if p > 0.0 => Ok(p),
            _ => Err(Error::regime("real P > 0", self.regime)),
        }
    }

    pub fn require(&self, regime: Regime) -> Result<()> {
        if self.regime == regime {
            Ok(())
        } else {
            Err(Error::regime(regime.as_str(), self.regime))
        }
    }
}

pub fn analyze(problem: &RadialProblem) -> SingularityAnalysis {
    let l = f64::from(problem.l);
    let gamma = problem.two_m_v0() - l * (l + 1.0);
    let p2 = problem.p_squared();
    let (regime, p, imag_p, exponents) = if p2.abs() <= LOG_CASE_TOLERANCE {
        (Regime::LogCase, Some(0.0), None, Exponents::Logarithmic)
    } else if p2 < 0.0 {
        let s = (-p2).sqrt();
        (
            Regime::FallToCenter,
            None,
            Some(s),
            Exponents::Oscillatory { real: 0.5, imag: s },
        )
    } else {
        let p = p2.sqrt();
        let regime = if p < 0.5 {
            Regime::TwoBranch
        } else {
            Regime::StandardOnly
        };
        (
            regime,
            Some(p),
            None,
            Exponents::Power {
                standard: 0.5 + p,
                additional: 0.5 - p,
            },
        )
    };
    SingularityAnalysis {
        gamma,
        p_squared: p2,
        p,
        imag_p,
        exponents,
        regime,
        anti_centrifugal: regime == Regime::TwoBranch,
    }
}

/// `l(l+1) < 2 m v0 < l(l+1) + 1/4`, evaluated through the regime so the
/// two never disagree at the rounding level.
pub fn additional_exists(problem: &RadialProblem) -> bool {
    analyze(problem).regime == Regime::TwoBranch
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KineticBranch {
    Standard,
    Additional,
    Oscillatory,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convergence {
    Converges,
    Diverges,
}

/// Convergence of `int (dR/dr)^2 r^2 dr` at the origin.
///
/// With `u ~ r^sigma` the integrand goes as `r^(2 sigma - 2)`, so the
/// integral converges iff `Re sigma > 1/2`.
pub fn kinetic_convergence(
    analysis: &SingularityAnalysis,
    branch: KineticBranch,
) -> Result<Convergence> {
    let sigma = match (analysis.regime, branch) {
        (Regime::StandardOnly | Regime::TwoBranch, KineticBranch::Standard) => {
            0.5 + analysis.real_p()?
        }
        (Regime::TwoBranch, KineticBranch::Additional) => 0.5 - analysis.real_p()?,
        (Regime::LogCase, KineticBranch::Standard | KineticBranch::Additional) => 0.5,
        (Regime::FallToCenter, KineticBranch::Oscillatory) => 0.5,
        (regime, branch) => {
            return Err(Error::regime(
                format!("a regime admitting the {branch:?} branch"),
                regime,
            ))
        }
    };
    Ok(if sigma > 0.5 {
        Convergence::Converges
    } else {
        Convergence::Diverges
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumDefect {
    /// Small-`v0` expansion `-2 m v0 / (2l + 1)`.
    pub delta_l: f64,
    /// `-(l + 1/2 - P)` from the standard levels; `None` in the fall regime.
    pub delta_exact: Option<f64>,
    pub expansion_valid: bool,
    /// `l < |delta| < l + 1` on the exact defect, with real `P > 0`.
    pub additional_possible: bool,
    /// The same interval test applied to the expansion.
    pub additional_possible_linear: bool,
    /// Whether `additional_possible` matches [`additional_exists`].
    pub agrees_with_interval: bool,
}

pub fn quantum_defect(problem: &RadialProblem) -> Result<QuantumDefect> {
    if !(problem.coulomb < 0.0) {
        return Err(Error::precondition("quantum defect needs an attractive Coulomb term"));
    }
    let l = f64::from(problem.l);
    let lh = l + 0.5;
    let two_m_v0 = problem.two_m_v0();
    let delta_l = -two_m_v0 / (2.0 * l + 1.0);
    let analysis = analyze(problem);
    let delta_exact = analysis.p.map(|p| -(lh - p));
    let in_window = |d: f64| l < d.abs() && d.abs() < l + 1.0;
    let additional_possible = match (analysis.p, delta_exact) {
        (Some(p), Some(d)) if p > 0.0 => in_window(d),
        _ => false,
    };
    let additional_possible_linear = two_m_v0 != 0.0 && in_window(delta_l);
    Ok(QuantumDefect {
        delta_l,
        delta_exact,
        expansion_valid: two_m_v0.abs() < EXPANSION_THRESHOLD * lh * lh,
        additional_possible,
        additional_possible_linear,
        agrees_with_interval: additional_possible == additional_exists(problem),
    })
}

/// Zero of `a_st r^(1/2+P) + a_add r^(1/2-P)`.
pub fn e0_node_radius(a_st: f64, a_add: f64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::precondition(format!("node radius needs 0 < P < 1/2, got {p}")));
    }
    if !(a_st * a_add < 0.0) {
        return Err(Error::NoLevel(
            "coefficients of equal sign (or a zero coefficient) give no node".into(),
        ));
    }
    Ok((-a_add / a_st).powf(1.0 / (2.0 * p)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GiriRegion {
    SingleLevelRegion,
    NoBoundStateRegion,
    FallRegion,
}

/// Classification of the radial reduction with strength `g` (`P^2 = 1/4 + g`).
pub fn giri_g_classify(g: f64) -> GiriRegion {
    if g <= -0.25 {
        GiriRegion::FallRegion
    } else if g < 0.0 {
        GiriRegion::SingleLevelRegion
    } else {
        GiriRegion::NoBoundStateRegion
    }
}
