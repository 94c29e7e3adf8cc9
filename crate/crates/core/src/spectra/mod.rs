//! Eigenvalue solvers: closed forms, transcendental equations, and the
//! dispatcher [`solve`] that picks one for a given problem.

mod closed;
mod coulomb;
mod relativistic;

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::singular::{analyze, RadialProblem, Regime};

pub use closed::{
    closed_levels, closed_levels_filtered, fall_spectrum, ground_state_window, inverse_square_level,
    scarf_b, tau_from_energy,
};
pub use coulomb::{
    fp_lambda, lambda_from_energy, energy_from_lambda, qp_lambda, repulsive_threshold,
    solve_attractive_coulomb, solve_repulsive_coulomb, tau_from_lambda, RepulsiveThreshold,
};
pub use relativistic::{
    kg_hydrogen_fixed_point, kg_hydrogen_map, kg_two_particle, HydrogenFixedPoint, KgHydrogenMap,
    KgTwoParticle,
};

/// Self-adjoint extension parameter `tau = a_add / a_st`, stored as the
/// angle `theta` in `(-pi/2, pi/2]` with `tau = tan(theta)`.
///
/// `theta = pi/2` is `tau = ±inf` (pure additional branch). The exact `tau`
/// is kept alongside so a finite input round-trips bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaeParameter {
    theta: f64,
    tau: f64,
}

impl SaeParameter {
    pub const ZERO: SaeParameter = SaeParameter {
        theta: 0.0,
        tau: 0.0,
    };
    pub const INFINITE: SaeParameter = SaeParameter {
        theta: FRAC_PI_2,
        tau: f64::INFINITY,
    };

    /// Any infinity maps to [`SaeParameter::INFINITE`].
    pub fn from_tau(tau: f64) -> Result<Self> {
        if tau.is_nan() {
            return Err(Error::precondition("tau is NaN"));
        }
        if tau.is_infinite() {
            return Ok(Self::INFINITE);
        }
        Ok(SaeParameter {
            theta: tau.atan(),
            tau,
        })
    }

    /// `theta` is reduced modulo `pi` into `(-pi/2, pi/2]`.
    pub fn from_theta(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::precondition(format!("theta must be finite, got {theta}")));
        }
        let mut t = theta - std::f64::consts::PI * (theta / std::f64::consts::PI).round();
        if t <= -FRAC_PI_2 {
            t += std::f64::consts::PI;
        }
        if (t - FRAC_PI_2).abs() < 1e-15 {
            return Ok(Self::INFINITE);
        }
        let tau = if t == 0.0 { 0.0 } else { t.tan() };
        Ok(SaeParameter { theta: t, tau })
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    /// `+inf` for the pure additional branch.
    pub fn tau(self) -> f64 {
        self.tau
    }

    pub fn is_zero(self) -> bool {
        self.tau == 0.0
    }

    pub fn is_infinite(self) -> bool {
        self.tau.is_infinite()
    }

    pub fn is_special(self) -> bool {
        self.is_zero() || self.is_infinite()
    }

    /// Unit-norm boundary data `(a_st, a_add) = (cos theta, sin theta)`.
    pub fn coefficients(self) -> (f64, f64) {
        if self.is_infinite() {
            (0.0, 1.0)
        } else if self.is_zero() {
            (1.0, 0.0)
        } else {
            let c = 1.0 / (1.0 + self.tau * self.tau).sqrt();
            (c, self.tau * c)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Standard,
    Additional,
    Mixed,
    FallTower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    ClosedForm,
    Transcendental,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub energy: f64,
    /// Index within the branch. Negative only for the fall tower.
    pub n_r: i64,
    pub branch: Branch,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    pub source: Source,
    /// Radial nodes, when an integration has counted them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub problem: RadialProblem,
    pub tau: SaeParameter,
    pub states: Vec<BoundState>,
    pub diagnostics: Vec<String>,
}

impl SpectrumResult {
    pub fn new(problem: RadialProblem, tau: SaeParameter) -> Self {
        SpectrumResult {
            problem,
            tau,
            states: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    /// Sorts by energy and drops duplicates within 1e-10 relative.
    pub fn finish(mut self) -> Self {
        self.states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        let mut kept: Vec<BoundState> = Vec::with_capacity(self.states.len());
        for s in self.states {
            match kept.last() {
                Some(prev) if (s.energy - prev.energy).abs() <= 1e-10 * prev.energy.abs() => {
                    self.diagnostics
                        .push(format!("dropped duplicate level at E = {:e}", s.energy));
                }
                _ => kept.push(s),
            }
        }
        self.states = kept;
        self
    }

    pub fn energies(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.energy).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Coulomb magnitude of an attractive problem.
pub(crate) fn attractive_alpha(problem: &RadialProblem) -> Result<f64> {
    if problem.coulomb < 0.0 {
        Ok(-problem.coulomb)
    } else {
        Err(Error::precondition(format!(
            "needs an attractive Coulomb term (coulomb < 0), got {}",
            problem.coulomb
        )))
    }
}

/// Options for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub count: usize,
    /// Phase constant for the fall tower.
    pub fall_c: f64,
    /// Lowest tower index when the problem falls to the centre.
    pub fall_n_min: i64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            count: 3,
            fall_c: 0.0,
            fall_n_min: 0,
        }
    }
}

/// Compute up to `opts.count` levels with whichever solver fits the problem.
pub fn solve(problem: &RadialProblem, tau: SaeParameter, opts: SolveOptions) -> Result<SpectrumResult> {
    problem.validate()?;
    let analysis = analyze(problem);
    let count = opts.count;
    match analysis.regime {
        Regime::FallToCenter => {
            if problem.coulomb != 0.0 || problem.tail.is_some() {
                return Err(Error::regime(
                    "a pure inverse-square potential for the fall tower",
                    analysis.regime,
                ));
            }
            let hi = opts.fall_n_min + count.max(1) as i64 - 1;
            fall_spectrum(problem, opts.fall_c, opts.fall_n_min..=hi)
        }
        Regime::LogCase => Err(Error::regime("TWO_BRANCH or STANDARD_ONLY", Regime::LogCase)),
        Regime::StandardOnly if !tau.is_zero() => Err(Error::BranchUnavailable(format!(
            "tau = {} needs the additional branch, which is not admissible for P = {}",
            tau.tau(),
            analysis.p.unwrap_or(f64::NAN)
        ))),
        _ if problem.tail.is_some() => {
            let window = crate::oracle::auto_window(problem, tau, count)?;
            let mut r = crate::oracle::find_levels(problem, tau, window, count)?;
            r.diagnostics
                .push(format!("oracle search window ({:e}, {:e})", window.0, window.1));
            Ok(r)
        }
        Regime::StandardOnly | Regime::TwoBranch if problem.coulomb < 0.0 => {
            if tau.is_zero() {
                closed_levels(problem, Branch::Standard, count.saturating_sub(1))
            } else if tau.is_infinite() {
                closed_levels(problem, Branch::Additional, count.saturating_sub(1))
            } else {
                solve_attractive_coulomb(problem, tau, count)
            }
        }
        Regime::StandardOnly => {
            let mut r = SpectrumResult::new(problem.clone(), tau);
            r.diagnostics
                .push("no bound states: repulsive or absent potential with P >= 1/2".into());
            Ok(r)
        }
        Regime::TwoBranch if problem.coulomb > 0.0 => solve_repulsive_coulomb(problem, tau, count),
        Regime::TwoBranch => {
            let mut r = SpectrumResult::new(problem.clone(), tau);
            match inverse_square_level(problem, tau) {
                Ok(s) => r.states.push(s),
                Err(Error::NoLevel(msg)) => r.diagnostics.push(msg),
                Err(e) => return Err(e),
            }
            Ok(r.finish())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sae_special_points_roundtrip() {
        let z = SaeParameter::from_tau(0.0).unwrap();
        assert_eq!(z.theta(), 0.0);
        assert_eq!(SaeParameter::from_theta(0.0).unwrap().tau(), 0.0);
        let inf = SaeParameter::from_tau(f64::NEG_INFINITY).unwrap();
        assert_eq!(inf, SaeParameter::INFINITE);
        assert!(SaeParameter::from_theta(FRAC_PI_2).unwrap().is_infinite());
        assert!(SaeParameter::from_theta(-FRAC_PI_2).unwrap().is_infinite());
        let t = SaeParameter::from_tau(-1.0).unwrap();
        assert_eq!(t.tau(), -1.0);
        let back = SaeParameter::from_theta(t.theta()).unwrap();
        assert!((back.tau() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn coefficients_are_unit_norm() {
        for &tau in &[-3.0, -1e-3, 0.5, 7.0] {
            let (a, b) = SaeParameter::from_tau(tau).unwrap().coefficients();
            assert!((a * a + b * b - 1.0).abs() < 1e-15);
            assert!((b / a - tau).abs() < 1e-14 * tau.abs());
        }
    }

    #[test]
    fn finish_sorts_and_dedups() {
        let p = RadialProblem::new(1.0, 0, 0.0, -1.0).unwrap();
        let mut r = SpectrumResult::new(p, SaeParameter::ZERO);
        for e in [-0.125, -0.5, -0.5 * (1.0 + 1e-12)] {
            r.states.push(BoundState {
                energy: e,
                n_r: 0,
                branch: Branch::Standard,
                lambda: None,
                source: Source::ClosedForm,
                nodes: None,
            });
        }
        let r = r.finish();
        assert_eq!(r.states.len(), 2);
        assert!(r.states[0].energy < r.states[1].energy);
    }
}
