use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::singular::{analyze, RadialProblem, Regime};
use crate::specfun::{gamma_ratio, is_nonpositive_integer};

use super::{attractive_alpha, BoundState, Branch, SaeParameter, Source, SpectrumResult};

/// `E = -m alpha^2 / (2 (1/2 + n_r ± P)^2)` for `n_r = 0..=n_max`.
///
/// These are the `tau = 0` (standard) and `tau = ±inf` (additional) spectra.
/// The list is not filtered; see [`closed_levels_filtered`].
pub fn closed_levels(problem: &RadialProblem, branch: Branch, n_max: usize) -> Result<SpectrumResult> {
    let alpha = attractive_alpha(problem)?;
    let analysis = analyze(problem);
    let (sign, tau) = match (branch, analysis.regime) {
        (Branch::Standard, Regime::TwoBranch | Regime::StandardOnly) => (1.0, SaeParameter::ZERO),
        (Branch::Additional, Regime::TwoBranch) => (-1.0, SaeParameter::INFINITE),
        (Branch::Additional, regime) => {
            return Err(Error::BranchUnavailable(format!(
                "additional levels need 0 < P < 1/2 (regime {regime})"
            )))
        }
        (Branch::Standard, regime) => {
            return Err(Error::regime("TWO_BRANCH or STANDARD_ONLY", regime))
        }
        (other, _) => {
            return Err(Error::precondition(format!(
                "closed forms exist for the standard and additional branches only, not {other:?}"
            )))
        }
    };
    let p = analysis.real_p()?;
    let m = problem.m;
    let mut result = SpectrumResult::new(problem.clone(), tau);
    for n in 0..=n_max {
        let lambda = 0.5 + n as f64 + sign * p;
        result.states.push(BoundState {
            energy: -m * alpha * alpha / (2.0 * lambda * lambda),
            n_r: n as i64,
            branch,
            lambda: Some(lambda),
            source: Source::ClosedForm,
            nodes: None,
        });
    }
    if let Some(first) = result.states.first() {
        if !ground_state_window(first.energy, problem) {
            result.diagnostics.push(format!(
                "n_r = 0 {branch:?} level at lambda = {} lies outside the ground-state window",
                first.lambda.unwrap_or(f64::NAN)
            ));
        }
    }
    Ok(result.finish())
}

/// [`closed_levels`] with an `n_r = 0` level removed when it fails
/// [`ground_state_window`].
pub fn closed_levels_filtered(
    problem: &RadialProblem,
    branch: Branch,
    n_max: usize,
) -> Result<SpectrumResult> {
    let mut r = closed_levels(problem, branch, n_max)?;
    if let Some(first) = r.states.first() {
        if first.n_r == 0 && !ground_state_window(first.energy, problem) {
            r.states.remove(0);
            r.diagnostics.push("filtered: removed n_r = 0 level".into());
        }
    }
    Ok(r)
}

/// `-1 < 1/2 - P - lambda(E) < 0`; false whenever the test does not apply.
pub fn ground_state_window(energy: f64, problem: &RadialProblem) -> bool {
    let Ok(lambda) = super::lambda_from_energy(problem, energy) else {
        return false;
    };
    match analyze(problem).p {
        Some(p) => {
            let x = 0.5 - p - lambda;
            -1.0 < x && x < 0.0
        }
        None => false,
    }
}

fn require_pure_two_branch(problem: &RadialProblem) -> Result<f64> {
    if !problem.is_pure_inverse_square() {
        return Err(Error::precondition(
            "the single level exists for a pure inverse-square potential (no Coulomb term, no tail)",
        ));
    }
    let analysis = analyze(problem);
    analysis.require(Regime::TwoBranch)?;
    analysis.real_p()
}

/// The single `tau`-dependent level of `-v0/r^2`:
/// `E = -(2/m) [Gamma(1+P)/Gamma(1-P)]^(1/P) (-1/tau)^(1/P)`.
pub fn inverse_square_level(problem: &RadialProblem, tau: SaeParameter) -> Result<BoundState> {
    let p = require_pure_two_branch(problem)?;
    if tau.is_special() {
        return Err(Error::NoLevel(format!(
            "pure inverse square has no level for tau = {}",
            tau.tau()
        )));
    }
    if tau.tau() > 0.0 {
        return Err(Error::NoLevel(format!(
            "tau = {} > 0 gives no real level for a pure inverse square",
            tau.tau()
        )));
    }
    let g = gamma_ratio(1.0 + p, 1.0 - p)?;
    let energy = -(2.0 / problem.m) * (g / -tau.tau()).powf(1.0 / p);
    Ok(BoundState {
        energy,
        n_r: 0,
        branch: Branch::Mixed,
        lambda: None,
        source: Source::ClosedForm,
        nodes: Some(0),
    })
}

/// Inverse of [`inverse_square_level`]: `tau = -Gamma(1+P)/Gamma(1-P) (2/k)^(2P)`,
/// `k = sqrt(-2 m E)`.
pub fn tau_from_energy(problem: &RadialProblem, energy: f64) -> Result<SaeParameter> {
    let p = require_pure_two_branch(problem)?;
    if !(energy < 0.0) {
        return Err(Error::precondition(format!("energy must be negative, got {energy}")));
    }
    let g = gamma_ratio(1.0 + p, 1.0 - p)?;
    let tau = -g * (2.0 / (-problem.m * energy)).powf(p);
    SaeParameter::from_tau(tau)
}

/// Fall tower `E_n = -eta_n^2 / (2m)`, `eta_n = exp[(C - (n+1/2) pi) / s]`.
pub fn fall_spectrum(
    problem: &RadialProblem,
    c: f64,
    n_range: RangeInclusive<i64>,
) -> Result<SpectrumResult> {
    let analysis = analyze(problem);
    analysis.require(Regime::FallToCenter)?;
    if problem.coulomb != 0.0 || problem.tail.is_some() {
        return Err(Error::precondition("the fall tower is for a pure inverse-square potential"));
    }
    let s = analysis.imag_p.ok_or_else(|| Error::regime("FALL_TO_CENTER", analysis.regime))?;
    let mut result = SpectrumResult::new(problem.clone(), SaeParameter::ZERO);
    for n in n_range {
        let eta = ((c - (n as f64 + 0.5) * std::f64::consts::PI) / s).exp();
        let energy = -eta * eta / (2.0 * problem.m);
        if !energy.is_finite() || energy == 0.0 {
            result.diagnostics.push(format!("tower index {n} under/overflows"));
            continue;
        }
        result.states.push(BoundState {
            energy,
            n_r: n,
            branch: Branch::FallTower,
            lambda: None,
            source: Source::ClosedForm,
            nodes: None,
        });
    }
    result
        .diagnostics
        .push(format!("fall phase C = {c} (tau is not used in this regime)"));
    Ok(result.finish())
}

/// `B_s(eta) = -(2 eta)^(-2s) Gamma(1+2s) Gamma(1/2-s-g/eta) / [Gamma(1-2s) Gamma(1/2+s-g/eta)]`.
///
/// Poles at `eta = g/(n+1/2-s)`, zeros at `eta = g/(n+1/2+s)`. With
/// `g = m alpha` and `lambda = g/eta` this is the `tau(E)` of the attractive
/// Coulomb problem.
pub fn scarf_b(s: f64, gamma_c: f64, eta: f64) -> Result<f64> {
    if !(s > 0.0 && s < 0.5) {
        return Err(Error::precondition(format!("scarf_b needs 0 < s < 1/2, got {s}")));
    }
    if !(gamma_c > 0.0 && eta > 0.0) {
        return Err(Error::precondition("scarf_b needs gamma > 0 and eta > 0"));
    }
    let x = gamma_c / eta;
    let num = 0.5 - s - x;
    if is_nonpositive_integer(num) {
        return Err(Error::Pole(eta));
    }
    let ratio = gamma_ratio(num, 0.5 + s - x)?;
    let g = gamma_ratio(1.0 + 2.0 * s, 1.0 - 2.0 * s)?;
    Ok(-(2.0 * eta).powf(-2.0 * s) * g * ratio)
}
