//! Transcendental equations for an inverse square plus a Coulomb term.
//!
//! Attractive case, `lambda = m alpha / sqrt(-2 m E)`:
//!
//! ```text
//! F_P(lambda) = Gamma(1/2 - lambda - P) / Gamma(1/2 - lambda + P)
//!             = Q_P(lambda) = -tau G (2 m alpha)^(2P) lambda^(-2P),
//! G = Gamma(1 - 2P) / Gamma(1 + 2P).
//! ```
//!
//! The roots are bracketed by the poles `lambda = 1/2 - P + n` of `F_P`.
//! Rather than bisecting on `F_P - Q_P` itself, the solver multiplies by
//! `lambda^(2P) cos(pi(lambda + P))`, which removes the poles without moving
//! any root inside a bracket.

use crate::error::{Error, Result};
use crate::singular::{analyze, RadialProblem, Regime};
use crate::specfun::{cos_pi, gamma_ratio};

use super::{
    attractive_alpha, closed_levels, ground_state_window, BoundState, Branch, SaeParameter,
    Source, SpectrumResult,
};

const LAMBDA_TOL: f64 = 1e-12;
const FALLBACK_SCAN: usize = 200;

/// `lambda = m |coulomb| / sqrt(-2 m E)`.
pub fn lambda_from_energy(problem: &RadialProblem, energy: f64) -> Result<f64> {
    if !(energy < 0.0) || problem.coulomb == 0.0 {
        return Err(Error::precondition(
            "lambda needs a negative energy and a nonzero Coulomb term",
        ));
    }
    Ok(problem.m * problem.coulomb.abs() / (-2.0 * problem.m * energy).sqrt())
}

/// `E = -m alpha^2 / (2 lambda^2)`.
pub fn energy_from_lambda(problem: &RadialProblem, lambda: f64) -> f64 {
    let a = problem.coulomb;
    -problem.m * a * a / (2.0 * lambda * lambda)
}

/// `F_P(lambda)`. Zeros at `1/2 + P + n`, poles at `1/2 - P + n`.
pub fn fp_lambda(p: f64, lam: f64) -> Result<f64> {
    gamma_ratio(0.5 - lam - p, 0.5 - lam + p)
}

fn g_factor(p: f64) -> Result<f64> {
    gamma_ratio(1.0 - 2.0 * p, 1.0 + 2.0 * p)
}

/// `Q_P(lambda) = -tau G (2 m alpha)^(2P) lambda^(-2P)`.
pub fn qp_lambda(p: f64, lam: f64, tau: SaeParameter, m: f64, alpha: f64) -> Result<f64> {
    if tau.is_infinite() {
        return Err(Error::precondition("Q_P is defined for finite tau"));
    }
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::precondition(format!("Q_P needs 0 < P < 1/2, got {p}")));
    }
    if tau.is_zero() {
        return Ok(0.0);
    }
    Ok(-tau.tau() * g_factor(p)? * (2.0 * m * alpha).powf(2.0 * p) * lam.powf(-2.0 * p))
}

/// The `tau` for which `lambda` solves the attractive equation.
pub fn tau_from_lambda(problem: &RadialProblem, lam: f64) -> Result<f64> {
    let alpha = attractive_alpha(problem)?;
    let p = analyze(problem).real_p()?;
    let f = fp_lambda(p, lam)?;
    Ok(-f * lam.powf(2.0 * p) / (g_factor(p)? * (2.0 * problem.m * alpha).powf(2.0 * p)))
}

/// `Gamma(1/2 + lambda - P) / Gamma(1/2 + lambda + P)`, positive for `lambda >= 0`.
fn shifted_ratio(p: f64, lam: f64) -> Result<f64> {
    gamma_ratio(0.5 + lam - p, 0.5 + lam + p)
}

/// Pole-free form `lambda^(2P) cos pi(lambda-P) R(lambda) - c cos pi(lambda+P)`,
/// with `Q_P = c lambda^(-2P)`.
fn pole_free(p: f64, c: f64, lam: f64) -> Result<f64> {
    Ok(lam.powf(2.0 * p) * cos_pi(lam - p) * shifted_ratio(p, lam)? - c * cos_pi(lam + p))
}

fn bisect<F>(f: &F, mut lo: f64, mut hi: f64, mut flo: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    while hi - lo > tol * hi.abs() {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// All sign changes of `f` on `[lo, hi]`, found on a uniform scan.
fn scan_roots<F>(f: &F, lo: f64, hi: f64, n: usize, tol: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(lo)?;
    for i in 1..=n {
        let x1 = lo + (hi - lo) * i as f64 / n as f64;
        let f1 = f(x1)?;
        if f0 == 0.0 {
            roots.push(x0);
        } else if (f0 < 0.0) != (f1 < 0.0) && f1 != 0.0 {
            roots.push(bisect(f, x0, x1, f0, tol)?);
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(roots)
}

/// First `count` roots of `F_P = Q_P` for finite nonzero `tau`; `tau` in
/// `{0, ±inf}` returns the closed-form levels.
///
/// For `tau < 0` the lowest root sits below the first pole, in
/// `(0, 1/2 - P)`; it is the node-free level that turns into the single
/// inverse-square level as `alpha -> 0`. States are labelled by root order.
pub fn solve_attractive_coulomb(
    problem: &RadialProblem,
    tau: SaeParameter,
    count: usize,
) -> Result<SpectrumResult> {
    let alpha = attractive_alpha(problem)?;
    let analysis = analyze(problem);
    analysis.require(Regime::TwoBranch)?;
    if tau.is_zero() {
        return closed_levels(problem, Branch::Standard, count.saturating_sub(1));
    }
    if tau.is_infinite() {
        return closed_levels(problem, Branch::Additional, count.saturating_sub(1));
    }
    let p = analysis.real_p()?;
    let c = -tau.tau() * g_factor(p)? * (2.0 * problem.m * alpha).powf(2.0 * p);
    let h = |lam: f64| pole_free(p, c, lam);

    let mut result = SpectrumResult::new(problem.clone(), tau);
    let mut brackets: Vec<(f64, f64)> = Vec::new();
    if tau.tau() < 0.0 {
        brackets.push((0.0, 0.5 - p));
    }
    let mut roots = Vec::new();
    let mut n = 0usize;
    while roots.len() < count {
        if brackets.is_empty() {
            brackets.push((0.5 - p + n as f64, 1.5 - p + n as f64));
            n += 1;
        }
        let (lo, hi) = brackets.remove(0);
        let (flo, fhi) = (h(lo)?, h(hi)?);
        if (flo < 0.0) != (fhi < 0.0) {
            roots.push(bisect(&h, lo, hi, flo, LAMBDA_TOL)?);
        } else {
            let found = scan_roots(&h, lo, hi, FALLBACK_SCAN, LAMBDA_TOL)?;
            result.diagnostics.push(format!(
                "bracket ({lo}, {hi}) has no endpoint sign change; scan found {} root(s)",
                found.len()
            ));
            roots.extend(found);
        }
        if n > count + 1000 {
            return Err(Error::Bracketing(format!(
                "only {} of {count} roots found in the first {n} brackets",
                roots.len()
            )));
        }
    }
    roots.truncate(count);
    for (k, &lam) in roots.iter().enumerate() {
        result.states.push(BoundState {
            energy: energy_from_lambda(problem, lam),
            n_r: k as i64,
            branch: Branch::Mixed,
            lambda: Some(lam),
            source: Source::Transcendental,
            nodes: None,
        });
    }
    if let Some(first) = result.states.first() {
        result.diagnostics.push(format!(
            "lowest root lambda = {:.12} {} the ground-state window ({}, {})",
            first.lambda.unwrap_or(f64::NAN),
            if ground_state_window(first.energy, problem) {
                "inside"
            } else {
                "outside"
            },
            0.5 - p,
            1.5 - p
        ));
    }
    Ok(result.finish())
}

/// Where the repulsive problem has levels.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RepulsiveThreshold {
    /// `lambda -> inf` limit of the left side, `(2 m alpha)^(-2P)`.
    pub plateau: f64,
    /// Largest value of the left side seen on the scan.
    pub sup_left: f64,
    /// Levels exist for `tau_lower < tau < 0`.
    pub tau_lower: f64,
    /// `(2 m alpha)^(-P) Gamma(1+2P)/Gamma(1-2P)`, as printed in the
    /// literature; reported for comparison only.
    pub tau_printed: f64,
    /// Upper end of the `lambda` scan.
    pub lambda_max: f64,
}

impl RepulsiveThreshold {
    pub fn admits(&self, tau: f64) -> bool {
        self.tau_lower < tau && tau < 0.0
    }
}

/// `L(lambda) = R(lambda) (lambda / (2 m alpha))^(2P)`.
fn repulsive_left(p: f64, two_m_alpha: f64, lam: f64) -> Result<f64> {
    Ok(shifted_ratio(p, lam)? * (lam / two_m_alpha).powf(2.0 * p))
}

struct RepulsiveScan {
    grid: Vec<f64>,
    values: Vec<f64>,
    threshold: RepulsiveThreshold,
}

fn repulsive_scan(problem: &RadialProblem) -> Result<RepulsiveScan> {
    let analysis = analyze(problem);
    analysis.require(Regime::TwoBranch)?;
    if !(problem.coulomb > 0.0) {
        return Err(Error::precondition("needs a repulsive Coulomb term (coulomb > 0)"));
    }
    let p = analysis.real_p()?;
    let two_m_alpha = 2.0 * problem.m * problem.coulomb;
    let plateau = two_m_alpha.powf(-2.0 * p);
    let mut lambda_max = 1e3_f64;
    while lambda_max < 1e12 {
        let l = repulsive_left(p, two_m_alpha, lambda_max)?;
        if (l / plateau - 1.0).abs() < 1e-3 {
            break;
        }
        lambda_max *= 10.0;
    }
    // geometric scan, 100 points per decade from 1e-8
    let lo = 1e-8_f64;
    let decades = (lambda_max / lo).log10();
    let n = (decades * 100.0).ceil() as usize;
    let mut grid = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let lam = lo * 10f64.powf(decades * i as f64 / n as f64);
        grid.push(lam);
        values.push(repulsive_left(p, two_m_alpha, lam)?);
    }
    let sup_left = values.iter().copied().fold(plateau, f64::max);
    let g = g_factor(p)?;
    Ok(RepulsiveScan {
        grid,
        values,
        threshold: RepulsiveThreshold {
            plateau,
            sup_left,
            tau_lower: -sup_left / g,
            tau_printed: two_m_alpha.powf(-p) / g,
            lambda_max,
        },
    })
}

pub fn repulsive_threshold(problem: &RadialProblem) -> Result<RepulsiveThreshold> {
    Ok(repulsive_scan(problem)?.threshold)
}

/// Levels of `-v0/r^2 + alpha/r`, `alpha > 0`. Empty for `tau` in `{0, ±inf}`
/// and for `tau` outside the admissible interval.
pub fn solve_repulsive_coulomb(
    problem: &RadialProblem,
    tau: SaeParameter,
    count: usize,
) -> Result<SpectrumResult> {
    let scan = repulsive_scan(problem)?;
    let th = &scan.threshold;
    let mut result = SpectrumResult::new(problem.clone(), tau);
    result.diagnostics.push(format!(
        "admissible tau interval ({:.12e}, 0); plateau {:.12e}; printed threshold {:.12e}",
        th.tau_lower, th.plateau, th.tau_printed
    ));
    if tau.is_special() {
        result
            .diagnostics
            .push("no levels for tau in {0, inf}".into());
        return Ok(result);
    }
    let p = analyze(problem).real_p()?;
    let k = -tau.tau() * g_factor(p)?;
    let two_m_alpha = 2.0 * problem.m * problem.coulomb;
    let f = |lam: f64| Ok(repulsive_left(p, two_m_alpha, lam)? - k);
    let mut roots = Vec::new();
    for i in 1..scan.grid.len() {
        let (a, b) = (scan.values[i - 1] - k, scan.values[i] - k);
        if (a < 0.0) != (b < 0.0) {
            roots.push(bisect(&f, scan.grid[i - 1], scan.grid[i], a, LAMBDA_TOL)?);
        }
    }
    if roots.is_empty() {
        result.diagnostics.push(format!("tau = {} admits no level", tau.tau()));
    }
    for (k, &lam) in roots.iter().take(count).enumerate() {
        result.states.push(BoundState {
            energy: energy_from_lambda(problem, lam),
            n_r: k as i64,
            branch: Branch::Mixed,
            lambda: Some(lam),
            source: Source::Transcendental,
            nodes: None,
        });
    }
    Ok(result.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn valence(p: f64) -> RadialProblem {
        RadialProblem::with_p(1.0, 0, p, -1.0).unwrap()
    }

    #[test]
    fn fp_structure() {
        assert_relative_eq!(
            fp_lambda(0.25, 1e-14).unwrap(),
            3.625_609_908_221_908 / 1.225_416_702_465_177_6,
            max_relative = 1e-10
        );
        assert_eq!(fp_lambda(0.25, 0.75).unwrap(), 0.0);
        assert!(matches!(fp_lambda(0.25, 0.25), Err(Error::Pole(_))));
        let a = fp_lambda(0.25, 1.25 - 1e-6).unwrap();
        let b = fp_lambda(0.25, 1.25 + 1e-6).unwrap();
        assert!(a * b < 0.0 && a.abs() > 1e4 && b.abs() > 1e4);
    }

    #[test]
    fn qp_values() {
        let t = SaeParameter::from_tau(-1.0).unwrap();
        assert_relative_eq!(qp_lambda(0.25, 1.0, t, 0.5, 1.0).unwrap(), 2.0, max_relative = 1e-13);
        assert_eq!(qp_lambda(0.25, 3.0, SaeParameter::ZERO, 1.0, 1.0).unwrap(), 0.0);
        let pos = SaeParameter::from_tau(0.3).unwrap();
        assert!(qp_lambda(0.1, 2.0, pos, 1.0, 1.0).unwrap() < 0.0);
    }

    #[test]
    fn roots_satisfy_the_equation() {
        let prob = valence(0.25);
        let tau = SaeParameter::from_tau(-1.0).unwrap();
        let r = solve_attractive_coulomb(&prob, tau, 4).unwrap();
        assert_eq!(r.states.len(), 4);
        for s in &r.states {
            let lam = s.lambda.unwrap();
            let f = fp_lambda(0.25, lam).unwrap();
            let q = qp_lambda(0.25, lam, tau, 1.0, 1.0).unwrap();
            assert!((f - q).abs() < 1e-8 * (1.0 + q.abs()), "lambda {lam}: {f} vs {q}");
            assert_relative_eq!(tau_from_lambda(&prob, lam).unwrap(), -1.0, max_relative = 1e-8);
        }
        let lam0 = r.states[0].lambda.unwrap();
        assert!(lam0 > 0.0 && lam0 < 0.25);
        for (k, s) in r.states.iter().enumerate().skip(1) {
            let lo = 0.25 + (k - 1) as f64;
            assert!(s.lambda.unwrap() > lo && s.lambda.unwrap() < lo + 1.0);
        }
    }

    #[test]
    fn positive_tau_skips_first_bracket() {
        let prob = valence(0.3);
        let r = solve_attractive_coulomb(&prob, SaeParameter::from_tau(0.7).unwrap(), 3).unwrap();
        for (k, s) in r.states.iter().enumerate() {
            let lo = 0.2 + k as f64;
            assert!(s.lambda.unwrap() > lo && s.lambda.unwrap() < lo + 1.0);
        }
    }

    #[test]
    fn special_tau_gives_closed_forms() {
        let prob = valence(0.25);
        let r = solve_attractive_coulomb(&prob, SaeParameter::INFINITE, 2).unwrap();
        assert_relative_eq!(r.states[0].energy, -8.0, max_relative = 1e-14);
    }

    #[test]
    fn repulsive_limits() {
        let prob = RadialProblem::with_p(1.0, 0, 0.25, 1.0).unwrap();
        let th = repulsive_threshold(&prob).unwrap();
        assert_relative_eq!(th.plateau, 2f64.powf(-0.5), max_relative = 1e-14);
        assert!(th.sup_left >= th.plateau);
        assert!(solve_repulsive_coulomb(&prob, SaeParameter::ZERO, 3).unwrap().is_empty());
        assert!(solve_repulsive_coulomb(&prob, SaeParameter::INFINITE, 3).unwrap().is_empty());
        let tau = SaeParameter::from_tau(0.5 * th.tau_lower).unwrap();
        let r = solve_repulsive_coulomb(&prob, tau, 3).unwrap();
        assert!(!r.is_empty());
        assert!(solve_repulsive_coulomb(&prob, SaeParameter::from_tau(0.2).unwrap(), 3)
            .unwrap()
            .is_empty());
    }
}
