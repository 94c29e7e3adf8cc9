//! Effective radial problems from Klein-Gordon equations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::singular::{analyze, RadialProblem, Regime};
use crate::specfun::gamma_ratio;

use super::{solve, BoundState, Branch, SaeParameter, SolveOptions, Source};

/// Roots in the bound-state mass `M` of the two-particle equation with
/// vector `v0/r` and scalar `s0/r` potentials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KgTwoParticle {
    pub p: f64,
    pub tau: SaeParameter,
    /// `energy = M - 2m`, `lambda = lambda(M)`.
    pub states: Vec<BoundState>,
    pub masses: Vec<f64>,
    /// Range of `tau` that the scan found to admit a root.
    pub tau_admissible: (f64, f64),
    /// The closed threshold expression from the literature evaluated at each root.
    pub tau0_printed: Vec<f64>,
    pub diagnostics: Vec<String>,
}

const KG_SCAN_POINTS: usize = 4000;

/// `lambda(M) = (M v0/2 + m s0) / sqrt(4 m^2 - M^2)`.
fn kg_lambda(v0: f64, s0: f64, m: f64, mass: f64) -> f64 {
    (mass * v0 / 2.0 + m * s0) / (4.0 * m * m - mass * mass).sqrt()
}

fn kg_left(p: f64, v0: f64, s0: f64, m: f64, mass: f64) -> Result<f64> {
    let lam = kg_lambda(v0, s0, m, mass);
    Ok(gamma_ratio(0.5 + lam - p, 0.5 + lam + p)? * (4.0 * m * m - mass * mass).powf(-p))
}

pub fn kg_two_particle(v0: f64, s0: f64, m: f64, l: u32, tau: SaeParameter) -> Result<KgTwoParticle> {
    if v0 == 0.0 && s0 == 0.0 {
        return Err(Error::precondition(
            "v0 = s0 = 0 is the free two-particle problem, which has no bound states",
        ));
    }
    if !(v0 > 0.0 && s0 > 0.0 && m > 0.0) {
        return Err(Error::precondition("kg_two_particle needs v0 > 0, s0 > 0, m > 0"));
    }
    let lh = f64::from(l) + 0.5;
    let p2 = lh * lh + (s0 * s0 - v0 * v0) / 4.0;
    if !(p2 > 0.0 && p2 < 0.25) {
        return Err(Error::precondition(format!(
            "P^2 = {p2} is outside (0, 1/4); the equation needs 0 < P < 1/2"
        )));
    }
    let p = p2.sqrt();
    let g = gamma_ratio(1.0 - 2.0 * p, 1.0 + 2.0 * p)?;
    let m_lo = (-2.0 * m).max(-2.0 * m * s0 / v0);
    let m_hi = 2.0 * m;

    // Geometric in the distance from 2m (the binding threshold), so that
    // weak binding is resolved; `lambda(M) > 0` on the whole interval.
    let span = m_hi - m_lo;
    let mut grid: Vec<f64> = (0..=KG_SCAN_POINTS)
        .map(|i| {
            let t = 1e-12_f64 * (1.0 / 1e-12_f64).powf(i as f64 / KG_SCAN_POINTS as f64);
            m_hi - span * t * (1.0 - 1e-9)
        })
        .collect();
    grid.reverse();
    let values: Vec<f64> = grid
        .iter()
        .map(|&mass| kg_left(p, v0, s0, m, mass))
        .collect::<Result<_>>()?;
    let lo_val = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi_val = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut out = KgTwoParticle {
        p,
        tau,
        states: Vec::new(),
        masses: Vec::new(),
        tau_admissible: (-hi_val / g, -lo_val / g),
        tau0_printed: Vec::new(),
        diagnostics: vec![format!("scanned M in ({m_lo}, {m_hi})")],
    };
    if tau.is_special() {
        out.diagnostics.push("no levels for tau in {0, inf}".into());
        return Ok(out);
    }
    let k = -tau.tau() * g;
    let f = |mass: f64| kg_left(p, v0, s0, m, mass).map(|v| v - k);
    for i in 1..grid.len() {
        let (a, b) = (values[i - 1] - k, values[i] - k);
        if (a < 0.0) == (b < 0.0) {
            continue;
        }
        let (mut lo, mut hi, mut flo) = (grid[i - 1], grid[i], a);
        while hi - lo > 1e-14 * m {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = f(mid)?;
            if (fm < 0.0) == (flo < 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        let mass = 0.5 * (lo + hi);
        out.masses.push(mass);
        out.tau0_printed.push(
            -gamma_ratio(1.0 + 2.0 * p, 1.0 - 2.0 * p)?
                * (mass * v0 / 2.0 + m * s0).powf(-2.0 * p)
                * (4.0 * m * m - mass * mass).powf(-p),
        );
    }
    for (n, &mass) in out.masses.iter().enumerate() {
        out.states.push(BoundState {
            energy: mass - 2.0 * m,
            n_r: n as i64,
            branch: Branch::Mixed,
            lambda: Some(kg_lambda(v0, s0, m, mass)),
            source: Source::Transcendental,
            nodes: None,
        });
    }
    if out.states.is_empty() {
        out.diagnostics.push(format!("tau = {} admits no level", tau.tau()));
    }
    Ok(out)
}

/// Schrödinger-form parameters of `u'' + [E^2 - m^2 - l(l+1)/r^2 + 2 E alpha/r + alpha^2/r^2] u = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KgHydrogenMap {
    /// Mass 1/2, `v0 = alpha^2`, `coulomb = -2 E alpha`.
    pub problem: RadialProblem,
    pub p: f64,
    /// The energy that must be matched: `E^2 - m^2`.
    pub effective_energy: f64,
}

pub fn kg_hydrogen_map(alpha_fs: f64, l: u32, e_guess: f64, m: f64) -> Result<KgHydrogenMap> {
    let lh = f64::from(l) + 0.5;
    let p2 = lh * lh - alpha_fs * alpha_fs;
    if p2 <= 0.0 {
        let regime = if p2 == 0.0 {
            Regime::LogCase
        } else {
            Regime::FallToCenter
        };
        return Err(Error::regime("(l+1/2)^2 > alpha^2", regime));
    }
    let coulomb = if alpha_fs == 0.0 {
        0.0
    } else {
        -2.0 * e_guess * alpha_fs
    };
    let problem = RadialProblem::new(0.5, l, alpha_fs * alpha_fs, coulomb)?;
    Ok(KgHydrogenMap {
        problem,
        p: p2.sqrt(),
        effective_energy: e_guess * e_guess - m * m,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HydrogenFixedPoint {
    pub energy: f64,
    pub iterations: usize,
    /// `damped` or `bisection`.
    pub method: String,
    pub residual: f64,
}

const DAMPING: f64 = 0.5;
const FIXED_POINT_TOL: f64 = 1e-10;
const FIXED_POINT_MAX: usize = 200;

/// `epsilon(E)`: level `n_r` of the mapped problem.
fn mapped_level(alpha: f64, l: u32, m: f64, tau: SaeParameter, n_r: usize, e: f64) -> Result<f64> {
    let map = kg_hydrogen_map(alpha, l, e, m)?;
    let opts = SolveOptions {
        count: n_r + 1,
        ..SolveOptions::default()
    };
    let spec = solve(&map.problem, tau, opts)?;
    spec.states
        .get(n_r)
        .map(|s| s.energy)
        .ok_or_else(|| Error::NoLevel(format!("mapped problem has no level {n_r} at E = {e}")))
}

/// Self-consistent `E` with `E^2 - m^2 = epsilon(E)`.
///
/// Runs the damped iteration `E <- (1-w) E + w sqrt(m^2 + epsilon(E))`,
/// `w = 1/2`. That iteration only contracts for weak coupling; when it
/// fails the scalar residual is bisected on `(0, m)` instead.
pub fn kg_hydrogen_fixed_point(
    alpha: f64,
    l: u32,
    m: f64,
    tau: SaeParameter,
    n_r: usize,
) -> Result<HydrogenFixedPoint> {
    if !(alpha > 0.0) {
        return Err(Error::precondition("fixed point needs alpha > 0"));
    }
    let map = kg_hydrogen_map(alpha, l, m, m)?;
    if analyze(&map.problem).regime == Regime::StandardOnly && !tau.is_zero() {
        return Err(Error::BranchUnavailable("tau != 0 needs P < 1/2".into()));
    }
    let mut e = m;
    for it in 1..=FIXED_POINT_MAX {
        let Ok(eps) = mapped_level(alpha, l, m, tau, n_r, e) else {
            break;
        };
        let target = m * m + eps;
        if !(target > 0.0) {
            break;
        }
        let next = (1.0 - DAMPING) * e + DAMPING * target.sqrt();
        if !next.is_finite() || next <= 0.0 {
            break;
        }
        if (next - e).abs() < FIXED_POINT_TOL * m {
            let residual = next * next - m * m - mapped_level(alpha, l, m, tau, n_r, next)?;
            return Ok(HydrogenFixedPoint {
                energy: next,
                iterations: it,
                method: "damped".into(),
                residual,
            });
        }
        e = next;
    }
    // E^2 - m^2 - eps(E): negative near E = 0, positive at E = m.
    let f = |e: f64| -> Result<f64> { Ok(e * e - m * m - mapped_level(alpha, l, m, tau, n_r, e)?) };
    let (mut lo, mut hi) = (1e-8 * m, m);
    let mut flo = f(lo)?;
    if (flo < 0.0) == (f(hi)? < 0.0) {
        return Err(Error::Bracketing(
            "self-consistency residual has no sign change on (0, m)".into(),
        ));
    }
    let mut iterations = 0;
    while hi - lo > FIXED_POINT_TOL * m {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let energy = 0.5 * (lo + hi);
    Ok(HydrogenFixedPoint {
        energy,
        iterations,
        method: "bisection".into(),
        residual: f(energy)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn map_values() {
        let id = kg_hydrogen_map(0.0, 0, 1.0, 1.0).unwrap();
        assert_eq!(id.problem.v0, 0.0);
        assert_eq!(id.problem.coulomb, 0.0);
        assert_eq!(id.p, 0.5);
        let h = kg_hydrogen_map(0.4, 0, 0.9, 1.0).unwrap();
        assert_relative_eq!(h.p, 0.3, max_relative = 1e-14);
        assert_eq!(analyze(&h.problem).regime, Regime::TwoBranch);
        assert!(kg_hydrogen_map(0.6, 0, 0.9, 1.0).is_err());
    }

    #[test]
    fn fixed_points_match_closed_form() {
        // E = m / sqrt(1 + alpha^2 / N^2), N = 1/2 + n_r ± P
        let (alpha, m) = (0.4, 1.0);
        let st = kg_hydrogen_fixed_point(alpha, 0, m, SaeParameter::ZERO, 0).unwrap();
        assert_relative_eq!(st.energy, m / (1.0 + alpha * alpha / 0.64_f64).sqrt(), max_relative = 1e-8);
        assert_eq!(st.method, "damped");
        let hy = kg_hydrogen_fixed_point(alpha, 0, m, SaeParameter::INFINITE, 0).unwrap();
        assert_relative_eq!(hy.energy, m / (1.0 + alpha * alpha / 0.04_f64).sqrt(), max_relative = 1e-8);
        assert!(hy.energy < st.energy);
    }

    #[test]
    fn two_particle() {
        assert!(kg_two_particle(0.0, 0.0, 1.0, 0, SaeParameter::from_tau(-1.0).unwrap()).is_err());
        // P^2 = 1/4 + (s0^2 - v0^2)/4 = 0.25 + (0.04 - 0.64)/4 = 0.1
        let z = kg_two_particle(0.8, 0.2, 1.0, 0, SaeParameter::ZERO).unwrap();
        assert!(z.states.is_empty());
        let (lo, hi) = z.tau_admissible;
        let tau = SaeParameter::from_tau(0.5 * (lo + hi)).unwrap();
        let r = kg_two_particle(0.8, 0.2, 1.0, 0, tau).unwrap();
        assert!(!r.states.is_empty());
        for s in &r.states {
            assert!(s.energy < 0.0);
        }
        assert!(kg_lambda(0.8, 0.2, 1.0, 2.0 - 1e-12) > 1e5);
    }
}
