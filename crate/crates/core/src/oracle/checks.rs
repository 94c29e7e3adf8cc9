//! Diagnostics on oracle solutions: virial relation, orthogonality,
//! node counting at zero energy and level spacing.

use serde::{Deserialize, Serialize};

use super::numerov::{self, Frobenius, Mesh};
use super::{auto_window, find_levels, natural_length, Context, RadialSolution};
use crate::error::{Error, Result};
use crate::singular::{analyze, RadialProblem, Regime};
use crate::spectra::SaeParameter;

fn require_normalized(s: &RadialSolution) -> Result<()> {
    if !s.normalized {
        return Err(Error::precondition("solution is not normalized"));
    }
    Ok(())
}

/// `⟨coulomb/(2r) + tail + r tail'/2⟩`, the non-scale-invariant part of
/// `⟨V + r V'/2⟩`. The inverse-square pieces cancel exactly.
fn virial_expectation(s: &RadialSolution, problem: &RadialProblem) -> f64 {
    let c = problem.coulomb;
    let y: Vec<f64> = s
        .r
        .iter()
        .zip(&s.u)
        .map(|(&r, &u)| {
            let v = c / (2.0 * r) + problem.tail_value(r) + 0.5 * r * problem.tail_derivative(r);
            r * u * u * v
        })
        .collect();
    let mut total = numerov::simpson(&y, s.h);
    if c != 0.0 {
        let (a, b, p, r0) = (s.imposed_st, s.imposed_add, s.p, s.r_min());
        let mut below = a * a * r0.powf(1.0 + 2.0 * p) / (1.0 + 2.0 * p) + 2.0 * a * b * r0;
        if b != 0.0 {
            below += b * b * r0.powf(1.0 - 2.0 * p) / (1.0 - 2.0 * p);
        }
        total += 0.5 * c * below;
    }
    total
}

fn check_problem(s: &RadialSolution, problem: &RadialProblem) -> Result<()> {
    let p = analyze(problem).p.unwrap_or(f64::NAN);
    if s.m != problem.m || (s.p - p).abs() > 1e-14 {
        return Err(Error::Mismatch("solution was computed for another problem".into()));
    }
    Ok(())
}

/// `E - ⟨V + rV'/2⟩ - (P²/m) a_st a_add`. Vanishes on eigenfunctions for
/// any boundary data.
pub fn virial_residual(solution: &RadialSolution, problem: &RadialProblem) -> Result<f64> {
    require_normalized(solution)?;
    check_problem(solution, problem)?;
    let boundary = solution.p * solution.p / solution.m * solution.a_st * solution.a_add;
    Ok(solution.energy - virial_expectation(solution, problem) - boundary)
}

/// `E - ⟨V + rV'/2⟩` without the boundary term; only zero for pure branches.
pub fn naive_virial_residual(solution: &RadialSolution, problem: &RadialProblem) -> Result<f64> {
    require_normalized(solution)?;
    check_problem(solution, problem)?;
    Ok(solution.energy - virial_expectation(solution, problem))
}

/// Limit of the Wronskian bracket at the origin, normalized so that
/// `m (E2 - E1) ∫u1 u2 dr` equals it.
///
/// `p = 0` switches to the logarithmic basis `sqrt(r) (A + B ln r)`.
pub fn boundary_wronskian(p: f64, first: (f64, f64), second: (f64, f64)) -> f64 {
    let (a1, b1) = first;
    let (a2, b2) = second;
    if p == 0.0 {
        0.5 * (a1 * b2 - a2 * b1)
    } else {
        p * (a2 * b1 - a1 * b2)
    }
}

/// Boundary term of the orthogonality relation from fitted coefficients.
pub fn orthogonality_defect(s1: &RadialSolution, s2: &RadialSolution) -> Result<f64> {
    if s1.m != s2.m || s1.p != s2.p {
        return Err(Error::Mismatch(format!(
            "solutions differ in m or P: ({}, {}) vs ({}, {})",
            s1.m, s1.p, s2.m, s2.p
        )));
    }
    if s1.energy == s2.energy {
        return Err(Error::precondition("orthogonality needs distinct energies"));
    }
    Ok(boundary_wronskian(s1.p, (s1.a_st, s1.a_add), (s2.a_st, s2.a_add)))
}

/// `∫u1 u2 dr` over the common mesh, with the analytic piece below `r_min`.
pub fn overlap(s1: &RadialSolution, s2: &RadialSolution) -> Result<f64> {
    if s1.m != s2.m || s1.p != s2.p || s1.h != s2.h || s1.r_min() != s2.r_min() {
        return Err(Error::Mismatch(
            "overlap needs solutions on the same mesh for the same problem".into(),
        ));
    }
    let n = s1.u.len().min(s2.u.len());
    let y: Vec<f64> = (0..n).map(|k| s1.r[k] * s1.u[k] * s2.u[k]).collect();
    let (a1, b1, a2, b2) = (s1.imposed_st, s1.imposed_add, s2.imposed_st, s2.imposed_add);
    let (p, r0) = (s1.p, s1.r_min());
    let mut below = a1 * a2 * r0.powf(2.0 + 2.0 * p) / (2.0 + 2.0 * p) + 0.5 * (a1 * b2 + a2 * b1) * r0 * r0;
    if b1 * b2 != 0.0 {
        below += b1 * b2 * r0.powf(2.0 - 2.0 * p) / (2.0 - 2.0 * p);
    }
    Ok(numerov::simpson(&y, s1.h) + below)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquationKind {
    Schrodinger,
    KleinGordon,
    Dirac,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketClass {
    IdenticallyZero,
    Nonzero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BracketAnalysis {
    pub class: BracketClass,
    /// Power of `r` multiplying the surviving coefficient combination.
    pub power: f64,
}

/// Limit bracket between two states with leading behaviour `r^s1`, `r^s2`.
///
/// Second-order equations pair the states through `u1 u2' - u1' u2`, whose
/// leading coefficient is `(s2 - s1) a1 a2`: it is zero for a shared
/// exponent whatever the amplitudes. The Dirac bracket `g1 f2 - f1 g2`
/// mixes independent upper and lower amplitudes and does not cancel.
pub fn boundary_bracket_class(exponents: (f64, f64), kind: EquationKind) -> BracketAnalysis {
    let (s1, s2) = exponents;
    match kind {
        EquationKind::Schrodinger | EquationKind::KleinGordon => BracketAnalysis {
            class: if s1 == s2 {
                BracketClass::IdenticallyZero
            } else {
                BracketClass::Nonzero
            },
            power: s1 + s2 - 1.0,
        },
        EquationKind::Dirac => BracketAnalysis {
            class: BracketClass::Nonzero,
            power: s1 + s2,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct E0Nodes {
    pub count: u32,
    pub radii: Vec<f64>,
}

/// Nodes of the zero-energy solution with the boundary data of `tau`.
pub fn e0_node_count(problem: &RadialProblem, tau: SaeParameter) -> Result<E0Nodes> {
    problem.validate()?;
    analyze(problem).require(Regime::TwoBranch)?;
    let p = analyze(problem).real_p()?;
    let node_scale = if tau.is_special() {
        1.0
    } else {
        tau.tau().abs().powf(1.0 / (2.0 * p))
    };
    let natural = natural_length(problem).unwrap_or(node_scale);
    let r_min = 1e-8 * node_scale.min(natural);
    let r_max = 1e8 * node_scale.max(natural);
    let ctx = Context::new(problem, tau, r_min, super::MeshSpec::default().h())?;
    let mesh = Mesh::covering(r_min, ctx.h, r_max);
    let f = numerov::coefficient(problem, p, 0.0, &mesh);
    let fro: Frobenius = ctx.frobenius(0.0);
    let w = numerov::outward(&f, &mesh, &fro, mesh.n - 1, mesh.n);
    let mut radii = Vec::new();
    if w[0] != 0.0 && w[0].signum() != fro.origin_sign() {
        // below the mesh: the two leading terms alone decide it
        radii.push((-fro.a_add / fro.a_st).powf(1.0 / (2.0 * p)));
    }
    let mut last: Option<usize> = None;
    for k in 0..mesh.n {
        if w[k] == 0.0 {
            continue;
        }
        if let Some(j) = last {
            if (w[k] < 0.0) != (w[j] < 0.0) {
                let t = w[j] / (w[j] - w[k]);
                let x = mesh.r(j).ln() + t * (mesh.r(k).ln() - mesh.r(j).ln());
                radii.push(x.exp());
            }
        }
        last = Some(k);
    }
    Ok(E0Nodes {
        count: radii.len() as u32,
        radii,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingReport {
    pub energies: Vec<f64>,
    pub gaps: Vec<f64>,
    /// `max |gap_k - gap_0| / |gap_0|`.
    pub max_relative_deviation: f64,
    /// Deviation below `1e-4`.
    pub equidistant: bool,
    pub diagnostics: Vec<String>,
}

/// Gaps between the lowest `n_levels` levels of a problem with a tail.
pub fn spacing_report(problem: &RadialProblem, tau: SaeParameter, n_levels: usize) -> Result<SpacingReport> {
    if problem.tail.is_none() {
        return Err(Error::precondition("spacing report needs a potential tail"));
    }
    if n_levels < 2 {
        return Err(Error::precondition("spacing report needs at least two levels"));
    }
    let window = auto_window(problem, tau, n_levels)?;
    let spectrum = find_levels(problem, tau, window, n_levels)?;
    let energies = spectrum.energies();
    if energies.len() < n_levels {
        return Err(Error::NoLevel(format!(
            "insufficient levels: found {} of {n_levels}",
            energies.len()
        )));
    }
    let gaps: Vec<f64> = energies.windows(2).map(|w| w[1] - w[0]).collect();
    let max_relative_deviation = gaps
        .iter()
        .map(|g| (g - gaps[0]).abs() / gaps[0].abs())
        .fold(0.0, f64::max);
    Ok(SpacingReport {
        energies,
        gaps,
        max_relative_deviation,
        equidistant: max_relative_deviation < 1e-4,
        diagnostics: spectrum.diagnostics,
    })
}
