//! Brute-force verification by direct integration of the radial equation.
//!
//! Everything here is independent of the closed forms in [`crate::spectra`]:
//! the only shared inputs are the problem and the boundary data `tau`.

mod checks;
mod numerov;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::singular::{analyze, RadialProblem, Regime};
use crate::spectra::{Branch, BoundState, SaeParameter, SolveOptions, Source, SpectrumResult};

use numerov::{Frobenius, Mesh};

pub use checks::{
    boundary_bracket_class, boundary_wronskian, e0_node_count, naive_virial_residual,
    orthogonality_defect, overlap, spacing_report, virial_residual, BracketAnalysis, BracketClass,
    E0Nodes, EquationKind, SpacingReport,
};

/// Default mesh density.
pub const POINTS_PER_DECADE: usize = 2000;
/// `r_min` in units of the problem's natural length.
pub const R_MIN_FACTOR: f64 = 1e-8;
/// WKB action accumulated beyond the turning point before the mesh ends.
const TAIL_ACTION: f64 = 40.0;

/// Mesh density and, optionally, a fixed inner radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshSpec {
    pub points_per_decade: usize,
    /// Defaults to `1e-8` natural lengths when absent.
    pub r_min: Option<f64>,
}

impl Default for MeshSpec {
    fn default() -> Self {
        MeshSpec {
            points_per_decade: POINTS_PER_DECADE,
            r_min: None,
        }
    }
}

impl MeshSpec {
    pub fn h(&self) -> f64 {
        std::f64::consts::LN_10 / self.points_per_decade.max(10) as f64
    }

    /// Same inner radius, twice the density.
    pub fn refined(&self) -> MeshSpec {
        MeshSpec {
            points_per_decade: 2 * self.points_per_decade,
            r_min: self.r_min,
        }
    }
}

/// Mesh solution at one energy, normalized to `∫u² dr = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSolution {
    pub energy: f64,
    pub tau: SaeParameter,
    pub p: f64,
    pub m: f64,
    pub r: Vec<f64>,
    pub u: Vec<f64>,
    /// Sign changes of `u`, plus one if a node lies below `r_min`.
    pub node_count: u32,
    /// Coefficients fitted on the innermost decade (normalized `u`).
    pub a_st: f64,
    pub a_add: f64,
    /// Coefficients as imposed at `r_min`, rescaled with `u`.
    pub imposed_st: f64,
    pub imposed_add: f64,
    /// `∫u² dr` before normalization.
    pub norm: f64,
    /// Scaled Wronskian mismatch at the matching radius, in `[-1, 1]`.
    pub matching_defect: f64,
    pub matching_radius: f64,
    /// Slope of `ln|u|` against `ln r` on the innermost decade.
    pub near_origin_exponent: f64,
    /// Log-mesh step.
    pub h: f64,
    pub normalized: bool,
}

impl RadialSolution {
    pub fn r_min(&self) -> f64 {
        self.r[0]
    }

    /// `|a_add / a_st|` relative mismatch against the imposed `tau`.
    pub fn tau_fitted(&self) -> f64 {
        if self.a_st == 0.0 {
            f64::INFINITY
        } else {
            self.a_add / self.a_st
        }
    }

    /// Largest `|u|` on the innermost decade.
    pub fn inner_max(&self) -> f64 {
        let k = decade_len(self.h).min(self.u.len());
        self.u[..k].iter().fold(0.0, |a, v| a.max(v.abs()))
    }
}

fn decade_len(h: f64) -> usize {
    (std::f64::consts::LN_10 / h).round() as usize + 1
}

/// Defect and node count at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probe {
    pub energy: f64,
    pub defect: f64,
    pub nodes: u32,
}

/// Problem-level data fixed for a whole search.
#[derive(Debug, Clone)]
struct Context<'a> {
    problem: &'a RadialProblem,
    tau: SaeParameter,
    p: f64,
    two_branch: bool,
    r_min: f64,
    h: f64,
}

/// Length set by the Coulomb term or the tail, if either is present.
fn natural_length(problem: &RadialProblem) -> Option<f64> {
    if problem.coulomb != 0.0 {
        return Some(1.0 / (problem.m * problem.coulomb.abs()));
    }
    problem.tail.as_ref().and_then(|t| t.length_scale(problem.m))
}

fn kappa(problem: &RadialProblem, energy: f64) -> Option<f64> {
    (energy < 0.0).then(|| (-2.0 * problem.m * energy).sqrt())
}

fn reference_length(problem: &RadialProblem, energy: f64) -> f64 {
    let k = kappa(problem, energy).map(|k| 1.0 / k);
    match (natural_length(problem), k) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => 1.0,
    }
}

impl<'a> Context<'a> {
    fn new(problem: &'a RadialProblem, tau: SaeParameter, r_min: f64, h: f64) -> Result<Self> {
        problem.validate()?;
        let analysis = analyze(problem);
        let two_branch = match analysis.regime {
            Regime::TwoBranch => true,
            Regime::StandardOnly => {
                if !tau.is_zero() {
                    return Err(Error::BranchUnavailable(format!(
                        "tau = {} needs the additional branch, absent for P >= 1/2",
                        tau.tau()
                    )));
                }
                false
            }
            other => return Err(Error::regime("TWO_BRANCH or STANDARD_ONLY", other)),
        };
        if !(r_min > 0.0 && r_min.is_finite()) {
            return Err(Error::precondition(format!("r_min must be positive, got {r_min}")));
        }
        Ok(Context {
            problem,
            tau,
            p: analysis.real_p()?,
            two_branch,
            r_min,
            h,
        })
    }

    fn frobenius(&self, energy: f64) -> Frobenius {
        let (a, b) = self.tau.coefficients();
        let tail0 = self.problem.tail_value(self.r_min);
        Frobenius::new(self.problem, self.p, energy, tail0, a, b, self.two_branch)
    }

    fn v_eff(&self, r: f64) -> f64 {
        let pr = self.problem;
        (self.p * self.p - 0.25) / (2.0 * pr.m * r * r) + pr.coulomb / r + pr.tail_value(r)
    }

    /// Outermost radius where `V_eff <= E`, if any.
    fn turning_point(&self, energy: f64) -> Option<f64> {
        let pr = self.problem;
        let mut far = natural_length(pr).unwrap_or(1.0);
        if let Some(k) = kappa(pr, energy) {
            far = far.max(1.0 / k).max(pr.coulomb.abs() / energy.abs());
        }
        far *= 1e3;
        if let Some(t) = &pr.tail {
            let mut guard = 0;
            while t.is_confining() && t.value(far) < 4.0 * energy.abs() && guard < 200 {
                far *= 2.0;
                guard += 1;
            }
        }
        let ratio = 10f64.powf(1.0 / 50.0);
        let mut r = self.r_min;
        let mut last: Option<f64> = None;
        while r < far {
            if self.v_eff(r) <= energy {
                last = Some(r);
            }
            r *= ratio;
        }
        let lo = last?;
        let (mut a, mut b) = (lo, lo * ratio);
        for _ in 0..60 {
            let mid = 0.5 * (a + b);
            if self.v_eff(mid) <= energy {
                a = mid;
            } else {
                b = mid;
            }
        }
        Some(a)
    }

    /// Outer radius: `30/κ`, or further if the WKB action is still short.
    fn outer_radius(&self, energy: f64, r_t: Option<f64>) -> Result<f64> {
        let pr = self.problem;
        let confining = pr.tail.as_ref().is_some_and(|t| t.is_confining());
        let k = kappa(pr, energy);
        if k.is_none() && !confining {
            return Err(Error::precondition(format!(
                "energy must be negative without a confining tail, got {energy}"
            )));
        }
        let start = r_t.unwrap_or(self.r_min * 10.0).max(self.r_min);
        let cap = start * 1e9 + 1e6 * natural_length(pr).unwrap_or(1.0);
        let ratio = 1.005;
        let (mut r, mut action) = (start, 0.0);
        while action < TAIL_ACTION && r < cap {
            let next = r * ratio;
            let mid = 0.5 * (r + next);
            let d = (2.0 * pr.m * (self.v_eff(mid) - energy)).max(0.0).sqrt();
            action += d * (next - r);
            r = next;
        }
        let mut r_max = r;
        if let (Some(k), false) = (k, confining) {
            r_max = r_max.max(30.0 / k);
        }
        Ok(r_max.max(self.r_min * 1e3))
    }

    fn shoot(&self, energy: f64) -> Result<Shot> {
        if !energy.is_finite() {
            return Err(Error::precondition("energy must be finite"));
        }
        let r_t = self.turning_point(energy);
        let r_max = self.outer_radius(energy, r_t)?;
        let mut mesh = Mesh::covering(self.r_min, self.h, r_max);
        let mut f = numerov::coefficient(self.problem, self.p, energy, &mesh);
        // past this the step no longer resolves the decay; the solution is
        // negligible there anyway
        let limit = 0.05 * 12.0 / (self.h * self.h);
        if let Some(cut) = f.iter().position(|&v| v > limit) {
            let cut = cut.max(32);
            if cut < mesh.n {
                mesh.n = cut;
                f.truncate(cut);
            }
        }
        let n = mesh.n;
        let r_match = r_t.unwrap_or(r_max / 3.0).min(r_max / 3.0);
        let k_m = mesh.index_near(r_match).clamp(4, n - 5);
        let fro = self.frobenius(energy);
        let w_out = numerov::outward(&f, &mesh, &fro, n - 1, k_m + 2);
        let w_in = numerov::inward(&f, &mesh, k_m - 2);
        let d_out = numerov::derivative(&w_out, k_m, mesh.h);
        let d_in = numerov::derivative(&w_in, k_m, mesh.h);
        let num = d_out * w_in[k_m] - w_out[k_m] * d_in;
        let den = (d_out * w_in[k_m]).abs() + (w_out[k_m] * d_in).abs();
        if !(den > 0.0 && den.is_finite()) {
            return Err(Error::Overflow(format!("matching values degenerate at E = {energy}")));
        }
        let defect = num / den;
        let mut nodes = numerov::sign_changes(&w_out);
        if w_out[0] != 0.0 && w_out[0].signum() != fro.origin_sign() {
            nodes += 1;
        }
        Ok(Shot {
            mesh,
            fro,
            w_out,
            w_in,
            k_m,
            defect,
            nodes,
        })
    }

    fn probe(&self, energy: f64) -> Result<Probe> {
        let s = self.shoot(energy)?;
        Ok(Probe {
            energy,
            defect: s.defect,
            nodes: s.nodes,
        })
    }

    fn solution(&self, energy: f64) -> Result<RadialSolution> {
        let shot = self.shoot(energy)?;
        let Shot {
            mesh,
            fro,
            w_out,
            w_in,
            k_m,
            defect,
            ..
        } = shot;
        let h = mesh.h;
        let r = mesh.radii();
        // join the inward piece onto the outward one by least squares on (w, w')
        let d_out = numerov::derivative(&w_out, k_m, h);
        let d_in = numerov::derivative(&w_in, k_m, h);
        let scale = (w_out[k_m] * w_in[k_m] + d_out * d_in) / (w_in[k_m].powi(2) + d_in.powi(2));
        let w: Vec<f64> = (0..mesh.n)
            .map(|k| if k <= k_m { w_out[k] } else { scale * w_in[k] })
            .collect();
        let mut u: Vec<f64> = w.iter().zip(&r).map(|(w, r)| w * r.sqrt()).collect();

        let (a, b) = (fro.a_st, fro.a_add);
        let r0 = r[0];
        let p = self.p;
        let integrand: Vec<f64> = u.iter().zip(&r).map(|(u, r)| r * u * u).collect();
        let mut norm = numerov::simpson(&integrand, h);
        norm += a * a * r0.powf(2.0 + 2.0 * p) / (2.0 + 2.0 * p) + a * b * r0 * r0;
        if b != 0.0 {
            norm += b * b * r0.powf(2.0 - 2.0 * p) / (2.0 - 2.0 * p);
        }
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Overflow(format!("solution norm at E = {energy}")));
        }
        let c = 1.0 / norm.sqrt();
        for v in &mut u {
            *v *= c;
        }

        let mut node_count = numerov::sign_changes(&u);
        if u[0] != 0.0 && u[0].signum() != fro.origin_sign() {
            node_count += 1;
        }
        let nd = decade_len(h).min(mesh.n);
        let (a_st, a_add) = fit_coefficients(&fro, &r[..nd], &u[..nd]);
        let near_origin_exponent = log_slope(&r[..nd], &u[..nd]);

        Ok(RadialSolution {
            energy,
            tau: self.tau,
            p,
            m: self.problem.m,
            r,
            u,
            node_count,
            a_st,
            a_add,
            imposed_st: a * c,
            imposed_add: b * c,
            norm,
            matching_defect: defect,
            matching_radius: mesh.r(k_m),
            near_origin_exponent,
            h,
            normalized: true,
        })
    }
}

struct Shot {
    mesh: Mesh,
    fro: Frobenius,
    w_out: Vec<f64>,
    w_in: Vec<f64>,
    k_m: usize,
    defect: f64,
    nodes: u32,
}

/// Least-squares `(a_st, a_add)` of `u = sqrt(r) (a_st w_+ + a_add w_-)`.
fn fit_coefficients(fro: &Frobenius, r: &[f64], u: &[f64]) -> (f64, f64) {
    let basis = |r: f64| (fro.w_plus(r), fro.w_minus(r));
    if !fro.two_branch {
        let (mut num, mut den) = (0.0, 0.0);
        for (&r, &u) in r.iter().zip(u) {
            let w = u / r.sqrt();
            let (phi, _) = basis(r);
            let wt = 1.0 / (w.abs().max(1e-300)).powi(2);
            num += wt * w * phi;
            den += wt * phi * phi;
        }
        return (num / den, 0.0);
    }
    let (mut s11, mut s12, mut s22, mut t1, mut t2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&r, &u) in r.iter().zip(u) {
        let w = u / r.sqrt();
        let (p1, p2) = basis(r);
        // relative weighting, so both ends of the decade count
        let wt = 1.0 / (w.abs().max(1e-300)).powi(2);
        s11 += wt * p1 * p1;
        s12 += wt * p1 * p2;
        s22 += wt * p2 * p2;
        t1 += wt * p1 * w;
        t2 += wt * p2 * w;
    }
    let det = s11 * s22 - s12 * s12;
    ((t1 * s22 - t2 * s12) / det, (s11 * t2 - s12 * t1) / det)
}

fn log_slope(r: &[f64], u: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = r
        .iter()
        .zip(u)
        .filter(|(_, u)| **u != 0.0)
        .map(|(r, u)| (r.ln(), u.abs().ln()))
        .collect();
    let n = pts.len() as f64;
    if n < 2.0 {
        return f64::NAN;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn resolve_r_min(problem: &RadialProblem, energy: f64, mesh: &MeshSpec) -> f64 {
    mesh.r_min
        .unwrap_or_else(|| R_MIN_FACTOR * reference_length(problem, energy))
}

/// Integrate at a fixed energy with the boundary data of `tau`.
///
/// Energy must be negative unless the tail is confining.
pub fn integrate_radial(
    problem: &RadialProblem,
    energy: f64,
    tau: SaeParameter,
    mesh: MeshSpec,
) -> Result<RadialSolution> {
    let r_min = resolve_r_min(problem, energy, &mesh);
    Context::new(problem, tau, r_min, mesh.h())?.solution(energy)
}

/// Matching defect and node count only; cheaper than [`integrate_radial`].
pub fn probe(problem: &RadialProblem, energy: f64, tau: SaeParameter, mesh: MeshSpec) -> Result<Probe> {
    let r_min = resolve_r_min(problem, energy, &mesh);
    Context::new(problem, tau, r_min, mesh.h())?.probe(energy)
}

/// Search grid: geometric in `|E|` below zero, linear above.
fn energy_grid(lo: f64, hi: f64) -> Vec<f64> {
    const PER_DECADE: f64 = 40.0;
    let mut grid = Vec::new();
    if lo < 0.0 {
        let top = if hi < 0.0 { -hi } else { 1e-6 * (-lo).min(hi.max(1e-300)) };
        let decades = ((-lo) / top).log10().max(0.0);
        let n = (decades * PER_DECADE).ceil().max(2.0) as usize;
        for i in 0..=n {
            grid.push(-((-lo).ln() + ((top).ln() - (-lo).ln()) * i as f64 / n as f64).exp());
        }
        grid[0] = lo;
        *grid.last_mut().unwrap() = -top;
        if hi < 0.0 {
            *grid.last_mut().unwrap() = hi;
            return grid;
        }
    }
    let start = grid.last().copied().unwrap_or(lo);
    let n = 400usize;
    for i in 1..=n {
        grid.push(start + (hi - start) * i as f64 / n as f64);
    }
    if lo >= 0.0 {
        grid.insert(0, lo);
    }
    grid
}

const MAX_DEPTH: u32 = 60;
const ENERGY_TOL: f64 = 1e-12;

fn close(a: f64, b: f64) -> bool {
    (b - a).abs() <= ENERGY_TOL * a.abs().max(b.abs()).max(1e-300)
}

/// Roots in `(a, b)`, recursively split until each cell holds one.
fn isolate(ctx: &Context, a: Probe, b: Probe, depth: u32, roots: &mut Vec<f64>, notes: &mut Vec<String>) -> Result<()> {
    let dn = b.nodes as i64 - a.nodes as i64;
    if a.defect == 0.0 {
        roots.push(a.energy);
        return Ok(());
    }
    let flips = b.defect != 0.0 && (a.defect < 0.0) != (b.defect < 0.0);
    if dn <= 0 && !flips {
        return Ok(());
    }
    if dn <= 1 && flips {
        if dn < 1 {
            notes.push(format!(
                "defect changes sign in ({:e}, {:e}) without a node-count step",
                a.energy, b.energy
            ));
        }
        roots.push(bisect(ctx, a, b)?);
        return Ok(());
    }
    if depth >= MAX_DEPTH || close(a.energy, b.energy) {
        notes.push(format!(
            "unresolved node-count step of {dn} near E = {:e}",
            0.5 * (a.energy + b.energy)
        ));
        roots.push(0.5 * (a.energy + b.energy));
        return Ok(());
    }
    let mid = ctx.probe(0.5 * (a.energy + b.energy))?;
    isolate(ctx, a, mid, depth + 1, roots, notes)?;
    isolate(ctx, mid, b, depth + 1, roots, notes)
}

fn bisect(ctx: &Context, mut a: Probe, mut b: Probe) -> Result<f64> {
    for _ in 0..200 {
        if close(a.energy, b.energy) {
            break;
        }
        let mid = ctx.probe(0.5 * (a.energy + b.energy))?;
        if mid.defect == 0.0 {
            return Ok(mid.energy);
        }
        if (mid.defect < 0.0) == (a.defect < 0.0) {
            a = mid;
        } else {
            b = mid;
        }
    }
    // the defect crosses zero linearly; interpolate inside the final cell
    let t = a.defect / (a.defect - b.defect);
    Ok(a.energy + t * (b.energy - a.energy))
}

fn branch_of(tau: SaeParameter) -> Branch {
    if tau.is_zero() {
        Branch::Standard
    } else if tau.is_infinite() {
        Branch::Additional
    } else {
        Branch::Mixed
    }
}

/// Eigenvalues in `window` by node-indexed bisection on the matching defect.
pub fn find_levels(
    problem: &RadialProblem,
    tau: SaeParameter,
    window: (f64, f64),
    max_states: usize,
) -> Result<SpectrumResult> {
    find_levels_with(problem, tau, window, max_states, MeshSpec::default())
}

pub fn find_levels_with(
    problem: &RadialProblem,
    tau: SaeParameter,
    window: (f64, f64),
    max_states: usize,
    mesh: MeshSpec,
) -> Result<SpectrumResult> {
    let (lo, hi) = window;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::precondition(format!("bad energy window ({lo}, {hi})")));
    }
    let confining = problem.tail.as_ref().is_some_and(|t| t.is_confining());
    if hi >= 0.0 && !confining {
        return Err(Error::precondition(format!(
            "energy window must lie below zero without a confining tail, got ({lo}, {hi})"
        )));
    }
    let r_min = mesh
        .r_min
        .unwrap_or_else(|| R_MIN_FACTOR * reference_length(problem, lo.min(-f64::MIN_POSITIVE)));
    let ctx = Context::new(problem, tau, r_min, mesh.h())?;

    let grid = energy_grid(lo, hi);
    let probes: Vec<Probe> = grid
        .par_iter()
        .map(|&e| ctx.probe(e))
        .collect::<Result<_>>()?;

    // cells that start above the last wanted node count only hold higher levels
    let below = probes[0].nodes;
    let cutoff = below.saturating_add(max_states.min(u32::MAX as usize) as u32);
    let cells: Vec<(Vec<f64>, Vec<String>)> = probes
        .par_windows(2)
        .filter(|w| w[0].nodes < cutoff)
        .map(|w| {
            let mut roots = Vec::new();
            let mut notes = Vec::new();
            isolate(&ctx, w[0], w[1], 0, &mut roots, &mut notes).map(|_| (roots, notes))
        })
        .collect::<Result<_>>()?;

    let mut result = SpectrumResult::new(problem.clone(), tau);
    let mut roots = Vec::new();
    for (r, notes) in cells {
        roots.extend(r);
        result.diagnostics.extend(notes);
    }
    roots.sort_by(f64::total_cmp);
    roots.truncate(max_states);

    let solutions: Vec<RadialSolution> = roots
        .par_iter()
        .map(|&e| ctx.solution(e))
        .collect::<Result<_>>()?;
    let branch = branch_of(tau);
    for (k, s) in solutions.iter().enumerate() {
        let expected = below + k as u32;
        if s.node_count != expected {
            result.diagnostics.push(format!(
                "node theorem violated: level {k} at E = {:e} has {} nodes, expected {expected}",
                s.energy, s.node_count
            ));
        }
        result.states.push(BoundState {
            energy: s.energy,
            n_r: s.node_count as i64,
            branch,
            lambda: (problem.coulomb != 0.0)
                .then(|| problem.m * problem.coulomb.abs() / (-2.0 * problem.m * s.energy).sqrt())
                .filter(|l| l.is_finite()),
            source: Source::Oracle,
            nodes: Some(s.node_count),
        });
    }
    if result.states.len() < max_states {
        result.diagnostics.push(format!(
            "window too narrow: found {} of {max_states} requested levels in ({lo:e}, {hi:e})",
            result.states.len()
        ));
    }
    Ok(result.finish())
}

/// A window expected to hold the lowest `count` levels.
///
/// The lower end comes from the tail-free problem (a repulsive tail only
/// raises levels); the upper end sits just below zero, or at
/// `ω(2 count + 3)` for the oscillator tail.
pub fn auto_window(problem: &RadialProblem, tau: SaeParameter, count: usize) -> Result<(f64, f64)> {
    problem.validate()?;
    let m = problem.m;
    let length = natural_length(problem).unwrap_or(1.0);
    let unit = 1.0 / (2.0 * m * length * length);

    let mut base = problem.clone();
    base.tail = None;
    let base_low = crate::spectra::solve(
        &base,
        tau,
        SolveOptions {
            count: 1,
            ..SolveOptions::default()
        },
    )
    .ok()
    .and_then(|r| r.states.first().map(|s| s.energy))
    .filter(|e| e.is_finite() && *e < 0.0);

    let raises = match &problem.tail {
        Some(crate::singular::Tail::Oscillator { g }) => *g >= 0.0,
        Some(crate::singular::Tail::SinhCorrection { strength, .. }) => *strength >= 0.0,
        _ => false,
    };
    let mut lo = match base_low {
        Some(e) => 2.0 * e,
        None => -unit,
    };
    if !raises {
        lo = lo.min(-100.0 * unit);
    }
    let hi = match &problem.tail {
        Some(crate::singular::Tail::Oscillator { g }) if *g > 0.0 => {
            let omega = (2.0 * g / m).sqrt();
            lo = lo.min(-omega);
            omega * (2.0 * count as f64 + 3.0)
        }
        _ => -1e-6 * unit,
    };
    if !(lo < hi) {
        return Err(Error::precondition(format!("empty search window ({lo}, {hi})")));
    }
    Ok((lo, hi))
}
