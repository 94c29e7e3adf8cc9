//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Tolerances are pinned here and printed with each line.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use saespec::oracle::{
    e0_node_count, find_levels, integrate_radial, naive_virial_residual, orthogonality_defect, overlap,
    spacing_report, virial_residual, MeshSpec, RadialSolution,
};
use saespec::specfun::{bessel_i, bessel_k, gamma, whittaker_w};
use saespec::spectra::{
    closed_levels, fall_spectrum, fp_lambda, inverse_square_level, qp_lambda, repulsive_threshold,
    solve_attractive_coulomb, solve_repulsive_coulomb, Branch,
};
use saespec::{RadialProblem, SaeParameter, SpectrumResult, Tail};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const PS: [f64; 3] = [0.1, 0.25, 0.4];

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn tau(t: f64) -> SaeParameter {
    SaeParameter::from_tau(t).expect("finite tau")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: saespec::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn coulomb(p: f64) -> RadialProblem {
    RadialProblem::with_p(1.0, 0, p, -1.0).unwrap()
}

/// Window around the first `count` levels of a sorted list.
fn window_for(levels: &[f64], count: usize) -> (f64, f64) {
    let lo = 1.5 * levels[0];
    let hi = if levels.len() > count {
        0.5 * (levels[count - 1] + levels[count])
    } else {
        0.5 * levels[count - 1]
    };
    (lo, hi)
}

fn ac1() -> Check {
    let mut worst: f64 = 0.0;
    for &(m, alpha, l) in &[(1.0, 1.0, 0u32), (2.0, 0.7, 0), (0.5, 1.3, 1), (1.0, 1.0, 2)] {
        let problem = lib(RadialProblem::new(m, l, 0.0, -alpha), "problem")?;
        let levels = lib(closed_levels(&problem, Branch::Standard, 4), "closed_levels")?;
        for (k, s) in levels.states.iter().enumerate() {
            let n = (k as u32 + l + 1) as f64;
            worst = worst.max(rel(s.energy, -m * alpha * alpha / (2.0 * n * n)));
        }
    }
    ensure(worst <= 1e-12, || format!("max rel {worst:.2e} > 1e-12"))?;
    Ok(format!("max rel {worst:.2e} (tol 1e-12)"))
}

fn ac2() -> Check {
    let mut worst: f64 = 0.0;
    for &p in &PS {
        let problem = coulomb(p);
        for (branch, t) in [(Branch::Standard, SaeParameter::ZERO), (Branch::Additional, SaeParameter::INFINITE)] {
            let closed = lib(closed_levels(&problem, branch, 3), "closed_levels")?.energies();
            let found = lib(find_levels(&problem, t, window_for(&closed, 3), 3), "find_levels")?;
            ensure(found.states.len() == 3, || {
                format!("P={p} {branch:?}: oracle found {} levels", found.states.len())
            })?;
            for (s, e) in found.states.iter().zip(&closed) {
                worst = worst.max(rel(s.energy, *e));
            }
        }
    }
    ensure(worst <= 1e-6, || format!("max rel {worst:.2e} > 1e-6"))?;
    Ok(format!("max rel {worst:.2e} over 18 levels (tol 1e-6)"))
}

extern "C" {
    fn tgamma(x: f64) -> f64;
}

fn ac3() -> Check {
    let problem = lib(RadialProblem::with_p(1.0, 0, 0.25, 0.0), "problem")?;
    let level = lib(inverse_square_level(&problem, tau(-1.0)), "inverse_square_level")?;
    // independent Gamma ratio from the C math library
    let g = unsafe { tgamma(1.25) / tgamma(0.75) };
    let derived = -2.0 * g.powi(4);
    let closed_err = rel(level.energy, derived);
    ensure(closed_err <= 1e-12, || {
        format!("closed form {} vs libm {derived} ({closed_err:.2e})", level.energy)
    })?;
    // the quoted six-digit value rounds the ratio before the fourth power
    ensure(rel(level.energy, -0.598656) < 5e-6, || format!("E = {} not near -0.598656", level.energy))?;
    let found = lib(find_levels(&problem, tau(-1.0), (-10.0, -1e-4), 5), "find_levels")?;
    ensure(found.states.len() == 1, || format!("oracle found {} levels in (-10, -1e-4)", found.states.len()))?;
    let oracle_err = rel(found.states[0].energy, level.energy);
    ensure(oracle_err <= 1e-6, || format!("oracle rel {oracle_err:.2e} > 1e-6"))?;
    for t in [SaeParameter::ZERO, SaeParameter::INFINITE] {
        let none = lib(find_levels(&problem, t, (-10.0, -1e-4), 5), "find_levels")?;
        ensure(none.is_empty(), || format!("tau={} found {} levels", t.tau(), none.states.len()))?;
    }
    Ok(format!(
        "E = {:.10} (libm rel {closed_err:.1e}), oracle rel {oracle_err:.1e} (tol 1e-6), tau in {{0, inf}} empty",
        level.energy
    ))
}

/// Sign changes of `F_P - Q_P` strictly inside `(a, b)`.
fn roots_inside(p: f64, t: SaeParameter, a: f64, b: f64) -> Result<usize, String> {
    const SAMPLES: usize = 1500;
    let width = b - a;
    let mut grid: Vec<f64> = (0..=SAMPLES)
        .map(|i| a + width * (1e-9 + (1.0 - 2e-9) * i as f64 / SAMPLES as f64))
        .collect();
    if a == 0.0 {
        // deep levels sit at tiny lambda for small |tau| and P
        grid.extend((0..SAMPLES).map(|i| b * 10f64.powf(-40.0 + 38.0 * i as f64 / SAMPLES as f64)));
        grid.sort_by(f64::total_cmp);
    }
    let mut count = 0;
    let mut prev: Option<f64> = None;
    for lam in grid {
        let g = lib(fp_lambda(p, lam), "fp_lambda")? - lib(qp_lambda(p, lam, t, 1.0, 1.0), "qp_lambda")?;
        if let Some(q) = prev {
            if (q < 0.0) != (g < 0.0) {
                count += 1;
            }
        }
        prev = Some(g);
    }
    Ok(count)
}

fn lambdas(r: &SpectrumResult) -> Vec<f64> {
    r.states.iter().map(|s| s.lambda.unwrap_or(f64::NAN)).collect()
}

fn ac4() -> Check {
    const ROOTS: usize = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ae_57ec);
    let mut worst_limit: f64 = 0.0;
    for trial in 0..50 {
        let p: f64 = rng.gen_range(0.03..0.47);
        let t = -10f64.powf(rng.gen_range(-2.0..2.0));
        let problem = coulomb(p);
        let lam = lambdas(&lib(solve_attractive_coulomb(&problem, tau(t), ROOTS), "solve")?);
        ensure(lam.len() == ROOTS, || format!("trial {trial}: {} roots", lam.len()))?;
        for (k, &l) in lam.iter().enumerate() {
            let (a, b) = if k == 0 { (0.0, 0.5 - p) } else { (k as f64 - 0.5 - p, k as f64 + 0.5 - p) };
            ensure(a < l && l < b, || format!("trial {trial}: root {l} outside ({a}, {b}), P={p}, tau={t}"))?;
            let inside = roots_inside(p, tau(t), a, b)?;
            ensure(inside == 1, || format!("trial {trial}: {inside} sign changes in ({a}, {b})"))?;
        }
        // theta -> 0: drop the deep root, the rest approach 1/2 + P + k
        let small = lambdas(&lib(solve_attractive_coulomb(&problem, tau(-1e-10), ROOTS), "solve")?);
        for k in 0..ROOTS - 1 {
            worst_limit = worst_limit.max((small[k + 1] - (0.5 + p + k as f64)).abs());
        }
        // theta -> pi/2: roots approach 1/2 - P + k
        let large = lambdas(&lib(solve_attractive_coulomb(&problem, tau(-1e10), ROOTS), "solve")?);
        for (k, l) in large.iter().enumerate() {
            worst_limit = worst_limit.max((l - (0.5 - p + k as f64)).abs());
        }
    }
    ensure(worst_limit <= 1e-6, || format!("continuation off by {worst_limit:.2e} > 1e-6"))?;
    Ok(format!(
        "50 draws x {ROOTS} roots bracketed singly; continuation max |dlambda| {worst_limit:.1e} (tol 1e-6)"
    ))
}

fn ac5() -> Check {
    let mut worst: f64 = 0.0;
    let mut min_depth = f64::INFINITY;
    for &s in &[0.5, 1.0, 2.0] {
        // m = 1/2, l = 0: 2 m v0 = 1/4 + s^2
        let problem = lib(RadialProblem::new(0.5, 0, 0.25 + s * s, 0.0), "problem")?;
        let mut states = lib(fall_spectrum(&problem, 0.3, -8..=8), "fall_spectrum")?.states;
        ensure(states.len() == 17, || format!("s={s}: {} levels", states.len()))?;
        states.sort_by_key(|st| st.n_r);
        let ratio = (-2.0 * PI / s).exp();
        for w in states.windows(2) {
            worst = worst.max(rel(w[1].energy / w[0].energy, ratio));
            ensure(w[0].energy < w[1].energy, || format!("s={s}: tower not increasing with n"))?;
        }
        min_depth = min_depth.min(states[0].energy / states[8].energy);
    }
    ensure(worst <= 1e-12, || format!("ratio rel {worst:.2e} > 1e-12"))?;
    ensure(min_depth > 1e6, || format!("E(-8)/E(0) only {min_depth:.2e}"))?;
    Ok(format!("ratio rel {worst:.1e} (tol 1e-12); E(-8)/E(0) >= {min_depth:.1e}"))
}

fn eigen(problem: &RadialProblem, t: SaeParameter, count: usize) -> Result<Vec<RadialSolution>, String> {
    let window = lib(saespec::oracle::auto_window(problem, t, count), "auto_window")?;
    let found = lib(find_levels(problem, t, window, count), "find_levels")?;
    ensure(found.states.len() == count, || {
        format!("tau={}: found {} of {count} levels", t.tau(), found.states.len())
    })?;
    found
        .states
        .iter()
        .map(|s| lib(integrate_radial(problem, s.energy, t, MeshSpec::default()), "integrate_radial"))
        .collect()
}

fn ac6() -> Check {
    let mut worst_mixed: f64 = 0.0;
    let mut min_naive = f64::INFINITY;
    let pure_is = lib(RadialProblem::with_p(1.0, 0, 0.25, 0.0), "problem")?;
    let mut mixed: Vec<(RadialProblem, SaeParameter, usize)> = vec![(pure_is, tau(-1.0), 1)];
    for &p in &PS {
        mixed.push((coulomb(p), tau(-1.0), 3));
        mixed.push((coulomb(p), tau(0.5), 3));
    }
    for (problem, t, count) in &mixed {
        for s in eigen(problem, *t, *count)? {
            let r = lib(virial_residual(&s, problem), "virial")? / s.energy.abs();
            let naive = lib(naive_virial_residual(&s, problem), "naive virial")? / s.energy.abs();
            worst_mixed = worst_mixed.max(r.abs());
            min_naive = min_naive.min(naive.abs());
        }
    }
    let mut worst_pure: f64 = 0.0;
    let mut pure = vec![(lib(RadialProblem::new(1.0, 0, 0.0, -1.0), "problem")?, SaeParameter::ZERO)];
    for &p in &PS {
        pure.push((coulomb(p), SaeParameter::ZERO));
        pure.push((coulomb(p), SaeParameter::INFINITE));
    }
    for (problem, t) in &pure {
        for s in eigen(problem, *t, 3)? {
            let naive = lib(naive_virial_residual(&s, problem), "naive virial")? / s.energy.abs();
            worst_pure = worst_pure.max(naive.abs());
        }
    }
    ensure(worst_mixed < 1e-4, || format!("mixed residual {worst_mixed:.2e} >= 1e-4"))?;
    ensure(worst_pure < 1e-4, || format!("pure residual {worst_pure:.2e} >= 1e-4"))?;
    Ok(format!(
        "mixed rel residual {worst_mixed:.1e}, pure {worst_pure:.1e} (tol 1e-4); \
         mixed without boundary term >= {min_naive:.1e}"
    ))
}

fn common_mesh() -> MeshSpec {
    MeshSpec {
        r_min: Some(1e-9),
        ..MeshSpec::default()
    }
}

fn on_mesh(problem: &RadialProblem, energy: f64, t: SaeParameter) -> Result<RadialSolution, String> {
    lib(integrate_radial(problem, energy, t, common_mesh()), "integrate_radial")
}

fn ac7() -> Check {
    let mut worst_same: f64 = 0.0;
    let mut worst_cross: f64 = 0.0;
    for &p in &PS {
        let problem = coulomb(p);
        for t in [tau(-1.0), tau(0.5), SaeParameter::ZERO] {
            let sols = eigen(&problem, t, 3)?;
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let (a, b) = (&sols[i], &sols[j]);
                let d = lib(orthogonality_defect(a, b), "defect")?;
                let scale = p * a.a_st.hypot(a.a_add) * b.a_st.hypot(b.a_add);
                worst_same = worst_same.max(d.abs() / scale);
            }
        }
        let pairs = [
            (SaeParameter::ZERO, SaeParameter::INFINITE),
            (tau(-1.0), SaeParameter::ZERO),
            (tau(0.5), tau(-2.0)),
        ];
        for (t1, t2) in pairs {
            let e1 = lib(solve_attractive_coulomb(&problem, t1, 2), "solve")?.energies();
            let e2 = lib(solve_attractive_coulomb(&problem, t2, 2), "solve")?.energies();
            for k in 0..2 {
                let s1 = on_mesh(&problem, e1[k], t1)?;
                let s2 = on_mesh(&problem, e2[k], t2)?;
                let d = lib(orthogonality_defect(&s1, &s2), "defect")?;
                let rhs = problem.m * (s2.energy - s1.energy) * lib(overlap(&s1, &s2), "overlap")?;
                worst_cross = worst_cross.max(rel(d, rhs));
            }
        }
    }
    ensure(worst_same < 1e-8, || format!("same-tau scaled defect {worst_same:.2e} >= 1e-8"))?;
    ensure(worst_cross < 1e-4, || format!("cross-tau mismatch {worst_cross:.2e} >= 1e-4"))?;
    Ok(format!(
        "same-tau scaled defect {worst_same:.1e} (tol 1e-8); cross-tau rel {worst_cross:.1e} (tol 1e-4)"
    ))
}

fn oscillator(p: f64) -> RadialProblem {
    RadialProblem::with_p(1.0, 0, p, 0.0)
        .unwrap()
        .with_tail(Tail::Oscillator { g: 0.5 })
        .unwrap()
}

fn ac8() -> Check {
    let mut cases: Vec<(RadialProblem, SaeParameter, usize)> = Vec::new();
    for &p in &PS {
        for t in [SaeParameter::ZERO, SaeParameter::INFINITE, tau(-1.0), tau(0.5), tau(-5.0)] {
            cases.push((coulomb(p), t, 4));
        }
    }
    for t in [SaeParameter::ZERO, SaeParameter::INFINITE, tau(-1.0)] {
        cases.push((oscillator(0.25), t, 4));
    }
    let repulsive = lib(RadialProblem::with_p(1.0, 0, 0.25, 1.0), "problem")?;
    let th = lib(repulsive_threshold(&repulsive), "threshold")?;
    cases.push((repulsive, tau(0.5 * th.tau_lower), 1));
    let mut levels = 0;
    for (problem, t, count) in &cases {
        let window = lib(saespec::oracle::auto_window(problem, *t, *count), "auto_window")?;
        let found = lib(find_levels(problem, *t, window, *count), "find_levels")?;
        ensure(found.states.len() == *count, || {
            format!("tau={}: found {} of {count}", t.tau(), found.states.len())
        })?;
        for (k, s) in found.states.iter().enumerate() {
            ensure(s.nodes == Some(k as u32), || {
                format!("tau={} level {k} has {:?} nodes", t.tau(), s.nodes)
            })?;
            levels += 1;
        }
    }
    let pure = lib(RadialProblem::with_p(1.0, 0, 0.25, 0.0), "problem")?;
    for (t, expected) in [
        (tau(-1.0), 1usize),
        (tau(-0.3), 1),
        (tau(-5.0), 1),
        (SaeParameter::ZERO, 0),
        (SaeParameter::INFINITE, 0),
    ] {
        let nodes = lib(e0_node_count(&pure, t), "e0_node_count")?.count as usize;
        let bound = lib(find_levels(&pure, t, (-1e6, -1e-8), 4), "find_levels")?.states.len();
        ensure(nodes == expected && bound == expected, || {
            format!("tau={}: E=0 nodes {nodes}, bound states {bound}, expected {expected}", t.tau())
        })?;
    }
    Ok(format!("{levels} levels in {} spectra have k nodes; E=0 counts match 1/1/1/0/0", cases.len()))
}

fn ac9() -> Check {
    let problem = lib(RadialProblem::with_p(1.0, 0, 0.25, 1.0), "problem")?;
    for t in [SaeParameter::ZERO, SaeParameter::INFINITE] {
        let r = lib(solve_repulsive_coulomb(&problem, t, 3), "solve_repulsive_coulomb")?;
        ensure(r.is_empty(), || format!("tau={} gave {} levels", t.tau(), r.states.len()))?;
        let o = lib(find_levels(&problem, t, (-1e4, -1e-8), 3), "find_levels")?;
        ensure(o.is_empty(), || format!("oracle found {} levels at tau={}", o.states.len(), t.tau()))?;
    }
    let th = lib(repulsive_threshold(&problem), "threshold")?;
    let t = tau(0.5 * th.tau_lower);
    let levels = lib(solve_repulsive_coulomb(&problem, t, 3), "solve_repulsive_coulomb")?;
    ensure(!levels.is_empty(), || format!("no level at admissible tau {}", t.tau()))?;
    let e = levels.states[0].energy;
    let o = lib(find_levels(&problem, t, (4.0 * e, 0.25 * e), 3), "find_levels")?;
    ensure(o.states.len() == 1, || format!("oracle found {} levels near {e}", o.states.len()))?;
    let err = rel(o.states[0].energy, e);
    ensure(err <= 1e-6, || format!("oracle rel {err:.2e} > 1e-6"))?;
    Ok(format!(
        "tau in {{0, inf}} empty; tau = {:.6} (lower end {:.6}) gives E = {e:.8}, oracle rel {err:.1e} (tol 1e-6)",
        t.tau(),
        th.tau_lower
    ))
}

fn ac10() -> Check {
    let problem = oscillator(0.25);
    let mut worst: f64 = 0.0;
    for t in [SaeParameter::ZERO, SaeParameter::INFINITE] {
        let r = lib(spacing_report(&problem, t, 4), "spacing_report")?;
        worst = worst.max(r.max_relative_deviation);
    }
    let mixed = lib(spacing_report(&problem, tau(-1.0), 4), "spacing_report")?;
    ensure(worst < 1e-4, || format!("special tau gap deviation {worst:.2e} >= 1e-4"))?;
    ensure(mixed.max_relative_deviation > 0.01, || {
        format!("tau=-1 gap deviation only {:.2e}", mixed.max_relative_deviation)
    })?;
    Ok(format!(
        "gap deviation {worst:.1e} at tau in {{0, inf}} (tol 1e-4); {:.1}% at tau = -1 (need > 1%)",
        100.0 * mixed.max_relative_deviation
    ))
}

fn ac11() -> Check {
    let mut failures = Vec::new();
    let mut gamma_err: f64 = 0.0;
    for i in 0..400 {
        let x = -4.95 + 0.0247 * i as f64;
        if (x - x.round()).abs() < 1e-3 {
            continue;
        }
        let g = lib(gamma(x), "gamma")?;
        let g1 = lib(gamma(x + 1.0), "gamma")?;
        gamma_err = gamma_err.max(rel(g1, x * g));
        let refl = g * lib(gamma(1.0 - x), "gamma")? * (PI * x).sin();
        gamma_err = gamma_err.max(rel(refl, PI));
    }
    if gamma_err > 1e-10 {
        failures.push(format!("Gamma identities {gamma_err:.2e} > 1e-10"));
    }

    // K against the I_-P - I_P combination over x in [0.1, 10]
    let mut conn_err: f64 = 0.0;
    let mut first_bad = f64::INFINITY;
    for &p in &PS {
        for i in 0..=40 {
            let x = 0.1 * 100f64.powf(i as f64 / 40.0);
            let k = lib(bessel_k(p, x), "bessel_k")?;
            let diff = lib(bessel_i(-p, x), "bessel_i")? - lib(bessel_i(p, x), "bessel_i")?;
            let err = rel(PI / (2.0 * (PI * p).sin()) * diff, k);
            if err > 1e-9 {
                first_bad = first_bad.min(x);
            }
            conn_err = conn_err.max(err);
        }
    }
    if conn_err > 1e-9 {
        failures.push(format!(
            "K/I connection {conn_err:.2e} > 1e-9, first exceeded at x = {first_bad:.3}"
        ));
    }

    let mut half_err: f64 = 0.0;
    for i in 0..=60 {
        let x = 0.05 * 1000f64.powf(i as f64 / 60.0);
        let c = (2.0 / (PI * x)).sqrt();
        half_err = half_err.max(rel(lib(bessel_i(0.5, x), "bessel_i")?, c * x.sinh()));
        half_err = half_err.max(rel(lib(bessel_i(-0.5, x), "bessel_i")?, c * x.cosh()));
        half_err = half_err.max(rel(lib(bessel_k(0.5, x), "bessel_k")?, (PI / (2.0 * x)).sqrt() * (-x).exp()));
    }
    if half_err > 1e-10 {
        failures.push(format!("half-order forms {half_err:.2e} > 1e-10"));
    }

    // asymptotic ratios: within 5% at the stated x and drifting toward 1
    let w_ratio = |x: f64| lib(whittaker_w(0.0, 0.25, x), "whittaker_w").map(|w| w / (-x / 2.0).exp());
    let k_ratio = |x: f64| {
        lib(bessel_k(0.25, x), "bessel_k").map(|k| k / ((PI / (2.0 * x)).sqrt() * (-x).exp()))
    };
    let w40 = w_ratio(40.0)?;
    let k20 = k_ratio(20.0)?;
    if (w40 - 1.0).abs() >= 0.05 {
        failures.push(format!("W ratio at x=40 is {w40}"));
    }
    if (k20 - 1.0).abs() >= 0.05 {
        failures.push(format!("K ratio at x=20 is {k20}"));
    }
    let xs: Vec<f64> = (0..8).map(|i| 2.0 * 2f64.powi(i)).collect();
    for ratio in [&w_ratio as &dyn Fn(f64) -> Result<f64, String>, &k_ratio] {
        let devs = xs.iter().map(|&x| ratio(x).map(|r| (r - 1.0).abs())).collect::<Result<Vec<_>, _>>()?;
        if !devs.windows(2).all(|d| d[1] < d[0]) {
            failures.push(format!("ratio trend not monotone: {devs:?}"));
        }
    }
    let summary = format!(
        "Gamma {gamma_err:.1e} (1e-10), K/I {conn_err:.1e} (1e-9), half-order {half_err:.1e} (1e-10), \
         W(40) {w40:.4}, K(20) {k20:.4} (5%)"
    );
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{}; {summary}", failures.join("; ")))
    }
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("AC1 hydrogen reduction", ac1),
        ("AC2 closed form vs oracle", ac2),
        ("AC3 inverse-square single level", ac3),
        ("AC4 transcendental root brackets", ac4),
        ("AC5 fall-tower ratio", ac5),
        ("AC6 virial theorem", ac6),
        ("AC7 orthogonality", ac7),
        ("AC8 node theorems", ac8),
        ("AC9 repulsive Coulomb levels", ac9),
        ("AC10 equidistance violation", ac10),
        ("AC11 special functions", ac11),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
