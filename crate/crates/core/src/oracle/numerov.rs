//! Numerov integration of the radial equation in `x = ln r`.
//!
//! With `u = sqrt(r) w(ln r)` the radial equation becomes
//! `w'' = [P^2 + r^2 q(r)] w`, `q = 2m (coulomb/r + tail - E)`, which has no
//! singular coefficient and is integrated on a uniform `x` grid.

use crate::singular::RadialProblem;

const RENORM_LIMIT: f64 = 1e150;

/// Geometric mesh `r_k = r_min exp(k h)`, `k = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Mesh {
    pub r_min: f64,
    pub h: f64,
    pub n: usize,
}

impl Mesh {
    pub fn covering(r_min: f64, h: f64, r_max: f64) -> Mesh {
        let n = ((r_max / r_min).ln() / h).ceil() as usize + 1;
        Mesh {
            r_min,
            h,
            n: n.max(16),
        }
    }

    pub fn r(&self, k: usize) -> f64 {
        self.r_min * (k as f64 * self.h).exp()
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.r(k)).collect()
    }

    pub fn index_near(&self, r: f64) -> usize {
        let k = ((r / self.r_min).ln() / self.h).round();
        if k <= 0.0 {
            0
        } else {
            (k as usize).min(self.n - 1)
        }
    }
}

/// Terms kept in each Frobenius series, `r^s (1 + c_1 r + c_2 r^2 + c_3 r^3)`.
const SERIES_TERMS: usize = 4;

/// Near-origin data of one problem at one energy.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Frobenius {
    pub p: f64,
    /// Series coefficients of `r^(1/2+P)` and `r^(1/2-P)`; `c[0] = 1`.
    pub c_plus: [f64; SERIES_TERMS],
    pub c_minus: [f64; SERIES_TERMS],
    pub a_st: f64,
    pub a_add: f64,
    /// Whether `r^(1/2-P)` is allowed (two-branch regime).
    pub two_branch: bool,
}

/// `k (k + 2s) c_k = 2 m coulomb c_(k-1) + 2 m (t0 - E) c_(k-2)`, from
/// `w'' = f w` with `f = P^2 + 2m(coulomb r + r^2 (t0 - E)) + O(r^3)`.
fn series(s: f64, mc2: f64, q2: f64) -> [f64; SERIES_TERMS] {
    let mut c = [0.0; SERIES_TERMS];
    c[0] = 1.0;
    for k in 1..SERIES_TERMS {
        let kf = k as f64;
        let prev2 = if k >= 2 { c[k - 2] } else { 0.0 };
        c[k] = (mc2 * c[k - 1] + q2 * prev2) / (kf * (kf + 2.0 * s));
    }
    c
}

fn poly(c: &[f64; SERIES_TERMS], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ck| acc * r + ck)
}

impl Frobenius {
    /// `tail0` is the tail value at the origin.
    pub fn new(problem: &RadialProblem, p: f64, energy: f64, tail0: f64, a_st: f64, a_add: f64, two_branch: bool) -> Self {
        let mc2 = 2.0 * problem.m * problem.coulomb;
        let q2 = 2.0 * problem.m * (tail0 - energy);
        Frobenius {
            p,
            c_plus: series(p, mc2, q2),
            c_minus: if two_branch { series(-p, mc2, q2) } else { [1.0, 0.0, 0.0, 0.0] },
            a_st,
            a_add: if two_branch { a_add } else { 0.0 },
            two_branch,
        }
    }

    pub fn w_plus(&self, r: f64) -> f64 {
        r.powf(self.p) * poly(&self.c_plus, r)
    }

    pub fn w_minus(&self, r: f64) -> f64 {
        if self.two_branch {
            r.powf(-self.p) * poly(&self.c_minus, r)
        } else {
            0.0
        }
    }

    pub fn w(&self, r: f64) -> f64 {
        self.a_st * self.w_plus(r) + self.a_add * self.w_minus(r)
    }

    /// `w(r e^h) - w(r)` without cancellation.
    pub fn w_step(&self, r: f64, h: f64) -> f64 {
        let r1 = r * h.exp();
        let dr = r * h.exp_m1();
        // S(r1) - S(r) with r1^k - r^k = dr (r1^(k-1) + ... + r^(k-1))
        let poly_step = |c: &[f64; SERIES_TERMS]| {
            let mut total = 0.0;
            for (k, &ck) in c.iter().enumerate().skip(1) {
                let sum: f64 = (0..k).map(|j| r1.powi(j as i32) * r.powi((k - 1 - j) as i32)).sum();
                total += ck * sum;
            }
            total * dr
        };
        let branch = |s: f64, c: &[f64; SERIES_TERMS]| {
            r.powf(s) * ((s * h).exp_m1() * poly(c, r1) + poly_step(c))
        };
        let mut d = self.a_st * branch(self.p, &self.c_plus);
        if self.two_branch && self.a_add != 0.0 {
            d += self.a_add * branch(-self.p, &self.c_minus);
        }
        d
    }

    /// Sign of `u` just off the origin.
    pub fn origin_sign(&self) -> f64 {
        if self.a_add != 0.0 {
            self.a_add.signum()
        } else {
            self.a_st.signum()
        }
    }
}

/// `f_k = P^2 + r_k^2 q(r_k)`.
pub(crate) fn coefficient(problem: &RadialProblem, p: f64, energy: f64, mesh: &Mesh) -> Vec<f64> {
    let two_m = 2.0 * problem.m;
    (0..mesh.n)
        .map(|k| {
            let r = mesh.r(k);
            p * p + two_m * (problem.coulomb * r + r * r * (problem.tail_value(r) - energy))
        })
        .collect()
}

/// Numerov in summed form: with `y = (1 - h^2 f / 12) w`, the second
/// difference of `y` is `h^2 f w`. Carrying the first difference `D`
/// explicitly (and compensating the running sum) keeps the roundoff from
/// swamping that small curvature term on fine meshes.
///
/// Rescaling on overflow normally applies to the whole prefix. Entries up to
/// `keep` are only rescaled while the march is still inside that range, so
/// they stay representable when the solution grows by more than the
/// exponent range afterwards; beyond `keep` only signs are meaningful.
fn march(f: &[f64], h: f64, w0: f64, w1: f64, dy0: f64, len: usize, keep: usize) -> Vec<f64> {
    let h2 = h * h;
    let d = |k: usize| 1.0 - h2 * f[k] / 12.0;
    let mut w = vec![0.0; len];
    w[0] = w0;
    if len == 1 {
        return w;
    }
    w[1] = w1;
    let mut y = d(1) * w1;
    let mut comp = 0.0;
    let mut dy = dy0;
    for k in 1..len - 1 {
        dy += h2 * f[k] * w[k];
        // Kahan step for y += dy
        let t = dy - comp;
        let s = y + t;
        comp = (s - y) - t;
        y = s;
        w[k + 1] = y / d(k + 1);
        if w[k + 1].abs() > RENORM_LIMIT {
            let from = if k + 1 > keep { keep + 1 } else { 0 };
            for v in &mut w[from..=k + 1] {
                *v /= RENORM_LIMIT;
            }
            y /= RENORM_LIMIT;
            dy /= RENORM_LIMIT;
            comp /= RENORM_LIMIT;
        }
    }
    w
}

/// Outward integration over `0..=last` from the Frobenius start. Values past
/// `keep` may sit on a different scale (see [`march`]).
pub(crate) fn outward(f: &[f64], mesh: &Mesh, fro: &Frobenius, last: usize, keep: usize) -> Vec<f64> {
    let h = mesh.h;
    let (r0, r1) = (mesh.r(0), mesh.r(1));
    let w0 = fro.w(r0);
    let w1 = fro.w(r1);
    let h2 = h * h / 12.0;
    let dy0 = (1.0 - h2 * f[1]) * fro.w_step(r0, h) - h2 * (f[1] - f[0]) * w0;
    march(f, h, w0, w1, dy0, last + 1, keep)
}

/// Inward integration from `w[n-1] = 0` down to `first`. Entries below
/// `first` are left at zero.
pub(crate) fn inward(f: &[f64], mesh: &Mesh, first: usize) -> Vec<f64> {
    let n = mesh.n;
    let rev: Vec<f64> = f[first..].iter().rev().copied().collect();
    let h2 = mesh.h * mesh.h / 12.0;
    let dy0 = 1.0 - h2 * rev[1];
    let part = march(&rev, mesh.h, 0.0, 1.0, dy0, n - first, n);
    let mut w = vec![0.0; n];
    for (i, v) in part.into_iter().enumerate() {
        w[n - 1 - i] = v;
    }
    w
}

/// Five-point `dw/dx` at `k`.
pub(crate) fn derivative(w: &[f64], k: usize, h: f64) -> f64 {
    (w[k - 2] - 8.0 * w[k - 1] + 8.0 * w[k + 1] - w[k + 2]) / (12.0 * h)
}

/// Sign changes, skipping exact zeros.
pub(crate) fn sign_changes(w: &[f64]) -> u32 {
    let mut count = 0;
    let mut last = 0.0_f64;
    for &v in w {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v < 0.0) != (last < 0.0) {
            count += 1;
        }
        last = v;
    }
    count
}

/// Composite Simpson on a uniform grid; a trailing odd interval is done
/// with the trapezoid rule.
pub(crate) fn simpson(y: &[f64], h: f64) -> f64 {
    let n = y.len();
    if n < 2 {
        return 0.0;
    }
    let m = if (n - 1).is_multiple_of(2) { n } else { n - 1 };
    let mut s = 0.0;
    if m >= 3 {
        s = y[0] + y[m - 1];
        for (i, v) in y.iter().enumerate().take(m - 1).skip(1) {
            s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
        }
        s *= h / 3.0;
    }
    if m < n {
        s += 0.5 * h * (y[n - 2] + y[n - 1]);
    }
    s
}
