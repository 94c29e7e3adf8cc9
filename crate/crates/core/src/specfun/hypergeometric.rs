//! Confluent hypergeometric functions of real parameters.
//!
//! `kummer_m` is a compensated power series restricted to `z <= 30`.
//! `tricomi_psi` picks between three routes per call: the two-`M` connection
//! formula (small `z`), the large-`z` asymptotic series, and backward
//! integration of Kummer's equation from the asymptotic region.

use crate::error::{Error, Result};

use super::gamma::{gamma, is_nonpositive_integer, rgamma};

/// Largest argument for which [`kummer_m`] guarantees its accuracy.
pub const KUMMER_Z_BUDGET: f64 = 30.0;
/// Distance from an integer below which `b` (or `2P`) is rejected.
pub const NEAR_INTEGER_WINDOW: f64 = 1e-4;

const KUMMER_TARGET: f64 = 1e-10;
const MAX_TERMS: usize = 4000;

pub(crate) fn near_integer(x: f64) -> bool {
    (x - x.round()).abs() <= NEAR_INTEGER_WINDOW
}

/// Kummer's function `M(a, b; z) = 1F1(a; b; z)` for `0 <= z <= 30`.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    if is_nonpositive_integer(b) {
        return Err(Error::Pole(b));
    }
    if !(z >= 0.0) {
        return Err(Error::precondition(format!("kummer_m needs z >= 0, got {z}")));
    }
    if z > KUMMER_Z_BUDGET {
        return Err(Error::AccuracyLoss(format!(
            "kummer_m: z = {z} exceeds the series budget {KUMMER_Z_BUDGET}"
        )));
    }
    let (sum, max_term) = kummer_series(a, b, z);
    if max_term * 4.0 * f64::EPSILON > KUMMER_TARGET * sum.abs() {
        return Err(Error::AccuracyLoss(format!(
            "kummer_m({a}, {b}, {z}): series cancellation (largest term {max_term:e}, sum {sum:e})"
        )));
    }
    Ok(sum)
}

/// Term-recurrence series with Kahan summation. Returns the sum and the
/// largest term magnitude (used as a cancellation estimate).
fn kummer_series(a: f64, b: f64, z: f64) -> (f64, f64) {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut comp = 0.0_f64;
    let mut max_term = 1.0_f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * z / ((b + kf) * (kf + 1.0));
        if term == 0.0 {
            break;
        }
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        max_term = max_term.max(term.abs());
        if term.abs() <= 1e-17 * sum.abs() && kf > a.abs() + z {
            break;
        }
    }
    (sum, max_term)
}

/// Tricomi's function `U(a, b; z)` (written `Psi` in older references) for
/// `z > 0`.
pub fn tricomi_psi(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::precondition(format!("tricomi_psi needs z > 0, got {z}")));
    }
    if is_nonpositive_integer(a) {
        return Ok(tricomi_polynomial(a.round() as i64, b, z));
    }
    if near_integer(b) {
        return Err(Error::Cancellation(format!(
            "tricomi_psi: b = {b} is within {NEAR_INTEGER_WINDOW} of an integer"
        )));
    }
    if let Some(v) = tricomi_connection(a, b, z) {
        return Ok(v);
    }
    if let Some((v, _)) = tricomi_asymptotic(a, b, z) {
        return Ok(v);
    }
    tricomi_backward_ode(a, b, z)
}

/// `U(-n, b, z) = (-1)^n sum_s C(n,s) (b+s)_{n-s} (-z)^s`.
fn tricomi_polynomial(a: i64, b: f64, z: f64) -> f64 {
    let n = (-a) as usize;
    let mut sum = 0.0;
    let mut binom = 1.0;
    for s in 0..=n {
        if s > 0 {
            binom *= (n - s + 1) as f64 / s as f64;
        }
        let mut poch = 1.0;
        for j in 0..(n - s) {
            poch *= b + (s + j) as f64;
        }
        sum += binom * poch * (-z).powi(s as i32);
    }
    if n % 2 == 1 {
        -sum
    } else {
        sum
    }
}

fn tricomi_connection(a: f64, b: f64, z: f64) -> Option<f64> {
    let m1 = kummer_m(a, b, z).ok()?;
    let m2 = kummer_m(a - b + 1.0, 2.0 - b, z).ok()?;
    let t1 = gamma(1.0 - b).ok()? * rgamma(a - b + 1.0) * m1;
    let t2 = gamma(b - 1.0).ok()? * rgamma(a) * z.powf(1.0 - b) * m2;
    let u = t1 + t2;
    let scale = t1.abs() + t2.abs();
    if !u.is_finite() || scale * 1e-13 > 1e-9 * u.abs() {
        return None;
    }
    Some(u)
}

/// `U(a,b,z) ~ z^-a sum_k (a)_k (a-b+1)_k / k! (-z)^-k`; returns the value
/// and the size of the smallest term relative to the sum, or `None` when the
/// series does not reach 1e-13 before diverging.
fn tricomi_asymptotic(a: f64, b: f64, z: f64) -> Option<(f64, f64)> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut prev = f64::INFINITY;
    for k in 0..200 {
        let kf = k as f64;
        let next = term * (a + kf) * (a - b + 1.0 + kf) / ((kf + 1.0) * -z);
        if next.abs() >= prev || !next.is_finite() {
            break;
        }
        prev = next.abs();
        term = next;
        sum += term;
        if term.abs() <= 1e-16 * sum.abs() {
            break;
        }
    }
    let rel = term.abs() / sum.abs();
    if rel > 1e-13 {
        return None;
    }
    Some((z.powf(-a) * sum, rel))
}

/// Integrate `z w'' + (b - z) w' - a w = 0` from a point far enough out for
/// the asymptotic series, inward to `z`. Inward, the `M`-type solution decays
/// relative to `U`, so the recursion is stable.
fn tricomi_backward_ode(a: f64, b: f64, z: f64) -> Result<f64> {
    let mut far = (z + 10.0).max(40.0);
    let start = loop {
        // U'(a,b,z) = -a U(a+1, b+1, z)
        match (
            tricomi_asymptotic(a, b, far),
            tricomi_asymptotic(a + 1.0, b + 1.0, far),
        ) {
            (Some((u, _)), Some((up, _))) => break (u, -a * up),
            _ if far > 1e4 => {
                return Err(Error::AccuracyLoss(format!(
                    "tricomi_psi({a}, {b}, {z}): asymptotic series never converged"
                )))
            }
            _ => far *= 2.0,
        }
    };
    let rhs = |x: f64, y: [f64; 2]| -> [f64; 2] { [y[1], (a * y[0] - (b - x) * y[1]) / x] };
    let steps = ((far - z) / 0.004).ceil().max(1.0) as usize;
    let h = -(far - z) / steps as f64;
    let mut x = far;
    let mut y = [start.0, start.1];
    for _ in 0..steps {
        let k1 = rhs(x, y);
        let k2 = rhs(x + 0.5 * h, [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
        let k3 = rhs(x + 0.5 * h, [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
        let k4 = rhs(x + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        for i in 0..2 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        x += h;
    }
    Ok(y[0])
}

/// Whittaker's function `W_{lambda, P}(x) = e^{-x/2} x^{1/2+P} U(1/2+P-lambda, 1+2P, x)`.
pub fn whittaker_w(lambda: f64, p: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::precondition(format!("whittaker_w needs x > 0, got {x}")));
    }
    let a = 0.5 + p - lambda;
    if !is_nonpositive_integer(a) && near_integer(2.0 * p) {
        return Err(Error::Cancellation(format!(
            "whittaker_w: 2P = {} is within {NEAR_INTEGER_WINDOW} of an integer",
            2.0 * p
        )));
    }
    let u = tricomi_psi(a, 1.0 + 2.0 * p, x)?;
    let log_prefactor = -0.5 * x + (0.5 + p) * x.ln();
    let w = u * log_prefactor.exp();
    if !w.is_finite() {
        return Err(Error::Overflow(format!("whittaker_w({lambda}, {p}, {x})")));
    }
    Ok(w)
}

/// Two-point Richardson extrapolation of `f(h)` to `h -> 0`, assuming a
/// linear leading error term. Used for parameters pushed off a near-integer
/// cancellation point.
pub fn richardson_limit<F>(f: F, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let f1 = f(h)?;
    let f2 = f(2.0 * h)?;
    Ok(2.0 * f1 - f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kummer_simple_cases() {
        assert_eq!(kummer_m(3.7, 2.0, 0.0).unwrap(), 1.0);
        assert_relative_eq!(kummer_m(1.0, 1.0, 1.0).unwrap(), std::f64::consts::E, max_relative = 1e-14);
        assert_relative_eq!(kummer_m(-1.0, 2.0, 1.0).unwrap(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(kummer_m(1.0, 1.0, 30.0).unwrap(), 30f64.exp(), max_relative = 1e-13);
    }

    #[test]
    fn kummer_rejects_out_of_budget() {
        assert!(matches!(kummer_m(0.5, 1.5, 31.0), Err(Error::AccuracyLoss(_))));
        assert!(matches!(kummer_m(0.5, -2.0, 1.0), Err(Error::Pole(_))));
        // strong alternation at large z
        assert!(kummer_m(-25.3, 1.2, 29.0).is_err());
    }

    #[test]
    fn tricomi_trivial_and_polynomial() {
        assert_relative_eq!(tricomi_psi(0.0, 0.5, 1.0).unwrap(), 1.0, max_relative = 1e-14);
        // U(-1, b, z) = z - b
        assert_relative_eq!(tricomi_psi(-1.0, 0.3, 2.0).unwrap(), 1.7, max_relative = 1e-14);
        assert!(matches!(tricomi_psi(0.2, 2.00001, 1.0), Err(Error::Cancellation(_))));
    }

    #[test]
    fn tricomi_routes_agree_in_overlap() {
        // at z = 6 the connection formula is still well inside its
        // cancellation budget; the backward ODE route is independent of it
        let (a, b, z) = (0.35, 0.6, 6.0);
        let conn = tricomi_connection(a, b, z).expect("connection route");
        let ode = tricomi_backward_ode(a, b, z).unwrap();
        assert_relative_eq!(conn, ode, max_relative = 1e-8);
        let (asy, _) = tricomi_asymptotic(a, b, 60.0).unwrap();
        assert_relative_eq!(asy, tricomi_backward_ode(a, b, 60.0).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn whittaker_hydrogen_exact() {
        // a = 0 makes U = 1
        let w = whittaker_w(1.0, 0.5, 2.0).unwrap();
        assert_relative_eq!(w, 2.0 * (-1.0f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn whittaker_rejects_integer_two_p() {
        assert!(matches!(whittaker_w(0.7, 0.5, 2.0), Err(Error::Cancellation(_))));
    }
}
