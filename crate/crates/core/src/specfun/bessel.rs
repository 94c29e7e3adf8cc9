//! Modified Bessel functions `I_nu`, `K_nu` of real fractional order,
//! `|nu| < 1`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::gamma::{rgamma, sin_pi};
use super::hypergeometric::{near_integer, NEAR_INTEGER_WINDOW};

const SERIES_LIMIT: f64 = 30.0;
const CONNECTION_LIMIT: f64 = 2.0;

fn check_order(nu: f64) -> Result<()> {
    if !(nu.abs() < 1.0) {
        return Err(Error::precondition(format!("Bessel order must satisfy |nu| < 1, got {nu}")));
    }
    Ok(())
}

/// Modified Bessel function of the first kind.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    check_order(nu)?;
    if !(x >= 0.0) {
        return Err(Error::precondition(format!("bessel_i needs x >= 0, got {x}")));
    }
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::precondition("bessel_i: I_nu(0) is infinite for nu < 0"))
        };
    }
    if x <= SERIES_LIMIT {
        Ok(bessel_i_series(nu, x))
    } else {
        Ok(bessel_i_asymptotic(nu, x))
    }
}

fn bessel_i_series(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = (0.5 * x).powf(nu) * rgamma(nu + 1.0);
    let mut sum = term;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn bessel_i_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (k as f64 * 8.0 * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    x.exp() / (2.0 * PI * x).sqrt() * sum
}

/// Modified Bessel function of the second kind (Macdonald function).
///
/// For `x <= 2` this uses `K = pi / (2 sin(nu pi)) (I_-nu - I_nu)`; beyond
/// that the difference cancels badly and Steed's continued fraction takes
/// over.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    check_order(nu)?;
    if !(x > 0.0) {
        return Err(Error::precondition(format!("bessel_k needs x > 0, got {x}")));
    }
    if near_integer(nu) {
        return Err(Error::Cancellation(format!(
            "bessel_k: order {nu} is within {NEAR_INTEGER_WINDOW} of an integer"
        )));
    }
    let nu = nu.abs();
    if x <= CONNECTION_LIMIT {
        Ok(bessel_k_connection(nu, x))
    } else {
        Ok(bessel_k_steed(nu, x))
    }
}

/// The reflection combination on its own, at any `x`. Cancels for large `x`.
pub fn bessel_k_connection(nu: f64, x: f64) -> f64 {
    PI / (2.0 * sin_pi(nu)) * (bessel_i_series(-nu, x) - bessel_i_series(nu, x))
}

/// Temme's form of Steed's continued fraction for `K_mu` and `K_{mu+1}`,
/// `|mu| <= 1/2`, `x >= 2`.
fn steed_pair(mu: f64, x: f64) -> (f64, f64) {
    let mu2 = mu * mu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-16 {
            break;
        }
    }
    h *= a1;
    let k_mu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
    (k_mu, k_mu1)
}

fn bessel_k_steed(nu: f64, x: f64) -> f64 {
    if nu <= 0.5 {
        steed_pair(nu, x).0
    } else {
        steed_pair(nu - 1.0, x).1
    }
}
