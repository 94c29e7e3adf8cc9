use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// A real number stored as `sign * exp(log_magnitude)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogValue {
    pub log_magnitude: f64,
    /// `+1`, `-1`, or `0` for an exact zero.
    pub sign: i8,
}

impl SignedLogValue {
    pub const ZERO: SignedLogValue = SignedLogValue {
        log_magnitude: f64::NEG_INFINITY,
        sign: 0,
    };

    pub fn value(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_magnitude.exp(),
        }
    }
}

/// True when `x` is `0, -1, -2, ...`.
pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `sin(pi x)` with exact argument reduction, so that zeros at the integers
/// are reproduced to full relative accuracy.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    if r.abs() <= 0.5 {
        (PI * r).sin()
    } else {
        r.signum() * (PI * (1.0 - r.abs())).sin()
    }
}

/// `cos(pi x)`, accurate near the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    (PI * (0.5 - r.abs())).sin()
}

fn lanczos_ln_gamma(x: f64) -> f64 {
    debug_assert!(x >= 0.5);
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// `ln |Gamma(x)|` together with the sign of `Gamma(x)`.
pub fn log_gamma(x: f64) -> Result<SignedLogValue> {
    if x.is_nan() {
        return Err(Error::precondition("log_gamma of NaN"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x >= 0.5 {
        return Ok(SignedLogValue {
            log_magnitude: lanczos_ln_gamma(x),
            sign: 1,
        });
    }
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    let s = sin_pi(x);
    let reflected = lanczos_ln_gamma(1.0 - x);
    Ok(SignedLogValue {
        log_magnitude: PI.ln() - s.abs().ln() - reflected,
        sign: if s < 0.0 { -1 } else { 1 },
    })
}

/// `Gamma(x)`; overflows to infinity past `x ~ 171.6`.
pub fn gamma(x: f64) -> Result<f64> {
    if x > 0.0 && x == x.round() && x <= 30.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    log_gamma(x).map(SignedLogValue::value)
}

/// `1 / Gamma(x)`, which is entire: zero at the poles of `Gamma`.
pub fn rgamma(x: f64) -> f64 {
    match log_gamma(x) {
        Ok(v) => f64::from(v.sign) * (-v.log_magnitude).exp(),
        Err(_) => 0.0,
    }
}

/// `Gamma(a) / Gamma(b)` evaluated in log space.
///
/// A pole of the numerator is an error. A pole of the denominator returns
/// `0.0`, the limiting value; callers that need to tell this case apart
/// check [`is_nonpositive_integer`] on `b`.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    if is_nonpositive_integer(a) {
        return Err(Error::Pole(a));
    }
    if is_nonpositive_integer(b) {
        return Ok(0.0);
    }
    let la = log_gamma(a)?;
    let lb = log_gamma(b)?;
    Ok(f64::from(la.sign * lb.sign) * (la.log_magnitude - lb.log_magnitude).exp())
}

/// Digamma function `psi(x) = Gamma'(x) / Gamma(x)`.
pub fn digamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::precondition("digamma of NaN"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x < 0.5 {
        // psi(1 - x) - psi(x) = pi cot(pi x)
        let cot = cos_pi(x) / sin_pi(x);
        return Ok(digamma(1.0 - x)? - PI * cot);
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 10.0 {
        shift -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    // Bernoulli tail: sum B_2k / (2k y^2k)
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32_760.0)))));
    Ok(shift + y.ln() - 0.5 / y - series)
}
