//! Real-order special functions used by the spectrum solvers.
//!
//! Everything here is a pure function of its arguments. Gamma-type
//! functions return [`SignedLogValue`] where sign tracking matters
//! (negative arguments appear in every eigenvalue equation).

mod bessel;
mod gamma;
mod hypergeometric;

pub use bessel::{bessel_i, bessel_k, bessel_k_connection};
pub use gamma::{
    cos_pi, digamma, gamma, gamma_ratio, is_nonpositive_integer, log_gamma, rgamma, sin_pi,
    SignedLogValue, EULER_GAMMA,
};
pub use hypergeometric::{
    kummer_m, richardson_limit, tricomi_psi, whittaker_w, KUMMER_Z_BUDGET, NEAR_INTEGER_WINDOW,
};
