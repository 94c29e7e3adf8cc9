//! Bound-state spectra of radial Schrödinger problems whose potential behaves
//! as an attractive inverse square at the origin.
//!
//! When `0 < P < 1/2` both Frobenius branches `r^(1/2 ± P)` vanish at the
//! origin and the Hamiltonian needs a one-parameter boundary condition
//! `tau = a_add / a_st`. This crate provides
//!
//! * [`specfun`]: real-order special functions (Gamma, digamma, Kummer,
//!   Tricomi, Whittaker, modified Bessel),
//! * [`singular`]: near-origin classification of a [`RadialProblem`],
//! * [`spectra`]: closed-form and transcendental eigenvalue solvers,
//! * [`oracle`]: an independent shooting solver used to verify them,
//! * [`cli`]: the `saespec` command-line front end.

// `!(x > 0.0)` style checks are there to reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod oracle;
pub mod singular;
pub mod specfun;
pub mod spectra;

pub use error::{Error, Result};
pub use singular::{analyze, RadialProblem, Regime, SingularityAnalysis, Tail};
pub use spectra::{BoundState, SaeParameter, SpectrumResult};
