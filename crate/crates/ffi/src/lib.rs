//! C ABI over `saespec`.
//!
//! Every function returns a [`SaespecStatus`]; on failure the message is
//! available from [`saespec_last_error`] on the same thread. Handles are
//! opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use saespec::oracle::{probe, MeshSpec};
use saespec::spectra::{solve, Branch, SolveOptions};
use saespec::specfun::{bessel_i, bessel_k, gamma, kummer_m, tricomi_psi, whittaker_w};
use saespec::{analyze, Error, RadialProblem, Regime, SaeParameter, SpectrumResult};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaespecStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Inputs outside the domain of the operation.
    InvalidArgument = 2,
    /// The problem's regime or branch does not support the request.
    Regime = 3,
    /// The requested level does not exist.
    NoLevel = 4,
    /// Cancellation, overflow or a failed root search.
    Numerical = 5,
    /// Index past the end of a spectrum.
    OutOfRange = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaespecRegime {
    StandardOnly = 0,
    TwoBranch = 1,
    LogCase = 2,
    FallToCenter = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaespecBranch {
    Standard = 0,
    Additional = 1,
    Mixed = 2,
    FallTower = 3,
}

/// One level. `lambda` is NaN when the solver has none, `nodes` is -1 when
/// no integration counted them.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaespecState {
    pub energy: f64,
    pub n_r: i64,
    pub branch: SaespecBranch,
    pub lambda: f64,
    pub nodes: i64,
}

/// Opaque radial problem.
pub struct SaespecProblem(RadialProblem);

/// Opaque computed spectrum.
pub struct SaespecSpectrum(SpectrumResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> SaespecStatus {
    match err {
        Error::Regime { .. } | Error::BranchUnavailable(_) => SaespecStatus::Regime,
        Error::NoLevel(_) => SaespecStatus::NoLevel,
        Error::Cancellation(_) | Error::AccuracyLoss(_) | Error::Overflow(_) | Error::Bracketing(_) => {
            SaespecStatus::Numerical
        }
        Error::Pole(_) | Error::InvalidProblem(_) | Error::Precondition(_) | Error::Mismatch(_) => {
            SaespecStatus::InvalidArgument
        }
    }
}

struct Fail(SaespecStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, records any failure and converts panics.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> SaespecStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SaespecStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            SaespecStatus::Panic
        }
    }
}

fn null(name: &str) -> Fail {
    Fail(SaespecStatus::NullArgument, format!("{name} is null"))
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn write<T>(out: *mut T, value: T, name: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn saespec_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn saespec_version() -> *const c_char {
    static V: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version string"),
    };
    V.as_ptr()
}

fn new_problem(built: saespec::Result<RadialProblem>, out: *mut *mut SaespecProblem) -> SaespecStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = built?;
        unsafe { out.write(Box::into_raw(Box::new(SaespecProblem(p)))) };
        Ok(())
    })
}

/// Problem from the inverse-square strength `v0`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn saespec_problem_new(
    m: f64,
    l: u32,
    v0: f64,
    coulomb: f64,
    out: *mut *mut SaespecProblem,
) -> SaespecStatus {
    new_problem(RadialProblem::new(m, l, v0, coulomb), out)
}

/// Problem with `v0` chosen so the exponent parameter equals `p`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn saespec_problem_with_p(
    m: f64,
    l: u32,
    p: f64,
    coulomb: f64,
    out: *mut *mut SaespecProblem,
) -> SaespecStatus {
    new_problem(RadialProblem::with_p(m, l, p, coulomb), out)
}

/// # Safety
/// `problem` must come from a `saespec_problem_*` constructor, or be null.
#[no_mangle]
pub unsafe extern "C" fn saespec_problem_free(problem: *mut SaespecProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Regime of the problem and its `P` (NaN outside the power-law regimes).
///
/// # Safety
/// Pointers must be valid; `p_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn saespec_problem_classify(
    problem: *const SaespecProblem,
    regime_out: *mut SaespecRegime,
    p_out: *mut f64,
) -> SaespecStatus {
    guard(|| {
        let a = analyze(&deref(problem, "problem")?.0);
        let regime = match a.regime {
            Regime::StandardOnly => SaespecRegime::StandardOnly,
            Regime::TwoBranch => SaespecRegime::TwoBranch,
            Regime::LogCase => SaespecRegime::LogCase,
            Regime::FallToCenter => SaespecRegime::FallToCenter,
        };
        write(regime_out, regime, "regime_out")?;
        if !p_out.is_null() {
            p_out.write(a.p.unwrap_or(f64::NAN));
        }
        Ok(())
    })
}

fn solve_into(
    problem: *const SaespecProblem,
    tau: saespec::Result<SaeParameter>,
    count: usize,
    out: *mut *mut SaespecSpectrum,
) -> SaespecStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let problem = unsafe { deref(problem, "problem")? };
        let opts = SolveOptions {
            count,
            ..SolveOptions::default()
        };
        let r = solve(&problem.0, tau?, opts)?;
        unsafe { out.write(Box::into_raw(Box::new(SaespecSpectrum(r)))) };
        Ok(())
    })
}

/// Lowest `count` levels for boundary parameter `tau` (use
/// [`saespec_solve_theta`] for the infinite case).
///
/// # Safety
/// `problem` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn saespec_solve_tau(
    problem: *const SaespecProblem,
    tau: f64,
    count: usize,
    out: *mut *mut SaespecSpectrum,
) -> SaespecStatus {
    solve_into(problem, SaeParameter::from_tau(tau), count, out)
}

/// As [`saespec_solve_tau`] with `tau = tan(theta)`.
///
/// # Safety
/// `problem` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn saespec_solve_theta(
    problem: *const SaespecProblem,
    theta: f64,
    count: usize,
    out: *mut *mut SaespecSpectrum,
) -> SaespecStatus {
    solve_into(problem, SaeParameter::from_theta(theta), count, out)
}

/// # Safety
/// `spectrum` must come from a solve call, or be null.
#[no_mangle]
pub unsafe extern "C" fn saespec_spectrum_free(spectrum: *mut SaespecSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// Number of levels, ordered by energy.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn saespec_spectrum_len(spectrum: *const SaespecSpectrum, len_out: *mut usize) -> SaespecStatus {
    guard(|| write(len_out, deref(spectrum, "spectrum")?.0.states.len(), "len_out"))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn saespec_spectrum_state(
    spectrum: *const SaespecSpectrum,
    index: usize,
    state_out: *mut SaespecState,
) -> SaespecStatus {
    guard(|| {
        let states = &deref(spectrum, "spectrum")?.0.states;
        let s = states.get(index).ok_or_else(|| {
            Fail(
                SaespecStatus::OutOfRange,
                format!("index {index} with {} states", states.len()),
            )
        })?;
        let branch = match s.branch {
            Branch::Standard => SaespecBranch::Standard,
            Branch::Additional => SaespecBranch::Additional,
            Branch::Mixed => SaespecBranch::Mixed,
            Branch::FallTower => SaespecBranch::FallTower,
        };
        let state = SaespecState {
            energy: s.energy,
            n_r: s.n_r,
            branch,
            lambda: s.lambda.unwrap_or(f64::NAN),
            nodes: s.nodes.map_or(-1, i64::from),
        };
        write(state_out, state, "state_out")
    })
}

/// Integrates at `energy` and reports the node count and the scaled
/// matching defect, which vanishes at an eigenvalue.
///
/// # Safety
/// Pointers must be valid; either output may be null.
#[no_mangle]
pub unsafe extern "C" fn saespec_oracle_probe(
    problem: *const SaespecProblem,
    tau: f64,
    energy: f64,
    nodes_out: *mut u32,
    defect_out: *mut f64,
) -> SaespecStatus {
    guard(|| {
        let problem = deref(problem, "problem")?;
        let pr = probe(&problem.0, energy, SaeParameter::from_tau(tau)?, MeshSpec::default())?;
        if !nodes_out.is_null() {
            nodes_out.write(pr.nodes);
        }
        if !defect_out.is_null() {
            defect_out.write(pr.defect);
        }
        Ok(())
    })
}

/// Gamma function.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn saespec_gamma(x: f64, out: *mut f64) -> SaespecStatus {
    guard(|| write(out, gamma(x)?, "out"))
}

/// Kummer's `M(a, b, z)` for `z >= 0`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn saespec_kummer_m(a: f64, b: f64, z: f64, out: *mut f64) -> SaespecStatus {
    guard(|| write(out, kummer_m(a, b, z)?, "out"))
}

/// Tricomi's `U(a, b, z)` for `z > 0`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn saespec_tricomi_u(a: f64, b: f64, z: f64, out: *mut f64) -> SaespecStatus {
    guard(|| write(out, tricomi_psi(a, b, z)?, "out"))
}

/// Whittaker `W_{lambda, mu}(x)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn saespec_whittaker_w(lambda: f64, mu: f64, x: f64, out: *mut f64) -> SaespecStatus {
    guard(|| write(out, whittaker_w(lambda, mu, x)?, "out"))
}

/// Modified Bessel `I_nu(x)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn saespec_bessel_i(nu: f64, x: f64, out: *mut f64) -> SaespecStatus {
    guard(|| write(out, bessel_i(nu, x)?, "out"))
}

/// Modified Bessel `K_nu(x)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn saespec_bessel_k(nu: f64, x: f64, out: *mut f64) -> SaespecStatus {
    guard(|| write(out, bessel_k(nu, x)?, "out"))
}
