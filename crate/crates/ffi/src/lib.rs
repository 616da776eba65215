//! C ABI for `orbitadm`.
//!
//! Problems and reports are opaque handles created and released by this
//! library. Every call returns an `OrbitadmStatus`; on failure a message is
//! available from `orbitadm_last_error` on the same thread. Strings
//! returned by a report stay valid until the report is freed.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orbitadm::io::report::{render_json, render_text};
use orbitadm::io::{corpus, parse, ProblemFile};
use orbitadm::numeric_geometry::{fd_jacobian, DEFAULT_RANK_TOL, DEFAULT_STEP};
use orbitadm::orbit_rank::rank_at;
use orbitadm::rational::{ratio, Rational};
use orbitadm::verdict::{
    full_report, Admissibility, AnalysisConfig, AnalysisError, FullReport, Spectral, SymbolicMode,
};
use orbitadm::MonomialDatum;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitadmStatus {
    Ok = 0,
    /// Parse or validation failure in the input.
    Input = 1,
    /// The algebra is not solvable or not exponential.
    Precondition = 2,
    /// Probabilistic and symbolic ranks disagree.
    Disagreement = 3,
    NullPointer = 4,
    InvalidArgument = 5,
    /// A panic was caught at the boundary.
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitadmSpectral {
    Singular = 0,
    AbsolutelyContinuous = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitadmAdmissibility {
    NotAdmissible = 0,
    Admissible = 1,
    ConjecturallyNotAdmissible = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitadmSymbolic {
    Off = 0,
    Auto = 1,
    Required = 2,
}

/// Analysis settings. Obtain defaults from `orbitadm_config_default`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct OrbitadmConfig {
    pub trials: usize,
    pub bound: u64,
    pub seed: u64,
    pub exp_samples: usize,
    pub symbolic: OrbitadmSymbolic,
    pub symbolic_threshold: usize,
    pub assume_exponential: bool,
}

/// Finite-difference Jacobian check at one chart point.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct OrbitadmJacobianSummary {
    pub max_dev_topleft: f64,
    pub max_dev_topright: f64,
    pub max_dev_bottomright: f64,
    pub numerical_rank: usize,
    pub rank_m: usize,
    pub expected_rank: usize,
}

/// A parsed problem: algebra, subalgebra generators and character values.
pub struct OrbitadmProblem {
    problem: ProblemFile,
}

/// Result of `orbitadm_verdict`.
pub struct OrbitadmReport {
    report: FullReport,
    json: CString,
    text: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).unwrap_or_default());
}

struct Failure(OrbitadmStatus, String);

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        let status = match e.exit_code() {
            2 => OrbitadmStatus::Precondition,
            3 => OrbitadmStatus::Disagreement,
            _ => OrbitadmStatus::Input,
        };
        Failure(status, e.to_string())
    }
}

fn null() -> Failure {
    Failure(OrbitadmStatus::NullPointer, "null pointer argument".into())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> OrbitadmStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OrbitadmStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            OrbitadmStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(OrbitadmStatus::InvalidArgument, "string is not UTF-8".into()))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn chart_point(
    p: &OrbitadmProblem,
    num: *const i64,
    den: *const i64,
    len: usize,
) -> Result<(MonomialDatum, Vec<Rational>), Failure> {
    let pf = &p.problem;
    let d = MonomialDatum::new(&pf.algebra, &pf.generators, &pf.functional)
        .map_err(|e| Failure(OrbitadmStatus::Input, e.to_string()))?;
    if len != d.chart_dim() {
        return Err(Failure(
            OrbitadmStatus::InvalidArgument,
            format!("point has {len} coordinates, expected {}", d.chart_dim()),
        ));
    }
    if len > 0 && (num.is_null() || den.is_null()) {
        return Err(null());
    }
    let mut x = Vec::with_capacity(len);
    for i in 0..len {
        let (n, q) = (*num.add(i), *den.add(i));
        if q <= 0 {
            return Err(Failure(
                OrbitadmStatus::InvalidArgument,
                format!("denominator {i} must be positive"),
            ));
        }
        x.push(ratio(n, q));
    }
    Ok((d, x))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn orbitadm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn orbitadm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a problem from NUL-terminated source text.
///
/// # Safety
/// `source` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_problem_parse(
    source: *const c_char,
    out: *mut *mut OrbitadmProblem,
) -> OrbitadmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let src = str_arg(source)?;
        let problem = parse(src).map_err(|e| Failure(OrbitadmStatus::Input, e.to_string()))?;
        write_out(out, OrbitadmProblem { problem });
        Ok(())
    })
}

/// Loads a problem from the bundled corpus by name.
///
/// # Safety
/// `name` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_problem_from_corpus(
    name: *const c_char,
    out: *mut *mut OrbitadmProblem,
) -> OrbitadmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let name = str_arg(name)?;
        let entry = corpus::get(name)
            .ok_or_else(|| Failure(OrbitadmStatus::InvalidArgument, format!("no corpus entry named {name}")))?;
        write_out(
            out,
            OrbitadmProblem {
                problem: entry.problem(),
            },
        );
        Ok(())
    })
}

/// Releases a problem. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_problem_free(p: *mut OrbitadmProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Dimension of the algebra, or 0 for null.
///
/// # Safety
/// `p` must be null or a live problem.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_problem_dim(p: *const OrbitadmProblem) -> usize {
    p.as_ref().map_or(0, |p| p.problem.algebra.dim())
}

/// Number of subalgebra generators, or 0 for null.
///
/// # Safety
/// `p` must be null or a live problem.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_problem_subalgebra_dim(p: *const OrbitadmProblem) -> usize {
    p.as_ref().map_or(0, |p| p.problem.generators.len())
}

#[no_mangle]
pub extern "C" fn orbitadm_config_default() -> OrbitadmConfig {
    let d = AnalysisConfig::default();
    OrbitadmConfig {
        trials: d.trials,
        bound: d.bound,
        seed: d.seed,
        exp_samples: d.exp_samples,
        symbolic: OrbitadmSymbolic::Auto,
        symbolic_threshold: d.symbolic_threshold,
        assume_exponential: d.assume_exponential,
    }
}

fn to_config(c: &OrbitadmConfig) -> AnalysisConfig {
    AnalysisConfig {
        trials: c.trials,
        bound: c.bound,
        seed: c.seed,
        exp_samples: c.exp_samples,
        symbolic: match c.symbolic {
            OrbitadmSymbolic::Off => SymbolicMode::Off,
            OrbitadmSymbolic::Auto => SymbolicMode::Auto,
            OrbitadmSymbolic::Required => SymbolicMode::Required,
        },
        symbolic_threshold: c.symbolic_threshold,
        assume_exponential: c.assume_exponential,
    }
}

/// Runs the full analysis. A null `config` means the problem file's
/// settings over the defaults.
///
/// # Safety
/// `p` must be a live problem, `config` null or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_verdict(
    p: *const OrbitadmProblem,
    config: *const OrbitadmConfig,
    out: *mut *mut OrbitadmReport,
) -> OrbitadmStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let pf = &p.problem;
        let cfg = match config.as_ref() {
            Some(c) => to_config(c),
            None => {
                let d = AnalysisConfig::default();
                AnalysisConfig {
                    trials: pf.config.trials.unwrap_or(d.trials),
                    bound: pf.config.bound.unwrap_or(d.bound),
                    seed: pf.config.seed.unwrap_or(d.seed),
                    exp_samples: pf.config.exp_samples.unwrap_or(d.exp_samples),
                    symbolic_threshold: pf.config.symbolic_threshold.unwrap_or(d.symbolic_threshold),
                    ..d
                }
            }
        };
        if cfg.trials == 0 {
            return Err(Failure(
                OrbitadmStatus::InvalidArgument,
                "trials must be at least 1".into(),
            ));
        }
        let report = full_report(&pf.algebra, &pf.generators, &pf.functional, &cfg)?;
        let json = CString::new(render_json(&report)).expect("no NUL in report");
        let text = CString::new(render_text(&report)).expect("no NUL in report");
        write_out(out, OrbitadmReport { report, json, text });
        Ok(())
    })
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `r` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_report_free(r: *mut OrbitadmReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live report.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_report_spectral(r: *const OrbitadmReport) -> OrbitadmSpectral {
    match (*r).report.spectral.kind {
        Spectral::Singular => OrbitadmSpectral::Singular,
        Spectral::AbsolutelyContinuous => OrbitadmSpectral::AbsolutelyContinuous,
    }
}

/// # Safety
/// `r` must be a live report.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_report_admissibility(r: *const OrbitadmReport) -> OrbitadmAdmissibility {
    match (*r).report.admissibility.kind {
        Admissibility::NotAdmissible => OrbitadmAdmissibility::NotAdmissible,
        Admissibility::Admissible => OrbitadmAdmissibility::Admissible,
        Admissibility::ConjecturallyNotAdmissible => OrbitadmAdmissibility::ConjecturallyNotAdmissible,
    }
}

/// Whether the admissibility verdict is proved rather than conjectured.
///
/// # Safety
/// `r` must be a live report.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_report_established(r: *const OrbitadmReport) -> bool {
    (*r).report.admissibility.established
}

/// # Safety
/// `r` must be a live report.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_report_unimodular(r: *const OrbitadmReport) -> bool {
    (*r).report.admissibility.unimodular
}

/// Generic dimension of the subgroup orbits on the affine variety.
///
/// # Safety
/// `r` must be a live report.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_report_d_tau(r: *const OrbitadmReport) -> usize {
    (*r).report.spectral.d_tau
}

/// # Safety
/// `r` must be a live report.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_report_m(r: *const OrbitadmReport) -> usize {
    (*r).report.spectral.m
}

/// JSON rendering, owned by the report.
///
/// # Safety
/// `r` must be a live report.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_report_json(r: *const OrbitadmReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// `key: value` text rendering, owned by the report.
///
/// # Safety
/// `r` must be a live report.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_report_text(r: *const OrbitadmReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.text.as_ptr())
}

/// Exact rank of the moment matrix at the chart point `num[i] / den[i]`.
///
/// # Safety
/// `num` and `den` must hold `len` values; `out_rank` must be valid.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_rank_at(
    p: *const OrbitadmProblem,
    num: *const i64,
    den: *const i64,
    len: usize,
    out_rank: *mut usize,
) -> OrbitadmStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(null)?;
        if out_rank.is_null() {
            return Err(null());
        }
        let (d, x) = chart_point(p, num, den, len)?;
        let r = rank_at(&d, &x).map_err(|e| Failure(OrbitadmStatus::Input, e.to_string()))?;
        *out_rank = r;
        Ok(())
    })
}

/// Finite-difference Jacobian of the chart map at `num[i] / den[i]`.
/// Non-positive `step` or `rank_tol` select the defaults.
///
/// # Safety
/// `num` and `den` must hold `len` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn orbitadm_jacobian(
    p: *const OrbitadmProblem,
    num: *const i64,
    den: *const i64,
    len: usize,
    step: f64,
    rank_tol: f64,
    out: *mut OrbitadmJacobianSummary,
) -> OrbitadmStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let (d, x) = chart_point(p, num, den, len)?;
        let h = if step > 0.0 { step } else { DEFAULT_STEP };
        let tol = if rank_tol > 0.0 { rank_tol } else { DEFAULT_RANK_TOL };
        let j = fd_jacobian(&d, &x, h, tol).map_err(|e| Failure(OrbitadmStatus::Input, e.to_string()))?;
        *out = OrbitadmJacobianSummary {
            max_dev_topleft: j.max_dev_topleft,
            max_dev_topright: j.max_dev_topright,
            max_dev_bottomright: j.max_dev_bottomright,
            numerical_rank: j.numerical_rank_j,
            rank_m: j.rank_m,
            expected_rank: j.expected_rank,
        };
        Ok(())
    })
}
