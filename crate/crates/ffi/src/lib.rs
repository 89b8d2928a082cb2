//! C ABI over `bkptau`.
//!
//! Series are opaque `BkpSeries` handles owned by the caller and released with
//! `bkp_series_free`. Strings returned through out-parameters are released with
//! `bkp_string_free`. Every entry point returns a `BkpStatus`; on failure the
//! message is available from `bkp_last_error` on the same thread.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bkptau::hirota::is_bkp_tau;
use bkptau::qschur::{q_lambda, q_lambda_half};
use bkptau::rational::{format_rational, parse_rational};
use bkptau::tau::{bgw_tau, hypergeometric_tau, SSpec, TauSpec, WeightData};
use bkptau::{Error, GradedSeries, Mono, Rational, StrictPartition};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BkpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    InsufficientCutoff = 5,
    Math = 6,
    Panic = 7,
}

/// Opaque handle to a truncated graded series.
pub struct BkpSeries {
    inner: GradedSeries,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(BkpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => BkpStatus::Parse,
            Error::InsufficientCutoff { .. } | Error::InsufficientWindow { .. } => BkpStatus::InsufficientCutoff,
            Error::AlphabetMismatch(..)
            | Error::InvalidTimeIndex(_)
            | Error::NonStrict(_)
            | Error::ContentZero { .. }
            | Error::Unsupported(_) => BkpStatus::InvalidArgument,
            _ => BkpStatus::Math,
        };
        Failure(status, e.to_string())
    }
}

fn guard<F>(f: F) -> BkpStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BkpStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BkpStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    Failure(BkpStatus::NullPointer, format!("{name} is null"))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(BkpStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn rational(p: *const c_char, name: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(text(p, name)?)?)
}

unsafe fn rationals(p: *const *const c_char, len: usize, name: &str) -> Result<Vec<Rational>, Failure> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if p.is_null() {
        return Err(null(name));
    }
    std::slice::from_raw_parts(p, len).iter().map(|&s| rational(s, name)).collect()
}

unsafe fn slice<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(name));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn series<'a>(p: *const BkpSeries, name: &str) -> Result<&'a GradedSeries, Failure> {
    p.as_ref().map(|s| &s.inner).ok_or_else(|| null(name))
}

unsafe fn put_series(out: *mut *mut BkpSeries, f: GradedSeries) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(BkpSeries { inner: f }));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

/// The BGW tau-function `tau(t/2; N)` through weight `cutoff`.
///
/// # Safety
/// `n` and `hbar` are NUL-terminated rationals ("p/q" or integers); `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bkp_bgw_tau(
    n: *const c_char,
    hbar: *const c_char,
    cutoff: u32,
    out: *mut *mut BkpSeries,
) -> BkpStatus {
    guard(|| {
        let n = rational(n, "n")?;
        let hbar = rational(hbar, "hbar")?;
        put_series(out, bgw_tau(&n, &hbar, cutoff))
    })
}

/// The hypergeometric tau-function with weights `u`, `w` and specialized second
/// times `s[s_index[i]] = s_value[i]`, scaled by `hbar^k`.
///
/// # Safety
/// Each array holds the stated number of valid entries; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bkp_hypergeometric_tau(
    u: *const *const c_char,
    n_u: usize,
    w: *const *const c_char,
    n_w: usize,
    s_index: *const u32,
    s_value: *const *const c_char,
    n_s: usize,
    hbar: *const c_char,
    cutoff: u32,
    out: *mut *mut BkpSeries,
) -> BkpStatus {
    guard(|| {
        let weights = WeightData::new(rationals(u, n_u, "u")?, rationals(w, n_w, "w")?);
        let idx = slice(s_index, n_s, "s_index")?;
        let vals = rationals(s_value, n_s, "s_value")?;
        let s: BTreeMap<u32, Rational> = idx.iter().copied().zip(vals).collect();
        let spec = TauSpec { weights, s: SSpec::Specialized(s), hbar: rational(hbar, "hbar")?, cutoff };
        put_series(out, hypergeometric_tau(&spec)?)
    })
}

/// `Q_lambda(t)`, or `Q_lambda(t/2)` when `half` is true, through weight `cutoff`.
///
/// # Safety
/// `parts` holds `n_parts` entries; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bkp_q_lambda(
    parts: *const u32,
    n_parts: usize,
    cutoff: u32,
    half: bool,
    out: *mut *mut BkpSeries,
) -> BkpStatus {
    guard(|| {
        let lambda = StrictPartition::new(slice(parts, n_parts, "parts")?.to_vec())?;
        let f = if half { q_lambda_half(&lambda, cutoff) } else { q_lambda(&lambda, cutoff) };
        put_series(out, f)
    })
}

/// Parses the series JSON format.
///
/// # Safety
/// `json` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bkp_series_from_json(json: *const c_char, out: *mut *mut BkpSeries) -> BkpStatus {
    guard(|| put_series(out, GradedSeries::from_json_str(text(json, "json")?)?))
}

/// Canonical JSON of a series; release with `bkp_string_free`.
///
/// # Safety
/// `s` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bkp_series_to_json(s: *const BkpSeries, out: *mut *mut c_char) -> BkpStatus {
    guard(|| put_string(out, series(s, "series")?.to_json_string()))
}

/// Coefficient of `prod t_{index[i]}^{exponent[i]}` as a rational string.
///
/// # Safety
/// `s` is a live handle; the arrays hold `len` entries; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bkp_series_coeff(
    s: *const BkpSeries,
    index: *const u32,
    exponent: *const u32,
    len: usize,
    out: *mut *mut c_char,
) -> BkpStatus {
    guard(|| {
        let f = series(s, "series")?;
        let pairs: Vec<(u32, u32)> = slice(index, len, "index")?
            .iter()
            .copied()
            .zip(slice(exponent, len, "exponent")?.iter().copied())
            .collect();
        let m = Mono::from_pairs(&pairs)?;
        put_string(out, format_rational(&f.coeff(&m)))
    })
}

/// Weight cutoff of a series.
///
/// # Safety
/// `s` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bkp_series_cutoff(s: *const BkpSeries, out: *mut u32) -> BkpStatus {
    guard(|| {
        let c = series(s, "series")?.cutoff();
        out.as_mut().map(|o| *o = c).ok_or_else(|| null("out"))
    })
}

/// Exact equality, cutoffs included.
///
/// # Safety
/// `a`, `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bkp_series_equal(a: *const BkpSeries, b: *const BkpSeries, out: *mut bool) -> BkpStatus {
    guard(|| {
        let eq = series(a, "a")? == series(b, "b")?;
        out.as_mut().map(|o| *o = eq).ok_or_else(|| null("out"))
    })
}

/// Hirota check through bidegree `(dt, dt2)`; `report` (optional) receives the JSON report.
///
/// # Safety
/// `s` is a live handle; `passed` is writable; `report` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn bkp_is_bkp_tau(
    s: *const BkpSeries,
    dt: u32,
    dt2: u32,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> BkpStatus {
    guard(|| {
        let r = is_bkp_tau(series(s, "series")?, dt, dt2)?;
        *passed.as_mut().ok_or_else(|| null("passed"))? = r.passed();
        if !report.is_null() {
            put_string(report, r.to_json_string())?;
        }
        Ok(())
    })
}

/// # Safety
/// `s` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bkp_series_free(s: *mut BkpSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` is null or a string from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bkp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn bkp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}
