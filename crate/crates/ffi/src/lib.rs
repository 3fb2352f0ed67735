//! C ABI for `motzkin-core`.
//!
//! Objects cross the boundary as opaque handles ([`MzSpec`], [`MzPoly`]) that
//! the caller releases with the matching `*_free` function. Strings returned
//! through `char **` out-parameters are owned by the caller and released with
//! [`mz_string_free`]. Every function returns an [`MzStatus`]; on failure a
//! message is available from [`mz_last_error_message`] on the same thread.
//!
//! Set arguments are literals such as `"{1,4}"` or `"{2*r+1}"`; a null
//! pointer stands for the empty set.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use motzkin_core::algebra::format::to_json;
use motzkin_core::algebra::{format_bivariate, parse_bivariate, series_vanishes, MPoly, Series, P_VAR, X_VAR};
use motzkin_core::dp::seq_abcde;
use motzkin_core::guess::{guess_algebraic, verify_guess, GuessConfig, GuessError};
use motzkin_core::oracle;
use motzkin_core::symbolic::{self, SymbolicError};
use motzkin_core::{RestrictionSpec, StepSet};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MzStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A set literal or polynomial failed to parse.
    Parse = 3,
    /// The request is outside what the chosen route supports.
    Rejected = 4,
    /// Not enough terms for the requested degree bounds.
    InsufficientTerms = 5,
    /// No polynomial within the degree bounds.
    NotFound = 6,
    /// Routes disagree or an internal check failed.
    Inconsistent = 7,
    /// A Rust panic was caught at the boundary.
    Panic = 8,
}

/// Restriction sets A (peak heights), B (valley heights), C, D, E (up, down
/// and flat run lengths).
pub struct MzSpec {
    spec: RestrictionSpec,
}

/// A polynomial in `P` and `x`.
pub struct MzPoly {
    poly: MPoly,
    minimal: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).expect("no interior nul"));
}

struct Failure(MzStatus, String);

impl Failure {
    fn new(status: MzStatus, msg: impl ToString) -> Self {
        Failure(status, msg.to_string())
    }
}

impl From<SymbolicError> for Failure {
    fn from(e: SymbolicError) -> Self {
        let status = match e {
            SymbolicError::StateCap(_) | SymbolicError::Dp(_) => MzStatus::Rejected,
            SymbolicError::Guess(_) => MzStatus::InsufficientTerms,
            SymbolicError::Algebra(_) | SymbolicError::Inconsistent(_) => MzStatus::Inconsistent,
        };
        Failure::new(status, e)
    }
}

/// Runs `f` behind a panic guard and records any failure.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MzStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside motzkin-core");
            MzStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<Option<&'a str>, Failure> {
    if s.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(s)
        .to_str()
        .map(Some)
        .map_err(|e| Failure::new(MzStatus::InvalidUtf8, e))
}

unsafe fn read_set(s: *const c_char) -> Result<StepSet, Failure> {
    match read_str(s)? {
        None => Ok(StepSet::empty()),
        Some(text) => text.parse().map_err(|e| Failure::new(MzStatus::Parse, e)),
    }
}

unsafe fn spec_ref<'a>(spec: *const MzSpec) -> Result<&'a RestrictionSpec, Failure> {
    spec.as_ref()
        .map(|s| &s.spec)
        .ok_or_else(|| Failure::new(MzStatus::NullArgument, "null spec"))
}

unsafe fn poly_ref<'a>(poly: *const MzPoly) -> Result<&'a MzPoly, Failure> {
    poly.as_ref()
        .ok_or_else(|| Failure::new(MzStatus::NullArgument, "null polynomial"))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(MzStatus::NullArgument, "null out-parameter"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(MzStatus::NullArgument, "null out-parameter"));
    }
    *out = CString::new(text)
        .map_err(|e| Failure::new(MzStatus::Inconsistent, e))?
        .into_raw();
    Ok(())
}

fn join<T: ToString>(terms: &[T]) -> String {
    terms.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mz_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a restriction spec from five set literals (null = empty set).
///
/// # Safety
/// Non-null strings must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_spec_new(
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    d: *const c_char,
    e: *const c_char,
    out: *mut *mut MzSpec,
) -> MzStatus {
    guard(|| {
        let spec = RestrictionSpec::new(read_set(a)?, read_set(b)?, read_set(c)?, read_set(d)?, read_set(e)?);
        write_out(out, MzSpec { spec })
    })
}

/// # Safety
/// `spec` must come from [`mz_spec_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mz_spec_free(spec: *mut MzSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// `a(0..=n)` from the numeric recurrences, comma-separated.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_seq(spec: *const MzSpec, n: usize, out: *mut *mut c_char) -> MzStatus {
    guard(|| {
        let terms = seq_abcde(spec_ref(spec)?, n).map_err(|e| Failure::new(MzStatus::Rejected, e))?;
        write_string(out, join(&terms))
    })
}

/// `a(0..=n)` by exhaustive enumeration, comma-separated. Fails with
/// `Rejected` above the enumeration guard.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_oracle(spec: *const MzSpec, n: usize, out: *mut *mut c_char) -> MzStatus {
    guard(|| {
        let terms = oracle::sequence(n, spec_ref(spec)?).map_err(|e| Failure::new(MzStatus::Rejected, e))?;
        write_string(out, join(&terms))
    })
}

/// Symbolic polynomial for forbidden peak heights `a` and valley heights `b`.
///
/// # Safety
/// Non-null strings must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_fab(a: *const c_char, b: *const c_char, out: *mut *mut MzPoly) -> MzStatus {
    guard(|| {
        let sol = symbolic::fab(&read_set(a)?, &read_set(b)?)?;
        write_out(out, MzPoly { poly: sol.polynomial, minimal: sol.minimal })
    })
}

/// Symbolic polynomial for forbidden up, down and flat run lengths.
///
/// # Safety
/// Non-null strings must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_fcde(
    c: *const c_char,
    d: *const c_char,
    e: *const c_char,
    out: *mut *mut MzPoly,
) -> MzStatus {
    guard(|| {
        let sol = symbolic::fcde(&read_set(c)?, &read_set(d)?, &read_set(e)?)?;
        write_out(out, MzPoly { poly: sol.polynomial, minimal: sol.minimal })
    })
}

/// Fits a polynomial with degrees at most `(maxp, maxx)` to `a(0..=n)` and
/// confirms it on ten further terms.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_guess(
    spec: *const MzSpec,
    n: usize,
    maxp: usize,
    maxx: usize,
    out: *mut *mut MzPoly,
) -> MzStatus {
    guard(|| {
        let spec = spec_ref(spec)?;
        let terms = seq_abcde(spec, n).map_err(|e| Failure::new(MzStatus::Rejected, e))?;
        let found = guess_algebraic(&terms, &GuessConfig::new(maxp, maxx)).map_err(|e| match e {
            GuessError::InsufficientTerms { .. } => Failure::new(MzStatus::InsufficientTerms, e),
            GuessError::ZeroPDegree => Failure::new(MzStatus::Rejected, e),
        })?;
        let f = found.ok_or_else(|| Failure::new(MzStatus::NotFound, "no polynomial within the bounds"))?;
        let confirmed = verify_guess(&f, spec, terms.len(), 10).map_err(|e| Failure::new(MzStatus::Rejected, e))?;
        if !confirmed {
            return Err(Failure::new(MzStatus::NotFound, "guess not confirmed by further terms"));
        }
        write_out(out, MzPoly { poly: f, minimal: true })
    })
}

/// Parses a polynomial in `P` and `x`, e.g. `"x^2*P^2 + (x-1)*P + 1"`.
///
/// # Safety
/// `text` must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_poly_parse(text: *const c_char, out: *mut *mut MzPoly) -> MzStatus {
    guard(|| {
        let text = read_str(text)?.ok_or_else(|| Failure::new(MzStatus::NullArgument, "null text"))?;
        let poly = parse_bivariate(text).map_err(|e| Failure::new(MzStatus::Parse, e))?;
        write_out(out, MzPoly { poly, minimal: false })
    })
}

/// # Safety
/// `poly` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mz_poly_free(poly: *mut MzPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Canonical text form.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_poly_to_string(poly: *const MzPoly, out: *mut *mut c_char) -> MzStatus {
    guard(|| write_string(out, format_bivariate(&poly_ref(poly)?.poly)))
}

/// JSON document (`"schema": "motzkin-autocount/1"`).
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_poly_to_json(poly: *const MzPoly, out: *mut *mut c_char) -> MzStatus {
    guard(|| {
        let doc = serde_json::to_string(&to_json(&poly_ref(poly)?.poly))
            .map_err(|e| Failure::new(MzStatus::Inconsistent, e))?;
        write_string(out, doc)
    })
}

/// Degree in `P` (`var` = 0) or `x` (`var` = 1); -1 for a null handle or an
/// unknown variable.
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mz_poly_degree(poly: *const MzPoly, var: c_int) -> c_int {
    let Some(p) = poly.as_ref() else { return -1 };
    match var {
        0 => p.poly.degree(P_VAR) as c_int,
        1 => p.poly.degree(X_VAR) as c_int,
        _ => -1,
    }
}

/// 1 when the polynomial was certified minimal by the symbolic route or is a
/// confirmed guess, 0 otherwise (including parsed polynomials and null).
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mz_poly_is_minimal(poly: *const MzPoly) -> c_int {
    poly.as_ref().map_or(0, |p| c_int::from(p.minimal))
}

/// 1 when both handles hold the same polynomial, 0 otherwise.
///
/// # Safety
/// Both pointers must be null or live handles.
#[no_mangle]
pub unsafe extern "C" fn mz_poly_equal(a: *const MzPoly, b: *const MzPoly) -> c_int {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => c_int::from(a.poly == b.poly),
        _ => 0,
    }
}

/// Sets `*out` to 1 when the polynomial vanishes on `a(0..=n)` of `spec`
/// (numeric recurrences), else 0.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_poly_vanishes_on(
    poly: *const MzPoly,
    spec: *const MzSpec,
    n: usize,
    out: *mut c_int,
) -> MzStatus {
    guard(|| {
        let p = poly_ref(poly)?;
        let terms = seq_abcde(spec_ref(spec)?, n).map_err(|e| Failure::new(MzStatus::Rejected, e))?;
        if out.is_null() {
            return Err(Failure::new(MzStatus::NullArgument, "null out-parameter"));
        }
        *out = c_int::from(series_vanishes(&p.poly, &Series::from_counts(&terms)));
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn error_message_round_trip() {
        set_error("boom");
        let msg = unsafe { CStr::from_ptr(mz_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "boom");
        set_error("with\0nul");
        let msg = unsafe { CStr::from_ptr(mz_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "with nul");
    }

    #[test]
    fn panics_are_contained() {
        let status = guard(|| panic!("inside"));
        assert_eq!(status, MzStatus::Panic);
    }

    #[test]
    fn null_out_parameter() {
        let status = unsafe { mz_fab(ptr::null(), ptr::null(), ptr::null_mut()) };
        assert_eq!(status, MzStatus::NullArgument);
    }
}
