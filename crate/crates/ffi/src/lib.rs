//! C ABI over the kmink engine.
//!
//! Values are opaque [`KminkValue`] handles owned by the caller and released
//! with [`kmink_value_free`]. Strings returned by the library are released
//! with [`kmink_string_free`]. Every fallible call returns a [`KminkStatus`];
//! the message of the most recent failure on the calling thread is available
//! from [`kmink_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kmink::action::act;
use kmink::suites::{run_suite, SuiteOptions};
use kmink::{eval_str, KminkError, Value};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KminkStatus {
    Ok = 0,
    /// Null pointer or invalid UTF-8 argument.
    InvalidArgument = 1,
    SyntaxError = 2,
    UnknownSymbol = 3,
    IndexOutOfRange = 4,
    TypeError = 5,
    NotUnitary = 6,
    NonInvertibleCharge = 7,
    ConfigError = 8,
    UnknownSuite = 9,
    IoError = 10,
    /// The verification ran and at least one asserted identity failed.
    VerificationFailed = 11,
    /// Internal error; the library caught a panic.
    Internal = 12,
}

impl From<&KminkError> for KminkStatus {
    fn from(e: &KminkError) -> Self {
        match e {
            KminkError::Syntax { .. } => KminkStatus::SyntaxError,
            KminkError::UnknownSymbol { .. } => KminkStatus::UnknownSymbol,
            KminkError::IndexOutOfRange { .. } => KminkStatus::IndexOutOfRange,
            KminkError::Type(_) => KminkStatus::TypeError,
            KminkError::NotUnitary(_) => KminkStatus::NotUnitary,
            KminkError::NonInvertibleCharge(_) => KminkStatus::NonInvertibleCharge,
            KminkError::Config { .. } => KminkStatus::ConfigError,
            KminkError::UnknownSuite(_) => KminkStatus::UnknownSuite,
            KminkError::Io(_) => KminkStatus::IoError,
        }
    }
}

/// Opaque evaluated expression.
pub struct KminkValue {
    value: Value,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(KminkStatus, String);

impl From<KminkError> for Failure {
    fn from(e: KminkError) -> Self {
        Failure(KminkStatus::from(&e), e.to_string())
    }
}

fn invalid(what: &str) -> Failure {
    Failure(KminkStatus::InvalidArgument, what.to_string())
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KminkStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KminkStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal error".into());
            KminkStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(invalid(&format!("{} is null", what)));
    }
    CStr::from_ptr(s).to_str().map_err(|_| invalid(&format!("{} is not valid UTF-8", what)))
}

unsafe fn read_value<'a>(v: *const KminkValue, what: &str) -> Result<&'a Value, Failure> {
    v.as_ref().map(|h| &h.value).ok_or_else(|| invalid(&format!("{} is null", what)))
}

unsafe fn store_value(out: *mut *mut KminkValue, value: Value) -> Result<(), Failure> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    *out = Box::into_raw(Box::new(KminkValue { value }));
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Parses and evaluates `text`, storing a new handle in `*out`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmink_parse_eval(text: *const c_char, out: *mut *mut KminkValue) -> KminkStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        store_value(out, eval_str(text)?)
    })
}

/// Canonical rendering of `value`; parse and evaluate it to get the value
/// back. Returns null on a null handle. Free with [`kmink_string_free`].
///
/// # Safety
/// `value` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kmink_value_render(value: *const KminkValue) -> *mut c_char {
    let mut rendered = ptr::null_mut();
    guard(|| {
        rendered = into_c_string(read_value(value, "value")?.to_string());
        Ok(())
    });
    rendered
}

/// `*out = a + b`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmink_value_add(a: *const KminkValue, b: *const KminkValue, out: *mut *mut KminkValue) -> KminkStatus {
    guard(|| store_value(out, read_value(a, "a")?.add(read_value(b, "b")?)?))
}

/// `*out = a * b` in normal order.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmink_value_mul(a: *const KminkValue, b: *const KminkValue, out: *mut *mut KminkValue) -> KminkStatus {
    guard(|| store_value(out, read_value(a, "a")?.mul(read_value(b, "b")?)?))
}

/// `*out = momentum ▷ element`.
///
/// # Safety
/// `momentum` and `element` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmink_value_act(
    momentum: *const KminkValue,
    element: *const KminkValue,
    out: *mut *mut KminkValue,
) -> KminkStatus {
    guard(|| {
        let p = read_value(momentum, "momentum")?.as_momentum()?;
        let a = read_value(element, "element")?.as_position()?;
        store_value(out, Value::position(&act(&p, &a)))
    })
}

/// `*out = d(value)`.
///
/// # Safety
/// `value` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmink_value_d(value: *const KminkValue, out: *mut *mut KminkValue) -> KminkStatus {
    guard(|| store_value(out, read_value(value, "value")?.d()?))
}

/// `*out = star(value)`.
///
/// # Safety
/// `value` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmink_value_star(value: *const KminkValue, out: *mut *mut KminkValue) -> KminkStatus {
    guard(|| store_value(out, read_value(value, "value")?.star()?))
}

/// 1 if both handles hold equal values, 0 otherwise (including null).
///
/// # Safety
/// `a` and `b` must be null or live handles.
#[no_mangle]
pub unsafe extern "C" fn kmink_value_equal(a: *const KminkValue, b: *const KminkValue) -> i32 {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => i32::from(a.value == b.value),
        _ => 0,
    }
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `value` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kmink_value_free(value: *mut KminkValue) {
    if !value.is_null() {
        drop(Box::from_raw(value));
    }
}

/// Runs a verification suite and stores its JSON-lines report in `*json`
/// (timings omitted, so output is reproducible). Returns
/// `VerificationFailed` when an asserted identity fails; the report is
/// still stored.
///
/// # Safety
/// `suite` must be a valid NUL-terminated string and `json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmink_verify(suite: *const c_char, seed: u64, max_degree: u32, json: *mut *mut c_char) -> KminkStatus {
    guard(|| {
        let suite = read_str(suite, "suite")?;
        if json.is_null() {
            return Err(invalid("output pointer is null"));
        }
        let report = run_suite(suite, &SuiteOptions::new(seed, max_degree))?;
        *json = into_c_string(report.to_json_lines(false));
        if report.all_passed() {
            Ok(())
        } else {
            Err(Failure(KminkStatus::VerificationFailed, format!("{} identities failed", report.failures())))
        }
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kmink_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn kmink_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
