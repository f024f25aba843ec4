use std::ffi::{CStr, CString};
use std::ptr;

use kmink_ffi::*;

fn eval(text: &str) -> *mut KminkValue {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { kmink_parse_eval(c.as_ptr(), &mut out) };
    assert_eq!(status, KminkStatus::Ok, "{text}: {}", last_error());
    out
}

fn render(v: *const KminkValue) -> String {
    unsafe {
        let s = kmink_value_render(v);
        let out = CStr::from_ptr(s).to_str().unwrap().to_string();
        kmink_string_free(s);
        out
    }
}

fn last_error() -> String {
    let p = kmink_last_error();
    if p.is_null() {
        String::new()
    } else {
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }
}

#[test]
fn arithmetic_through_handles() {
    let x0 = eval("x0");
    let x1 = eval("x1");
    let mut ab = ptr::null_mut();
    let mut ba = ptr::null_mut();
    unsafe {
        assert_eq!(kmink_value_mul(x0, x1, &mut ab), KminkStatus::Ok);
        assert_eq!(kmink_value_mul(x1, x0, &mut ba), KminkStatus::Ok);
    }
    let minus = eval("-1");
    let mut neg = ptr::null_mut();
    let mut diff = ptr::null_mut();
    unsafe {
        assert_eq!(kmink_value_mul(minus, ba, &mut neg), KminkStatus::Ok);
        assert_eq!(kmink_value_add(ab, neg, &mut diff), KminkStatus::Ok);
    }
    assert_eq!(render(diff), "1i * kappa^-1 * x1");
    let expected = eval("i * kappa^-1 * x1");
    assert_eq!(unsafe { kmink_value_equal(diff, expected) }, 1);
    for v in [x0, x1, ab, ba, minus, neg, diff, expected] {
        unsafe { kmink_value_free(v) };
    }
}

#[test]
fn action_derivative_and_star() {
    let del = eval("del[0]");
    let a = eval("x0^2");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { kmink_value_act(del, a, &mut out) }, KminkStatus::Ok);
    let rendered = render(out);
    let back = eval(&rendered);
    assert_eq!(unsafe { kmink_value_equal(out, back) }, 1, "{rendered}");

    let mut form = ptr::null_mut();
    assert_eq!(unsafe { kmink_value_d(a, &mut form) }, KminkStatus::Ok);
    assert!(render(form).contains("tau[0]"));

    let w = eval("W[1]");
    let mut ws = ptr::null_mut();
    let mut prod = ptr::null_mut();
    unsafe {
        assert_eq!(kmink_value_star(w, &mut ws), KminkStatus::Ok);
        assert_eq!(kmink_value_mul(w, ws, &mut prod), KminkStatus::Ok);
    }
    assert_eq!(render(prod), "1");
    for v in [del, a, out, back, form, w, ws, prod] {
        unsafe { kmink_value_free(v) };
    }
}

#[test]
fn errors_map_to_status_codes() {
    let cases = [
        ("tau[9]", KminkStatus::IndexOutOfRange),
        ("x0 +", KminkStatus::SyntaxError),
        ("foo", KminkStatus::UnknownSymbol),
        ("act(x0, x1)", KminkStatus::TypeError),
    ];
    for (text, want) in cases {
        let c = CString::new(text).unwrap();
        let mut out = ptr::null_mut();
        let status = unsafe { kmink_parse_eval(c.as_ptr(), &mut out) };
        assert_eq!(status, want, "{text}");
        assert!(out.is_null());
        assert!(!last_error().is_empty());
    }
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { kmink_parse_eval(ptr::null(), &mut out) }, KminkStatus::InvalidArgument);
    let x = eval("x0");
    assert!(last_error().is_empty());
    let tau = eval("tau[1]");
    assert_eq!(unsafe { kmink_value_mul(tau, tau, &mut out) }, KminkStatus::TypeError);
    assert_eq!(unsafe { kmink_value_act(x, x, &mut out) }, KminkStatus::TypeError);
    assert!(unsafe { kmink_value_render(ptr::null()) }.is_null());
    unsafe {
        kmink_value_free(x);
        kmink_value_free(tau);
        kmink_value_free(ptr::null_mut());
        kmink_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_returns_deterministic_json() {
    let suite = CString::new("limit").unwrap();
    let run = || unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(kmink_verify(suite.as_ptr(), 5, 1, &mut json), KminkStatus::Ok);
        let s = CStr::from_ptr(json).to_str().unwrap().to_string();
        kmink_string_free(json);
        s
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a.lines().count(), 3);
    assert!(a.lines().all(|l| l.contains("\"status\":\"pass\"")));

    let bad = CString::new("nope").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { kmink_verify(bad.as_ptr(), 1, 1, &mut json) }, KminkStatus::UnknownSuite);
    assert!(json.is_null());
}
