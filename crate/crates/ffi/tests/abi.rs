use std::ffi::{CStr, CString};
use std::ptr;

use danielewski_ffi::*;
use serde_json::Value;

fn run(cmd: &str, input: &str, opts: Option<&str>) -> (DnlStatus, Value) {
    let cmd = CString::new(cmd).unwrap();
    let input = CString::new(input).unwrap();
    let opts = opts.map(|o| CString::new(o).unwrap());
    let mut out = ptr::null_mut();
    let status = unsafe {
        dnl_run(
            cmd.as_ptr(),
            input.as_ptr(),
            opts.as_ref().map_or(ptr::null(), |o| o.as_ptr()),
            &mut out,
        )
    };
    assert!(!out.is_null());
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    unsafe { dnl_string_free(out) };
    (status, serde_json::from_str(&text).unwrap())
}

fn last_error() -> String {
    let p = dnl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn run_standardize() {
    let (status, env) = run("standardize", r#"{"h": 2, "Q": "(1-x)*(y^2-1)"}"#, None);
    assert_eq!(status, DnlStatus::Ok);
    assert_eq!(env["result"]["sigma"], serde_json::json!([{"1": "-1"}, {"1": "1"}]));
    assert!(dnl_last_error().is_null());
}

#[test]
fn options_select_the_field() {
    let (status, env) = run("standardize", r#"{"h": 1, "Q": "y^2-1"}"#, Some(r#"{"field": "Fp:5"}"#));
    assert_eq!(status, DnlStatus::Ok);
    assert_eq!(env["result"]["sigma"], serde_json::json!([{"1": 1}, {"1": 4}]));
}

#[test]
fn error_statuses() {
    let (status, env) = run("standardize", r#"{"h": 2, "Q": "y^2"}"#, None);
    assert_eq!(status, DnlStatus::Domain);
    assert_eq!(env["error"], "MultipleRoot");
    assert!(last_error().starts_with("MultipleRoot"));

    let (status, _) = run("standardize", "{not json", None);
    assert_eq!(status, DnlStatus::Malformed);

    let mut out = ptr::null_mut();
    let s = unsafe { dnl_run(ptr::null(), ptr::null(), ptr::null(), &mut out) };
    assert_eq!(s, DnlStatus::NullPointer);
    assert!(out.is_null());

    let bad = [0xffu8, 0];
    let input = CString::new("{}").unwrap();
    let s = unsafe { dnl_run(bad.as_ptr().cast(), input.as_ptr(), ptr::null(), &mut out) };
    assert_eq!(s, DnlStatus::InvalidUtf8);
}

#[test]
fn surface_handle() {
    let json = CString::new(r#"{"h": 2, "Q": "(1-x)*(y^2-1)"}"#).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dnl_surface_new(json.as_ptr(), &mut s) }, DnlStatus::Ok);
    let mut r = 0usize;
    assert_eq!(unsafe { dnl_surface_is_danielewski(s, &mut r) }, DnlStatus::Ok);
    assert_eq!(r, 2);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dnl_surface_standardize(s, &mut out) }, DnlStatus::Ok);
    let doc: Value = serde_json::from_str(unsafe { CStr::from_ptr(out) }.to_str().unwrap()).unwrap();
    unsafe { dnl_string_free(out) };
    assert_eq!(doc["R1"], serde_json::json!({"1": "1", "x": "-1"}));
    unsafe { dnl_surface_free(s) };

    let json = CString::new(r#"{"h": 1, "Q": "y^2"}"#).unwrap();
    assert_eq!(unsafe { dnl_surface_new(json.as_ptr(), &mut s) }, DnlStatus::Ok);
    assert_eq!(unsafe { dnl_surface_is_danielewski(s, &mut r) }, DnlStatus::Domain);
    unsafe { dnl_surface_free(s) };
    unsafe { dnl_surface_free(ptr::null_mut()) };
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(dnl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
