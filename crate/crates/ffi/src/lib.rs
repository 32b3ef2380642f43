//! C ABI over the `danielewski` command runner and a surface handle.
//!
//! Every function returns a [`DnlStatus`]. Strings handed out by the library
//! are NUL-terminated UTF-8 and must be released with [`dnl_string_free`].
//! On failure, [`dnl_last_error`] describes the most recent error on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use danielewski::cli::{run_command_str, Options, Status};
use danielewski::json::{field_of, parse_field_str, surface_from_json};
use danielewski::standardize::hensel_standardize;
use danielewski::surfaces::{is_danielewski, SurfaceEquation};
use libc::c_char;
use serde_json::{json, Value};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DnlStatus {
    Ok = 0,
    /// Input could not be parsed.
    Malformed = 1,
    /// Input parsed but was rejected by the mathematics.
    Domain = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// A Rust panic was caught at the boundary.
    Panic = 5,
}

/// Opaque surface `x^h z - Q(x, y) = 0`.
pub struct DnlSurface {
    inner: SurfaceEquation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: DnlStatus, msg: impl Into<String>) -> DnlStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> DnlStatus) -> DnlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(DnlStatus::Panic, "panic inside danielewski"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, DnlStatus> {
    if p.is_null() {
        return Err(fail(DnlStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(DnlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out(out: *mut *mut c_char, s: String) -> DnlStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            DnlStatus::Ok
        }
        Err(_) => fail(DnlStatus::Panic, "output contained NUL"),
    }
}

fn parse_options(text: &str) -> Result<Options, String> {
    let mut opts = Options::default();
    if text.trim().is_empty() {
        return Ok(opts);
    }
    let v: Value = serde_json::from_str(text).map_err(|e| format!("options: {e}"))?;
    match v.get("field") {
        Some(Value::String(s)) => opts.field = parse_field_str(s).map_err(|e| e.to_string())?,
        Some(_) => opts.field = field_of(&v, opts.field).map_err(|e| e.to_string())?,
        None => {}
    }
    if let Some(n) = v.get("order").and_then(Value::as_u64) {
        opts.order = u32::try_from(n).map_err(|_| "options: order too large".to_string())?;
    }
    if let Some(b) = v.get("permissive_comb").and_then(Value::as_bool) {
        opts.permissive_comb = b;
    }
    if let Some(s) = v.get("seed").and_then(Value::as_u64) {
        opts.seed = s;
    }
    Ok(opts)
}

/// Runs a command (same names as `danielewski-lab`) on a JSON document.
/// `options_json` may be NULL or `{"field": "Fp:5", "order": 8,
/// "permissive_comb": false, "seed": 0}`. The envelope is written to `*out`
/// even when the status is `Malformed` or `Domain`.
///
/// # Safety
/// `command` and `input_json` must be valid NUL-terminated strings,
/// `options_json` NULL or such a string, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dnl_run(
    command: *const c_char,
    input_json: *const c_char,
    options_json: *const c_char,
    out: *mut *mut c_char,
) -> DnlStatus {
    guard(|| {
        if out.is_null() {
            return fail(DnlStatus::NullPointer, "out is NULL");
        }
        *out = ptr::null_mut();
        let command = match read_str(command, "command") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let input = match read_str(input_json, "input_json") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let opts = if options_json.is_null() {
            Options::default()
        } else {
            match read_str(options_json, "options_json").map(parse_options) {
                Ok(Ok(o)) => o,
                Ok(Err(msg)) => return fail(DnlStatus::Malformed, msg),
                Err(s) => return s,
            }
        };
        let outcome = run_command_str(command, input, &opts);
        let written = write_out(out, outcome.envelope.to_string());
        if written != DnlStatus::Ok {
            return written;
        }
        match outcome.status {
            Status::Ok => DnlStatus::Ok,
            Status::Malformed => fail(DnlStatus::Malformed, message_of(&outcome.envelope)),
            Status::Rejected => fail(DnlStatus::Domain, message_of(&outcome.envelope)),
        }
    })
}

fn message_of(envelope: &Value) -> String {
    format!(
        "{}: {}",
        envelope["error"].as_str().unwrap_or("error"),
        envelope["message"].as_str().unwrap_or("")
    )
}

/// Message for the last failing call on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn dnl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dnl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn dnl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `{"h": 2, "Q": "(1-x)*(y^2-1)", "field": ...}` into a new handle.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dnl_surface_new(json: *const c_char, out: *mut *mut DnlSurface) -> DnlStatus {
    guard(|| {
        if out.is_null() {
            return fail(DnlStatus::NullPointer, "out is NULL");
        }
        *out = ptr::null_mut();
        let text = match read_str(json, "json") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let doc: Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => return fail(DnlStatus::Malformed, format!("invalid JSON: {e}")),
        };
        match surface_from_json(&doc, Options::default().field) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(DnlSurface { inner }));
                DnlStatus::Ok
            }
            Err(e) => fail(DnlStatus::Malformed, e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be NULL or a handle from [`dnl_surface_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dnl_surface_free(s: *mut DnlSurface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Writes the number of roots of `Q(0, y)` to `*r`, or fails with `Domain`
/// when the surface is not a Danielewski surface.
///
/// # Safety
/// `s` must be a live handle and `r` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dnl_surface_is_danielewski(s: *const DnlSurface, r: *mut usize) -> DnlStatus {
    guard(|| {
        if s.is_null() || r.is_null() {
            return fail(DnlStatus::NullPointer, "NULL argument");
        }
        let surf = &(*s).inner;
        match is_danielewski(surf.h, &surf.q) {
            Ok(rep) => {
                *r = rep.r;
                DnlStatus::Ok
            }
            Err(e) => fail(DnlStatus::Domain, format!("{}: {e}", e.kind())),
        }
    })
}

/// Writes `{"h", "sigma", "R1", "R2"}` as JSON to `*out`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dnl_surface_standardize(s: *const DnlSurface, out: *mut *mut c_char) -> DnlStatus {
    guard(|| {
        if s.is_null() || out.is_null() {
            return fail(DnlStatus::NullPointer, "NULL argument");
        }
        *out = ptr::null_mut();
        let surf = &(*s).inner;
        match hensel_standardize(surf.h, &surf.q) {
            Ok(d) => {
                use danielewski::json::{bipoly_json, field_to_json, xpoly_json};
                let mut doc = field_to_json(surf.field());
                doc["h"] = json!(d.h);
                doc["sigma"] = d.sigma.iter().map(xpoly_json).collect();
                doc["R1"] = bipoly_json(&d.r1);
                doc["R2"] = bipoly_json(&d.r2);
                write_out(out, doc.to_string())
            }
            Err(e) => fail(DnlStatus::Domain, format!("{}: {e}", e.kind())),
        }
    })
}
