//! C ABI over `gaussdiag`.
//!
//! Diagrams and traces are opaque heap handles owned by the caller and
//! released with [`gd_diagram_free`] / [`gd_trace_free`]. Strings returned by
//! the library are NUL-terminated, owned by the caller and released with
//! [`gd_string_free`]. Every fallible call returns a [`GdStatus`]; on failure
//! [`gd_last_error`] describes what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gaussdiag::{canonical_form, diagrams_equal, parse_gauss_code, serialize, Engine, Error, GaussDiagram, Trace};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GdStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidDiagram = 4,
    IllegalMove = 5,
    Internal = 6,
}

/// Opaque diagram handle.
pub struct GdDiagram(GaussDiagram);

/// Opaque trace handle.
pub struct GdTrace(Trace);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: GdStatus, message: impl Into<String>) -> GdStatus {
    set_error(message.into());
    status
}

fn status_of(e: &Error) -> GdStatus {
    match e {
        Error::Syntax { .. } | Error::TraceSyntax { .. } => GdStatus::Parse,
        Error::LabelCount { .. } | Error::LabelRole { .. } | Error::SignMismatch { .. } | Error::Invalid(_) => {
            GdStatus::InvalidDiagram
        }
        Error::IllegalMove { .. } | Error::IllegalStep { .. } | Error::UnknownChord(_) | Error::SameChord(_) => {
            GdStatus::IllegalMove
        }
        _ => GdStatus::Internal,
    }
}

fn from_error(e: Error) -> GdStatus {
    let status = status_of(&e);
    fail(status, e.to_string())
}

/// Runs `f`, turning a panic into `Internal`.
fn guard(f: impl FnOnce() -> GdStatus) -> GdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(GdStatus::Internal, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, GdStatus> {
    if s.is_null() {
        return Err(fail(GdStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(GdStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn diagram<'a>(d: *const GdDiagram) -> Result<&'a GaussDiagram, GdStatus> {
    d.as_ref().map(|d| &d.0).ok_or_else(|| fail(GdStatus::NullArgument, "null diagram handle"))
}

unsafe fn trace<'a>(t: *const GdTrace) -> Result<&'a Trace, GdStatus> {
    t.as_ref().map(|t| &t.0).ok_or_else(|| fail(GdStatus::NullArgument, "null trace handle"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> GdStatus {
    *out = Box::into_raw(Box::new(value));
    GdStatus::Ok
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> GdStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            GdStatus::Ok
        }
        Err(_) => fail(GdStatus::Internal, "string contains NUL"),
    }
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! check_out {
    ($out:expr) => {
        if $out.is_null() {
            return fail(GdStatus::NullArgument, "null output pointer");
        }
    };
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into the library on the same thread; do not free.
#[no_mangle]
pub extern "C" fn gd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a signed Gauss code into a new diagram.
///
/// # Safety
/// `code` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gd_diagram_parse(code: *const c_char, out: *mut *mut GdDiagram) -> GdStatus {
    guard(|| {
        check_out!(out);
        let code = try_ffi!(read_str(code));
        match parse_gauss_code(code) {
            Ok(d) => put(out, GdDiagram(d)),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `d` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gd_diagram_free(d: *mut GdDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Code read from the basepoint, chords relabelled by first occurrence.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gd_diagram_to_code(d: *const GdDiagram, out: *mut *mut c_char) -> GdStatus {
    guard(|| {
        check_out!(out);
        put_string(out, serialize(try_ffi!(diagram(d))))
    })
}

/// Rotation-minimal code.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gd_diagram_canonical(d: *const GdDiagram, out: *mut *mut c_char) -> GdStatus {
    guard(|| {
        check_out!(out);
        put_string(out, canonical_form(try_ffi!(diagram(d))))
    })
}

/// Writes 1 to `out` when the diagrams agree up to basepoint rotation, else 0.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gd_diagram_equal(a: *const GdDiagram, b: *const GdDiagram, out: *mut i32) -> GdStatus {
    guard(|| {
        check_out!(out);
        let (a, b) = (try_ffi!(diagram(a)), try_ffi!(diagram(b)));
        *out = i32::from(diagrams_equal(a, b));
        GdStatus::Ok
    })
}

/// Number of chords, or 0 for NULL.
///
/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gd_diagram_chord_count(d: *const GdDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.0.chord_count())
}

/// Sum of chord signs, or 0 for NULL.
///
/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gd_diagram_writhe(d: *const GdDiagram) -> i64 {
    d.as_ref().map_or(0, |d| gaussdiag::writhe(&d.0))
}

/// Sum of signs of chords crossed by an odd number of other chords, or 0 for
/// NULL.
///
/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gd_diagram_odd_writhe(d: *const GdDiagram) -> i64 {
    d.as_ref().map_or(0, |d| gaussdiag::odd_writhe(&d.0))
}

/// Trace taking `d` to the empty diagram, using the built-in variant table.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gd_unknot(d: *const GdDiagram, out: *mut *mut GdTrace) -> GdStatus {
    guard(|| {
        check_out!(out);
        let d = try_ffi!(diagram(d));
        put(out, GdTrace(Engine::default().unknot(d)))
    })
}

/// Trace taking `src` to `dst`.
///
/// # Safety
/// `src`, `dst` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gd_transform(
    src: *const GdDiagram,
    dst: *const GdDiagram,
    out: *mut *mut GdTrace,
) -> GdStatus {
    guard(|| {
        check_out!(out);
        let (src, dst) = (try_ffi!(diagram(src)), try_ffi!(diagram(dst)));
        match Engine::default().transform(src, dst) {
            Ok(t) => put(out, GdTrace(t)),
            Err(e) => from_error(e),
        }
    })
}

/// One step per line, in the trace file format.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gd_trace_to_text(t: *const GdTrace, out: *mut *mut c_char) -> GdStatus {
    guard(|| {
        check_out!(out);
        put_string(out, try_ffi!(trace(t)).to_string())
    })
}

/// Parses trace text; comment lines are ignored.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gd_trace_parse(text: *const c_char, out: *mut *mut GdTrace) -> GdStatus {
    guard(|| {
        check_out!(out);
        let text = try_ffi!(read_str(text));
        match text.parse::<Trace>() {
            Ok(t) => put(out, GdTrace(t)),
            Err(e) => from_error(e),
        }
    })
}

/// Replays `t` from `d`, checking each step, and returns the final diagram.
///
/// # Safety
/// `d`, `t` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gd_replay(d: *const GdDiagram, t: *const GdTrace, out: *mut *mut GdDiagram) -> GdStatus {
    guard(|| {
        check_out!(out);
        let (d, t) = (try_ffi!(diagram(d)), try_ffi!(trace(t)));
        match Engine::default().replay(d, t) {
            Ok(fin) => put(out, GdDiagram(fin)),
            Err(e) => from_error(e),
        }
    })
}

/// Number of steps, or 0 for NULL.
///
/// # Safety
/// `t` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gd_trace_len(t: *const GdTrace) -> usize {
    t.as_ref().map_or(0, |t| t.0.len())
}

/// # Safety
/// `t` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gd_trace_free(t: *mut GdTrace) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
