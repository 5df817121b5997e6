use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use gaussdiag_ffi::*;

fn parse(code: &str) -> *mut GdDiagram {
    let c = CString::new(code).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gd_diagram_parse(c.as_ptr(), &mut out) }, GdStatus::Ok);
    out
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { gd_string_free(s) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(gd_last_error()) }.to_str().unwrap().to_owned()
}

#[test]
fn parse_and_query() {
    let d = parse("U1+O1+");
    unsafe {
        assert_eq!(gd_diagram_chord_count(d), 1);
        assert_eq!(gd_diagram_writhe(d), 1);
        assert_eq!(gd_diagram_odd_writhe(d), 0);
        let mut s = ptr::null_mut();
        assert_eq!(gd_diagram_to_code(d, &mut s), GdStatus::Ok);
        assert_eq!(take_string(s), "U1+O1+");
        assert_eq!(gd_diagram_canonical(d, &mut s), GdStatus::Ok);
        assert_eq!(take_string(s), "O1+U1+");
        gd_diagram_free(d);
    }
    let vt = parse("O1+O2+U1+U2+");
    assert_eq!(unsafe { gd_diagram_odd_writhe(vt) }, 2);
    unsafe { gd_diagram_free(vt) };
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    let bad = CString::new("O1+X").unwrap();
    assert_eq!(unsafe { gd_diagram_parse(bad.as_ptr(), &mut out) }, GdStatus::Parse);
    assert!(out.is_null());
    assert!(!last_error().is_empty());
    let bad = CString::new("O1+O1+").unwrap();
    assert_eq!(unsafe { gd_diagram_parse(bad.as_ptr(), &mut out) }, GdStatus::InvalidDiagram);
    assert_eq!(unsafe { gd_diagram_parse(ptr::null(), &mut out) }, GdStatus::NullArgument);
    let mut eq = 0;
    assert_eq!(unsafe { gd_diagram_equal(ptr::null(), ptr::null(), &mut eq) }, GdStatus::NullArgument);
    assert_eq!(unsafe { gd_diagram_chord_count(ptr::null()) }, 0);

    let empty = parse("");
    let text = CString::new("FH 0").unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { gd_trace_parse(text.as_ptr(), &mut t) }, GdStatus::Ok);
    let mut fin = ptr::null_mut();
    assert_eq!(unsafe { gd_replay(empty, t, &mut fin) }, GdStatus::IllegalMove);
    assert!(last_error().starts_with("step 0 illegal"), "{}", last_error());
    let text = CString::new("FH").unwrap();
    let mut t2 = ptr::null_mut();
    assert_eq!(unsafe { gd_trace_parse(text.as_ptr(), &mut t2) }, GdStatus::Parse);
    unsafe {
        gd_trace_free(t);
        gd_diagram_free(empty);
    }
}

#[test]
fn transform_round_trip() {
    let src = parse("O1+U2+O3+U1+O2+U3+");
    let dst = parse("O1-O2+U1-U2+");
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(gd_transform(src, dst, &mut t), GdStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(gd_trace_to_text(t, &mut text), GdStatus::Ok);
        let text = take_string(text);
        assert_eq!(text.lines().count(), gd_trace_len(t));
        let c = CString::new(text).unwrap();
        let mut t2 = ptr::null_mut();
        assert_eq!(gd_trace_parse(c.as_ptr(), &mut t2), GdStatus::Ok);
        let mut fin = ptr::null_mut();
        assert_eq!(gd_replay(src, t2, &mut fin), GdStatus::Ok);
        let mut eq = 0;
        assert_eq!(gd_diagram_equal(fin, dst, &mut eq), GdStatus::Ok);
        assert_eq!(eq, 1);
        for p in [src, dst, fin] {
            gd_diagram_free(p);
        }
        gd_trace_free(t);
        gd_trace_free(t2);
    }
}

/// Compiles the C smoke test against the generated header and the static
/// library, when a C compiler and the archive are available.
#[test]
fn c_header_smoke() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap();
    let lib = profile_dir.join("libgaussdiag_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let out_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bin = out_dir.join("gaussdiag_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
