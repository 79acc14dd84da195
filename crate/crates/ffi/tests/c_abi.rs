use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use folnewt_ffi::*;

const WORKED: &str = r#"{"divisor":["x1","x2"],"form":{"x1":"x2","x2":"x1"}}"#;
const DEGENERATE: &str = r#"{"divisor":["x1","x2"],"form":{"x1":"x1 - x2","x2":"2*x1 - 2*x2 + x1^2"}}"#;

fn load(json: &str) -> *mut FolnewtSpace {
    let c = CString::new(json).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { folnewt_space_from_json(c.as_ptr(), &mut out) };
    assert_eq!(st, FolnewtStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> Option<String> {
    let p = folnewt_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn verdicts_through_the_abi() {
    let w = load(WORKED);
    let d = load(DEGENERATE);
    unsafe {
        assert_eq!(folnewt_space_divisor_len(w), 2);
        for route in [FolnewtRoute::Direct, FolnewtRoute::Theorem] {
            assert_eq!(folnewt_check_nnd(w, route, ptr::null()), FolnewtStatus::Ok);
            assert_eq!(folnewt_check_nnd(d, route, ptr::null()), FolnewtStatus::Negative);
        }
        folnewt_space_free(w);
        folnewt_space_free(d);
    }
}

#[test]
fn reports_are_json() {
    let d = load(DEGENERATE);
    let mut report = ptr::null_mut();
    let st = unsafe { folnewt_run(d, FolnewtCommand::Equiv, ptr::null(), &mut report) };
    assert_eq!(st, FolnewtStatus::Negative);
    let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_owned();
    unsafe {
        folnewt_string_free(report);
        folnewt_space_free(d);
    }
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["agreement"], "agree");
    assert_eq!(v["verdicts"]["direct"]["outcome"], "degenerate");
}

#[test]
fn errors_are_reported() {
    let bad = CString::new(r#"{"divisor":["x"],"form":{"x":"0"}}"#).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { folnewt_space_from_json(bad.as_ptr(), &mut out) };
    assert_eq!(st, FolnewtStatus::InvalidInput);
    assert!(out.is_null());
    assert!(last_error().unwrap().contains("zero"));

    assert_eq!(unsafe { folnewt_space_from_json(ptr::null(), &mut out) }, FolnewtStatus::NullArgument);
    assert_eq!(
        unsafe { folnewt_check_nnd(ptr::null(), FolnewtRoute::Direct, ptr::null()) },
        FolnewtStatus::NullArgument
    );

    let w = load(WORKED);
    let mut opts = folnewt_options_default();
    opts.fuel_spairs = 0;
    assert_eq!(
        unsafe { folnewt_check_nnd(w, FolnewtRoute::Direct, &opts) },
        FolnewtStatus::InvalidArgument
    );
    opts = folnewt_options_default();
    opts.fuel_blowups = 0;
    assert_eq!(
        unsafe { folnewt_check_nnd(w, FolnewtRoute::Theorem, &opts) },
        FolnewtStatus::Undetermined
    );
    assert!(last_error().unwrap().contains("budget"));
    unsafe { folnewt_space_free(w) };
    unsafe { folnewt_space_free(ptr::null_mut()) };
    unsafe { folnewt_string_free(ptr::null_mut()) };
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(folnewt_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib_dir = target_dir();
    let staticlib = lib_dir.join("libfolnewt_ffi.a");
    if !staticlib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let out_dir = tempfile::tempdir().unwrap();
    let exe = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests").join("smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "{stdout}{}", String::from_utf8_lossy(&run.stderr));
    assert!(stdout.contains("worked: 0"), "{stdout}");
    assert!(stdout.contains("degenerate: 1"), "{stdout}");
}
