use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use gop_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { gop_string_free(s) };
    out
}

fn parse(text: &str) -> Result<*mut GopOperator, i32> {
    let c = CString::new(text).unwrap();
    let mut h = ptr::null_mut();
    match unsafe { gop_operator_parse(c.as_ptr(), &mut h) } {
        GOP_OK => Ok(h),
        code => Err(code),
    }
}

#[test]
fn parse_print_free() {
    let h = parse("(1-z)*D^2 - D").unwrap();
    let mut order = 0usize;
    assert_eq!(unsafe { gop_operator_order(h, &mut order) }, GOP_OK);
    assert_eq!(order, 2);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gop_operator_to_string(h, &mut s) }, GOP_OK);
    let text = take(s);
    let h2 = parse(&text).unwrap();
    let mut s2 = ptr::null_mut();
    unsafe { gop_operator_to_string(h2, &mut s2) };
    assert_eq!(take(s2), text);
    unsafe {
        gop_operator_free(h);
        gop_operator_free(h2);
        gop_operator_free(ptr::null_mut());
    }
}

#[test]
fn error_codes() {
    assert_eq!(parse("D*theta").unwrap_err(), GOP_ERR_MIXED_BASIS);
    assert_eq!(parse("(z").unwrap_err(), GOP_ERR_PARSE);
    let msg = unsafe { CStr::from_ptr(gop_last_error_message()) }
        .to_str()
        .unwrap();
    assert!(msg.contains("parse"), "{msg}");
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { gop_operator_parse(ptr::null(), &mut h) },
        GOP_ERR_NULL_POINTER
    );
    let id = CString::new("nope").unwrap();
    assert_eq!(
        unsafe { gop_operator_from_catalog(id.as_ptr(), &mut h) },
        GOP_ERR_UNKNOWN_CATALOG_ID
    );
    let mut n = 0usize;
    assert_eq!(
        unsafe { gop_operator_order(ptr::null(), &mut n) },
        GOP_ERR_NULL_POINTER
    );
    let d = unsafe { CStr::from_ptr(gop_status_description(GOP_ERR_BAD_PRIME)) };
    assert_eq!(d.to_str().unwrap(), "bad prime");
}

#[test]
fn analysis_calls() {
    let id = CString::new("order1:1/2@1").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { gop_operator_from_catalog(id.as_ptr(), &mut h) },
        GOP_OK
    );
    let mut st = -1;
    assert_eq!(unsafe { gop_pcurvature_status(h, 3, &mut st) }, GOP_OK);
    assert_eq!(st, GOP_STATUS_NILPOTENT);
    assert_eq!(unsafe { gop_pcurvature_status(h, 2, &mut st) }, GOP_OK);
    assert_eq!(st, GOP_STATUS_BAD_PRIME);
    assert_eq!(
        unsafe { gop_pcurvature_status(h, 9, &mut st) },
        GOP_ERR_INVALID_ARGUMENT
    );
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gop_scan_json(h, 2, 20, &mut s) }, GOP_OK);
    assert!(take(s).contains("\"verdict\":\"AllGoodNilpotent\""));
    unsafe { gop_operator_free(h) };

    let h = parse("D - 1").unwrap();
    assert_eq!(unsafe { gop_pcurvature_status(h, 5, &mut st) }, GOP_OK);
    assert_eq!(st, GOP_STATUS_NON_NILPOTENT);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gop_classify_json(h, &mut s) }, GOP_OK);
    assert!(take(s).contains("\"fuchsian\":false"));
    unsafe { gop_operator_free(h) };
}

#[test]
fn cli_entry_point() {
    let args: Vec<CString> = ["classify", "theta^2 - 2"]
        .iter()
        .map(|a| CString::new(*a).unwrap())
        .collect();
    let ptrs: Vec<*const std::ffi::c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let mut out = ptr::null_mut();
    let mut code = -1;
    assert_eq!(
        unsafe { gop_cli_run(ptrs.len(), ptrs.as_ptr(), &mut out, &mut code) },
        GOP_OK
    );
    assert_eq!(code, 0);
    assert!(take(out).contains("\"katz_consistent\": false"));
}

fn target_dir() -> PathBuf {
    // .../target/<profile>/deps/c_abi-<hash>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libgop_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!(
            "skipping: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let out = std::env::temp_dir().join(format!("gop_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(root.join("tests/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    std::fs::remove_file(&out).ok();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
