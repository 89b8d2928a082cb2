use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use bkptau_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    bkp_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(bkp_last_error()).to_str().unwrap().to_owned()
}

#[test]
fn q_lambda_round_trip() {
    unsafe {
        let mut q = ptr::null_mut();
        assert_eq!(bkp_q_lambda([2u32, 1].as_ptr(), 2, 3, false, &mut q), BkpStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(bkp_series_to_json(q, &mut json), BkpStatus::Ok);
        let text = take(json);
        assert_eq!(text, r#"{"alphabet":"T","cutoff":3,"terms":[{"mono":{"3":1},"coeff":"-4"},{"mono":{"1":3},"coeff":"4/3"}]}"#);

        let mut back = ptr::null_mut();
        assert_eq!(bkp_series_from_json(cs(&text).as_ptr(), &mut back), BkpStatus::Ok);
        let mut eq = false;
        assert_eq!(bkp_series_equal(q, back, &mut eq), BkpStatus::Ok);
        assert!(eq);

        let mut c = ptr::null_mut();
        assert_eq!(bkp_series_coeff(q, [1u32].as_ptr(), [3u32].as_ptr(), 1, &mut c), BkpStatus::Ok);
        assert_eq!(take(c), "4/3");
        let mut d = 0;
        assert_eq!(bkp_series_cutoff(q, &mut d), BkpStatus::Ok);
        assert_eq!(d, 3);
        bkp_series_free(q);
        bkp_series_free(back);
    }
}

#[test]
fn bgw_and_hypergeometric_agree() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(bkp_bgw_tau(cs("1/3").as_ptr(), cs("2/3").as_ptr(), 6, &mut a), BkpStatus::Ok);
        let u = cs("1/3");
        let us = [u.as_ptr()];
        let half = cs("1/2");
        let vals = [half.as_ptr()];
        let mut b = ptr::null_mut();
        let status = bkp_hypergeometric_tau(
            us.as_ptr(),
            1,
            ptr::null(),
            0,
            [1u32].as_ptr(),
            vals.as_ptr(),
            1,
            cs("2/3").as_ptr(),
            6,
            &mut b,
        );
        assert_eq!(status, BkpStatus::Ok);
        let mut eq = false;
        assert_eq!(bkp_series_equal(a, b, &mut eq), BkpStatus::Ok);
        assert!(eq);
        bkp_series_free(a);
        bkp_series_free(b);
    }
}

#[test]
fn hirota_through_the_abi() {
    unsafe {
        let mut tau = ptr::null_mut();
        assert_eq!(bkp_bgw_tau(cs("0").as_ptr(), cs("1").as_ptr(), 8, &mut tau), BkpStatus::Ok);
        let mut passed = false;
        let mut report = ptr::null_mut();
        assert_eq!(bkp_is_bkp_tau(tau, 4, 4, &mut passed, &mut report), BkpStatus::Ok);
        assert!(passed);
        assert!(take(report).contains("\"pass\""));
        assert_eq!(bkp_is_bkp_tau(tau, 5, 4, &mut passed, ptr::null_mut()), BkpStatus::InsufficientCutoff);
        assert!(last_error().contains("insufficient"));
        bkp_series_free(tau);

        let bad = cs(r#"{"alphabet":"T","cutoff":6,"terms":[{"mono":{},"coeff":"1"},{"mono":{"3":1},"coeff":"1"}]}"#);
        let mut f = ptr::null_mut();
        assert_eq!(bkp_series_from_json(bad.as_ptr(), &mut f), BkpStatus::Ok);
        assert_eq!(bkp_is_bkp_tau(f, 3, 3, &mut passed, ptr::null_mut()), BkpStatus::Ok);
        assert!(!passed);
        bkp_series_free(f);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(bkp_bgw_tau(ptr::null(), cs("1").as_ptr(), 4, &mut out), BkpStatus::NullPointer);
        assert_eq!(bkp_bgw_tau(cs("x").as_ptr(), cs("1").as_ptr(), 4, &mut out), BkpStatus::Parse);
        assert!(last_error().contains("invalid rational"));
        assert_eq!(bkp_q_lambda([1u32, 2].as_ptr(), 2, 3, false, &mut out), BkpStatus::InvalidArgument);
        assert_eq!(bkp_series_from_json(cs("{").as_ptr(), &mut out), BkpStatus::Parse);
        assert!(out.is_null());
        let w = cs("1/2");
        let ws = [w.as_ptr()];
        let status =
            bkp_hypergeometric_tau(ptr::null(), 0, ws.as_ptr(), 1, ptr::null(), ptr::null(), 0, cs("1").as_ptr(), 4, &mut out);
        assert_eq!(status, BkpStatus::InvalidArgument);

        let mut q = ptr::null_mut();
        assert_eq!(bkp_q_lambda(ptr::null(), 0, 2, true, &mut q), BkpStatus::Ok);
        assert!(bkp_last_error().is_null());
        let mut c = ptr::null_mut();
        assert_eq!(bkp_series_coeff(q, [2u32].as_ptr(), [1u32].as_ptr(), 1, &mut c), BkpStatus::InvalidArgument);
        bkp_series_free(q);
        bkp_series_free(ptr::null_mut());
        bkp_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_abi() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/bkptau.h")).unwrap();
    for name in [
        "bkp_bgw_tau",
        "bkp_hypergeometric_tau",
        "bkp_q_lambda",
        "bkp_series_from_json",
        "bkp_series_to_json",
        "bkp_series_coeff",
        "bkp_series_equal",
        "bkp_is_bkp_tau",
        "bkp_series_free",
        "bkp_string_free",
        "bkp_last_error",
        "typedef struct BkpSeries BkpSeries",
        "BKP_STATUS_INSUFFICIENT_CUTOFF = 5",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

/// Compiles `tests/c/smoke.c` against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let deps = std::env::current_exe().unwrap();
    let profile_dir = deps.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libbkptau_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("bkptau_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "ok\n");
}
