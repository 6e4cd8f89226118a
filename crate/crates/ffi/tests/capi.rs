use std::ffi::{CStr, CString};
use std::ptr;

use kmtower_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { km_string_free(p) };
    s
}

#[test]
fn gcm_and_roots() {
    let fam = CString::new("A2odd").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { km_gcm_affine(fam.as_ptr(), 3, &mut g) }, KmStatus::Ok);
    let mut n = 0;
    assert_eq!(unsafe { km_gcm_size(g, &mut n) }, KmStatus::Ok);
    assert_eq!(n, 4);
    let mut a = 0;
    assert_eq!(unsafe { km_gcm_entry(g, 2, 3, &mut a) }, KmStatus::Ok);
    assert_eq!(a, -2);
    assert_eq!(unsafe { km_gcm_entry(g, 9, 0, &mut a) }, KmStatus::InvalidArgument);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { km_gcm_classify(g, &mut json) }, KmStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["family"], "A2odd");
    assert_eq!(v["l"], 3);

    let mut set = ptr::null_mut();
    assert_eq!(unsafe { km_roots_enumerate(g, 4, 0, &mut set) }, KmStatus::Ok);
    let mut len = 0;
    assert_eq!(unsafe { km_roots_len(set, &mut len) }, KmStatus::Ok);
    assert!(len > 0 && len % 2 == 0);
    let mut found = false;
    let root = [0i64, 0, 2, 1];
    assert_eq!(unsafe { km_roots_contains(set, root.as_ptr(), 4, &mut found) }, KmStatus::Ok);
    assert!(found);
    let not_root = [0i64, 0, 1, 1, 0];
    assert_eq!(unsafe { km_roots_contains(set, not_root.as_ptr(), 5, &mut found) }, KmStatus::InvalidArgument);
    unsafe {
        km_roots_free(set);
        km_gcm_free(g);
    }
}

#[test]
fn errors_are_reported() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { km_gcm_affine(ptr::null(), 3, &mut g) }, KmStatus::NullPointer);
    let bad = CString::new(r#"{"size": 2, "matrix": [[2, -1], [0, 2]]}"#).unwrap();
    assert_eq!(unsafe { km_gcm_from_json(bad.as_ptr(), &mut g) }, KmStatus::InvalidArgument);
    let msg = unsafe { CStr::from_ptr(km_last_error()) }.to_str().unwrap();
    assert!(!msg.is_empty());
    let fam = CString::new("Z9").unwrap();
    assert_eq!(unsafe { km_gcm_affine(fam.as_ptr(), 3, &mut g) }, KmStatus::InvalidArgument);
    let mut n = 0;
    assert_eq!(unsafe { km_gcm_size(ptr::null(), &mut n) }, KmStatus::NullPointer);
    unsafe { km_string_free(ptr::null_mut()) };
}

#[test]
fn verify_json() {
    let check = CString::new("lemma-3.1").unwrap();
    let params = CString::new(r#"{"family": "A2odd", "l": 3}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { km_verify(check.as_ptr(), params.as_ptr(), &mut out) }, KmStatus::Ok);
    let text = take_string(out);
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["check_id"], "lemma-3.1");
    assert_eq!(lines[0]["status"], "pass");

    let check = CString::new("thm-3.5").unwrap();
    let params = CString::new(r#"{"m": 9, "n": 9}"#).unwrap();
    assert_eq!(unsafe { km_verify(check.as_ptr(), params.as_ptr(), &mut out) }, KmStatus::ResourceCap);
    unsafe { km_string_free(out) };

    let params = CString::new(r#"{"bogus": 1}"#).unwrap();
    assert_eq!(unsafe { km_verify(check.as_ptr(), params.as_ptr(), &mut out) }, KmStatus::InvalidArgument);
    let check = CString::new("nope").unwrap();
    assert_eq!(unsafe { km_verify(check.as_ptr(), ptr::null(), &mut out) }, KmStatus::InvalidArgument);
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/kmtower.h");
    let text = std::fs::read_to_string(header).unwrap();
    for sym in ["km_verify", "km_gcm_free", "km_string_free", "KM_STATUS_RESOURCE_CAP", "typedef struct KmGcm KmGcm"] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .status()
    else {
        eprintln!("no C compiler; skipped syntax check");
        return;
    };
    assert!(status.success());
}
