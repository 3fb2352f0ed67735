use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use motzkin_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { mz_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mz_last_error_message()) }.to_str().unwrap().to_owned()
}

fn spec(a: &str, b: &str, c: &str, d: &str, e: &str) -> *mut MzSpec {
    let lits: Vec<CString> = [a, b, c, d, e].iter().map(|s| CString::new(*s).unwrap()).collect();
    let mut out = ptr::null_mut();
    let status = unsafe {
        mz_spec_new(lits[0].as_ptr(), lits[1].as_ptr(), lits[2].as_ptr(), lits[3].as_ptr(), lits[4].as_ptr(), &mut out)
    };
    assert_eq!(status, MzStatus::Ok, "{}", last_error());
    out
}

fn poly_text(p: *const MzPoly) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mz_poly_to_string(p, &mut s) }, MzStatus::Ok);
    take_string(s)
}

#[test]
fn motzkin_numbers() {
    let s = spec("{}", "{}", "{}", "{}", "{}");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mz_seq(s, 10, &mut out) }, MzStatus::Ok);
    assert_eq!(take_string(out), "1,1,2,4,9,21,51,127,323,835,2188");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mz_oracle(s, 10, &mut out) }, MzStatus::Ok);
    assert_eq!(take_string(out), "1,1,2,4,9,21,51,127,323,835,2188");
    unsafe { mz_spec_free(s) };
}

#[test]
fn null_sets_are_empty() {
    let mut s = ptr::null_mut();
    let status = unsafe { mz_spec_new(ptr::null(), ptr::null(), ptr::null(), ptr::null(), ptr::null(), &mut s) };
    assert_eq!(status, MzStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mz_seq(s, 4, &mut out) }, MzStatus::Ok);
    assert_eq!(take_string(out), "1,1,2,4,9");
    unsafe { mz_spec_free(s) };
}

#[test]
fn bad_set_literal_reports_parse_error() {
    let bad = CString::new("{1,").unwrap();
    let mut s = ptr::null_mut();
    let status = unsafe { mz_spec_new(bad.as_ptr(), ptr::null(), ptr::null(), ptr::null(), ptr::null(), &mut s) };
    assert_eq!(status, MzStatus::Parse);
    assert!(s.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn fab_matches_unrestricted_quadratic() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mz_fab(ptr::null(), ptr::null(), &mut p) }, MzStatus::Ok);
    assert_eq!(poly_text(p), "x^2*P^2 + (x-1)*P + 1");
    assert_eq!(unsafe { mz_poly_degree(p, 0) }, 2);
    assert_eq!(unsafe { mz_poly_degree(p, 1) }, 2);
    assert_eq!(unsafe { mz_poly_degree(p, 7) }, -1);
    assert_eq!(unsafe { mz_poly_is_minimal(p) }, 1);

    let text = CString::new("1 + (x-1)*P + x^2*P^2").unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { mz_poly_parse(text.as_ptr(), &mut q) }, MzStatus::Ok);
    assert_eq!(unsafe { mz_poly_equal(p, q) }, 1);
    assert_eq!(unsafe { mz_poly_is_minimal(q) }, 0);
    unsafe {
        mz_poly_free(p);
        mz_poly_free(q);
    }
}

#[test]
fn fcde_odd_runs_vanish_on_the_sequence() {
    let odd = CString::new("{2*r+1}").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mz_fcde(odd.as_ptr(), odd.as_ptr(), odd.as_ptr(), &mut p) }, MzStatus::Ok);
    assert_eq!(poly_text(p), "x^4*P^2 + (x^2-1)*P + 1");
    let s = spec("{}", "{}", "{2*r+1}", "{2*r+1}", "{2*r+1}");
    let mut ok = 0;
    assert_eq!(unsafe { mz_poly_vanishes_on(p, s, 30, &mut ok) }, MzStatus::Ok);
    assert_eq!(ok, 1);
    unsafe {
        mz_poly_free(p);
        mz_spec_free(s);
    }
}

#[test]
fn json_document() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mz_fab(ptr::null(), ptr::null(), &mut p) }, MzStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mz_poly_to_json(p, &mut out) }, MzStatus::Ok);
    let doc = take_string(out);
    assert!(doc.contains("\"schema\":\"motzkin-autocount/1\""), "{doc}");
    assert!(doc.contains("\"text\":\"x^2*P^2 + (x-1)*P + 1\""), "{doc}");
    unsafe { mz_poly_free(p) };
}

#[test]
fn guess_found_and_not_found() {
    let s = spec("{}", "{}", "{}", "{}", "{}");
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mz_guess(s, 30, 2, 2, &mut p) }, MzStatus::Ok);
    assert_eq!(poly_text(p), "x^2*P^2 + (x-1)*P + 1");
    unsafe { mz_poly_free(p) };

    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mz_guess(s, 30, 1, 1, &mut p) }, MzStatus::NotFound);
    assert!(p.is_null());

    assert_eq!(unsafe { mz_guess(s, 6, 4, 4, &mut p) }, MzStatus::InsufficientTerms);
    assert!(last_error().contains("insufficient"));
    unsafe { mz_spec_free(s) };
}

#[test]
fn fab_accepts_zero_heights() {
    let one = CString::new("{1}").unwrap();
    let mut p = ptr::null_mut();
    let zero = CString::new("{0}").unwrap();
    assert_eq!(unsafe { mz_fab(zero.as_ptr(), one.as_ptr(), &mut p) }, MzStatus::Ok);
    unsafe { mz_poly_free(p) };
}

#[test]
fn null_handles() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mz_seq(ptr::null(), 3, &mut out) }, MzStatus::NullArgument);
    assert_eq!(unsafe { mz_poly_to_string(ptr::null(), &mut out) }, MzStatus::NullArgument);
    assert_eq!(unsafe { mz_poly_equal(ptr::null(), ptr::null()) }, 0);
    unsafe {
        mz_spec_free(ptr::null_mut());
        mz_poly_free(ptr::null_mut());
        mz_string_free(ptr::null_mut());
    }
}

#[test]
fn version_is_package_version() {
    let v = unsafe { CStr::from_ptr(mz_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/motzkin.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct MzSpec MzSpec;",
        "typedef struct MzPoly MzPoly;",
        "MZ_STATUS_OK = 0",
        "MZ_STATUS_NOT_FOUND",
        "mz_spec_new",
        "mz_seq",
        "mz_oracle",
        "mz_fab",
        "mz_fcde",
        "mz_guess",
        "mz_poly_to_json",
        "mz_last_error_message",
        "mz_string_free",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "motzkin.h"

int main(void) {
    MzPoly *p = NULL;
    char *text = NULL;
    if (mz_fab("{1,4}", "{1,3}", &p) != MZ_STATUS_OK) return 1;
    if (mz_poly_degree(p, 0) != 2) return 2;
    if (mz_poly_to_string(p, &text) != MZ_STATUS_OK) return 3;
    puts(text);
    mz_string_free(text);
    mz_poly_free(p);
    if (mz_fab("{1,", NULL, &p) != MZ_STATUS_PARSE) return 4;
    if (strlen(mz_last_error_message()) == 0) return 5;
    return 0;
}
"#;

#[test]
fn c_program_links_against_the_static_library() {
    // target/<profile>/deps/<this test> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libmotzkin_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());

    let dir = std::env::temp_dir().join(format!("motzkin-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let bin = dir.join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let printed = String::from_utf8(out.stdout).unwrap();
    let a = CString::new("{1,4}").unwrap();
    let b = CString::new("{1,3}").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mz_fab(a.as_ptr(), b.as_ptr(), &mut p) }, MzStatus::Ok);
    assert_eq!(printed.trim_end(), poly_text(p));
    unsafe { mz_poly_free(p) };
    std::fs::remove_dir_all(&dir).ok();
}
