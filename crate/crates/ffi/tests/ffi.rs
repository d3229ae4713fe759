use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::ptr;

use massey_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    massey_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(massey_last_error()).to_str().unwrap().to_string()
}

unsafe fn kt() -> *mut MasseyModel {
    let mut m = ptr::null_mut();
    assert_eq!(massey_model_bundled(c("kodaira_thurston").as_ptr(), ptr::null(), &mut m), MasseyCode::Ok);
    m
}

#[test]
fn cohomology_through_a_handle() {
    unsafe {
        let m = kt();
        let dims: Vec<usize> = (0..=4)
            .map(|n| {
                let mut d = 0usize;
                assert_eq!(massey_cohomology_dim(m, n, &mut d), MasseyCode::Ok);
                d
            })
            .collect();
        assert_eq!(dims, [1, 3, 4, 3, 1]);
        let mut d = 0usize;
        assert_eq!(massey_cohomology_dim(m, 9, &mut d), MasseyCode::DegreeOutOfRange);
        assert!(last_error().contains("degree 9"));
        massey_model_free(m);
    }
}

#[test]
fn triple_verdicts_and_codes() {
    unsafe {
        let m = kt();
        let mut out = ptr::null_mut();
        let code = massey_triple(m, c("alpha").as_ptr(), c("alpha").as_ptr(), c("beta").as_ptr(), &mut out);
        assert_eq!(code, MasseyCode::Ok);
        let json = take(out);
        assert!(json.contains("\"essential\": \"Essential\""), "{json}");
        let code = massey_triple(m, c("alpha").as_ptr(), c("gamma").as_ptr(), c("gamma").as_ptr(), &mut out);
        assert_eq!(code, MasseyCode::Negative);
        assert!(take(out).contains("\"status\": \"Empty\""));
        let code = massey_triple(m, c("alpha").as_ptr(), c("nope").as_ptr(), c("beta").as_ptr(), &mut out);
        assert_eq!(code, MasseyCode::UnknownLabel);
        let code = massey_triple(m, c("x3").as_ptr(), c("alpha").as_ptr(), c("beta").as_ptr(), &mut out);
        assert_eq!(code, MasseyCode::NotACocycle);
        massey_model_free(m);
    }
}

#[test]
fn null_and_bad_input() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(massey_model_load_json(ptr::null(), &mut m), MasseyCode::NullPointer);
        assert_eq!(massey_model_load_json(c("{").as_ptr(), &mut m), MasseyCode::ParseError);
        assert!(last_error().starts_with("parse error at line"));
        let bad = r#"{"field": "F4", "generators": [], "truncation": 0}"#;
        assert_eq!(massey_model_load_json(c(bad).as_ptr(), &mut m), MasseyCode::InvalidModel);
        let ok = r#"{"field": "F5", "generators": [{"name": "t", "degree": 1}], "truncation": 1}"#;
        assert_eq!(massey_model_load_json(c(ok).as_ptr(), &mut m), MasseyCode::Ok);
        assert_eq!(last_error(), "");
        massey_model_free(m);
        massey_model_free(ptr::null_mut());
        massey_string_free(ptr::null_mut());
        assert_eq!(massey_triple(ptr::null(), ptr::null(), ptr::null(), ptr::null(), ptr::null_mut()), MasseyCode::NullPointer);
    }
}

#[test]
fn validate_reports_bad_differentials() {
    unsafe {
        let good = r#"{"field": "Q", "generators": [{"name": "a", "degree": 1}, {"name": "b", "degree": 1},
            {"name": "c", "degree": 1}], "differential": {"c": "a*b"}, "truncation": 3}"#;
        let mut out = ptr::null_mut();
        assert_eq!(massey_validate(c(good).as_ptr(), &mut out), MasseyCode::Ok);
        assert!(take(out).contains("\"verdict\": \"valid\""));
        let bad = good.replace("\"c\": \"a*b\"", "\"c\": \"a*b\", \"b\": \"a\"");
        assert_eq!(massey_validate(c(&bad).as_ptr(), &mut out), MasseyCode::Negative);
        assert!(take(out).contains("expected 2"));
    }
}

#[test]
fn certificate_round_trip() {
    unsafe {
        let m = kt();
        let mut cert = ptr::null_mut();
        let code = massey_blowup_certificate(
            m,
            3,
            c("full-triple").as_ptr(),
            c("alpha").as_ptr(),
            c("alpha").as_ptr(),
            c("beta").as_ptr(),
            ptr::null(),
            &mut cert,
        );
        assert_eq!(code, MasseyCode::Ok, "{}", last_error());
        let text = take(cert);
        let mut report = ptr::null_mut();
        assert_eq!(massey_certificate_verify(c(&text).as_ptr(), &mut report), MasseyCode::Ok);
        assert!(take(report).contains("\"verdict\": \"PASS\""));
        let tampered = text.replacen("\"value\": \"x1\"", "\"value\": \"2*x1\"", 1);
        assert_ne!(tampered, text);
        assert_eq!(massey_certificate_verify(c(&tampered).as_ptr(), &mut report), MasseyCode::Negative);
        assert!(take(report).contains("FAIL"));
        assert_eq!(massey_certificate_verify(c("[]").as_ptr(), &mut report), MasseyCode::CorruptCertificate);

        let code = massey_blowup_certificate(
            m,
            1,
            c("restricted-class").as_ptr(),
            c("alpha").as_ptr(),
            c("alpha").as_ptr(),
            c("beta").as_ptr(),
            ptr::null(),
            &mut cert,
        );
        assert_eq!(code, MasseyCode::HypothesisFailure);
        let code = massey_blowup_certificate(
            m,
            2,
            c("restricted-class").as_ptr(),
            c("alpha").as_ptr(),
            c("alpha").as_ptr(),
            c("beta").as_ptr(),
            c(r#"["0", "x1*x2*x3*x4"]"#).as_ptr(),
            &mut cert,
        );
        assert_eq!(code, MasseyCode::Ok, "{}", last_error());
        let text = take(cert);
        assert!(text.contains("x1*x2*x3*x4"));
        massey_model_free(m);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(massey_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_generated_and_parses_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/massey.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "massey_model_load_json",
        "massey_model_bundled",
        "massey_model_free",
        "massey_cohomology_dim",
        "massey_validate",
        "massey_triple",
        "massey_blowup_certificate",
        "massey_certificate_verify",
        "massey_string_free",
        "massey_last_error",
        "MASSEY_CODE_NEGATIVE",
        "typedef struct MasseyModel MasseyModel;",
    ] {
        assert!(text.contains(name), "{name} missing from the header");
    }
    // Syntax-check with the system C compiler when there is one.
    if let Ok(out) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .output()
    {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
