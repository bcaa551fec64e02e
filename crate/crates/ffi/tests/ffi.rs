use std::ffi::{CStr, CString};
use std::ptr;

use schett_ffi::*;

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    schett_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = schett_last_error();
    assert!(!p.is_null(), "expected an error message");
    CStr::from_ptr(p).to_str().unwrap().to_owned()
}

#[test]
fn schett_poly_roundtrip() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(schett_poly_new(3, 2, &mut p), SchettStatus::Ok);
        assert!(schett_last_error().is_null());

        let mut s = ptr::null_mut();
        assert_eq!(schett_poly_to_latex(p, &mut s), SchettStatus::Ok);
        assert_eq!(take_string(s), "4x^2yz+y^3z+yz^3");

        assert_eq!(schett_poly_to_string(p, &mut s), SchettStatus::Ok);
        assert_eq!(take_string(s), "4*x^2*y*z + y^3*z + y*z^3");

        assert_eq!(schett_poly_to_json(p, &mut s), SchettStatus::Ok);
        let json = CString::new(take_string(s)).unwrap();
        let mut q = ptr::null_mut();
        assert_eq!(schett_poly_from_json(json.as_ptr(), &mut q), SchettStatus::Ok);
        let mut eq = false;
        assert_eq!(schett_poly_equal(p, q, &mut eq), SchettStatus::Ok);
        assert!(eq);

        schett_poly_free(p);
        schett_poly_free(q);
    }
}

#[test]
fn reduced_and_dumont() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(schett_reduced_new(0, &mut r), SchettStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(schett_poly_to_string(r, &mut s), SchettStatus::Ok);
        assert_eq!(take_string(s), "1");
        schett_poly_free(r);

        let mut d = ptr::null_mut();
        assert_eq!(schett_dumont_new(2, false, &mut d), SchettStatus::Ok);
        assert_eq!(schett_poly_to_string(d, &mut s), SchettStatus::Ok);
        assert_eq!(take_string(s), "y^2 + z^2");
        schett_poly_free(d);

        assert_eq!(schett_dumont_new(13, false, &mut d), SchettStatus::InvalidArgument);
        assert!(last_error().contains("at most 12"));
    }
}

#[test]
fn matrix_entries_and_json() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(schett_matrix_new(SchettMatrixKind::L, 2, false, &mut m), SchettStatus::Ok);
        assert_eq!((schett_matrix_rows(m), schett_matrix_cols(m)), (2, 2));

        let mut e = ptr::null_mut();
        assert_eq!(schett_matrix_entry(m, 1, 0, &mut e), SchettStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(schett_poly_to_string(e, &mut s), SchettStatus::Ok);
        assert_eq!(take_string(s), "4*x^2");
        schett_poly_free(e);

        assert_eq!(schett_matrix_entry(m, 2, 0, &mut e), SchettStatus::InvalidArgument);
        assert!(last_error().contains("outside"));

        assert_eq!(schett_matrix_to_json(m, &mut s), SchettStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v["source"], "L");
        assert_eq!(v["rows"], 2);
        schett_matrix_free(m);
    }
}

#[test]
fn certify_pass_and_fail() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(schett_matrix_new(SchettMatrixKind::T, 5, true, &mut m), SchettStatus::Ok);
        let mut cert = ptr::null_mut();
        let mut passed = false;
        assert_eq!(schett_matrix_certify(m, 3, &mut cert, &mut passed), SchettStatus::Ok);
        assert!(passed);
        let v: serde_json::Value = serde_json::from_str(&take_string(cert)).unwrap();
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["N"], 5);
        assert_eq!(v["max_order"], 3);
        schett_matrix_free(m);

        // [[1, 2], [3, 4]] has determinant -2.
        let json = CString::new(
            r#"{"rows":2,"cols":2,"source":"bad","exact_block":2,"entries":[
                [{"vars":[],"terms":[{"coeff":"1","exps":[]}]},{"vars":[],"terms":[{"coeff":"2","exps":[]}]}],
                [{"vars":[],"terms":[{"coeff":"3","exps":[]}]},{"vars":[],"terms":[{"coeff":"4","exps":[]}]}]]}"#,
        )
        .unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(schett_matrix_from_json(json.as_ptr(), &mut h), SchettStatus::Ok);
        assert_eq!(schett_matrix_certify(h, 2, &mut cert, &mut passed), SchettStatus::Ok);
        assert!(!passed);
        let v: serde_json::Value = serde_json::from_str(&take_string(cert)).unwrap();
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["violation"]["rows"], serde_json::json!([0, 1]));
        assert_eq!(v["violation"]["cols"], serde_json::json!([0, 1]));
        assert_eq!(v["minors_checked"], 5);

        assert_eq!(schett_matrix_certify(h, 3, &mut cert, &mut passed), SchettStatus::InvalidArgument);
        schett_matrix_free(h);
    }
}

#[test]
fn null_handling() {
    unsafe {
        assert_eq!(schett_poly_new(2, 2, ptr::null_mut()), SchettStatus::NullPointer);
        assert!(last_error().contains("out"));
        let mut s = ptr::null_mut();
        assert_eq!(schett_poly_to_json(ptr::null(), &mut s), SchettStatus::NullPointer);
        assert_eq!(schett_poly_from_json(ptr::null(), &mut ptr::null_mut()), SchettStatus::NullPointer);
        assert_eq!(schett_matrix_rows(ptr::null()), 0);
        schett_poly_free(ptr::null_mut());
        schett_matrix_free(ptr::null_mut());
        schett_string_free(ptr::null_mut());
    }
}

#[test]
fn malformed_json_is_invalid_argument() {
    unsafe {
        let bad =
            CString::new("{\"vars\": [\"x\"], \"terms\": [{\"coeff\": \"1\", \"exps\": [1, 2]}]}").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(schett_poly_from_json(bad.as_ptr(), &mut p), SchettStatus::InvalidArgument);
        assert!(p.is_null());
    }
}

#[test]
fn zero_size_matrix_rejected() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(schett_matrix_new(SchettMatrixKind::P, 0, false, &mut m), SchettStatus::InvalidArgument);
        assert!(last_error().contains("size"));
    }
}

#[test]
fn version_matches_manifest() {
    let v = unsafe { CStr::from_ptr(schett_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/schett.h")).unwrap();
    for sym in [
        "schett_last_error",
        "schett_version",
        "schett_string_free",
        "schett_poly_new",
        "schett_reduced_new",
        "schett_dumont_new",
        "schett_poly_from_json",
        "schett_poly_to_json",
        "schett_poly_to_latex",
        "schett_poly_to_string",
        "schett_poly_equal",
        "schett_poly_free",
        "schett_matrix_new",
        "schett_matrix_from_json",
        "schett_matrix_rows",
        "schett_matrix_cols",
        "schett_matrix_entry",
        "schett_matrix_to_json",
        "schett_matrix_certify",
        "schett_matrix_free",
        "typedef struct SchettPoly SchettPoly",
        "typedef struct SchettMatrix SchettMatrix",
        "SCHETT_STATUS_OK = 0",
    ] {
        assert!(header.contains(sym), "missing {sym}");
    }
}
