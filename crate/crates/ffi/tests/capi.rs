use std::ffi::{CStr, CString};
use std::ptr;

use squarecx_ffi::*;

fn named(name: &str) -> *mut SqcxComplex {
    let name = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sqcx_complex_named(name.as_ptr(), &mut out) }, SqcxStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    let p = sqcx_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn counts_and_checks() {
    let g1 = named("g1");
    let (mut gens, mut squares) = (0usize, 0usize);
    unsafe {
        assert_eq!(sqcx_complex_counts(g1, &mut gens, &mut squares), SqcxStatus::Ok);
        assert_eq!((gens, squares), (10, 9));
        let mut large = false;
        assert_eq!(sqcx_is_large(g1, &mut large), SqcxStatus::Ok);
        assert!(large);
        let mut poison = 0usize;
        assert_eq!(sqcx_poison_count(g1, &mut poison), SqcxStatus::Ok);
        assert_eq!(poison, 12);
        let mut rank = 0i64;
        assert_eq!(sqcx_kernel_rank(g1, ptr::null(), &mut rank), SqcxStatus::Ok);
        assert_eq!(rank, 9);
        let w = CString::new("a=2,b=1").unwrap();
        assert_eq!(sqcx_kernel_rank(g1, w.as_ptr(), &mut rank), SqcxStatus::Ok);
        assert_eq!(rank, 13);
        sqcx_complex_free(g1);
    }
}

#[test]
fn render_parse_round_trip() {
    let lot = CString::new("a").unwrap();
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(sqcx_complex_lot(5, lot.as_ptr(), &mut c), SqcxStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(sqcx_complex_render(c, &mut text), SqcxStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(sqcx_complex_parse(text, &mut again), SqcxStatus::Ok);
        let mut text2 = ptr::null_mut();
        assert_eq!(sqcx_complex_render(again, &mut text2), SqcxStatus::Ok);
        assert_eq!(CStr::from_ptr(text), CStr::from_ptr(text2));
        sqcx_string_free(text);
        sqcx_string_free(text2);
        sqcx_complex_free(c);
        sqcx_complex_free(again);
    }
}

#[test]
fn analyze_json() {
    let g2 = named("g2");
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(sqcx_analyze_json(g2, ptr::null(), 3, &mut out), SqcxStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        assert_eq!(json["flatness"]["verdict"], "HyperbolicCertB");
        assert_eq!(json["morse"][0]["rank"], 7);
        sqcx_string_free(out);
        sqcx_complex_free(g2);
    }
}

#[test]
fn errors_are_reported() {
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(sqcx_complex_parse(ptr::null(), &mut out), SqcxStatus::NullPointer);
        let bad = CString::new("generators a\nsquare a a a").unwrap();
        assert_eq!(sqcx_complex_parse(bad.as_ptr(), &mut out), SqcxStatus::InvalidInput);
        assert!(last_error().contains("line 2"));
        let unknown = CString::new("nope").unwrap();
        assert_eq!(sqcx_complex_named(unknown.as_ptr(), &mut out), SqcxStatus::InvalidInput);
        let mut n = 0usize;
        assert_eq!(sqcx_poison_count(ptr::null(), &mut n), SqcxStatus::NullPointer);
        let g1 = named("g1");
        assert!(sqcx_last_error().is_null());
        let mut rank = 0i64;
        let w = CString::new("a=2,b=2").unwrap();
        assert_eq!(sqcx_kernel_rank(g1, w.as_ptr(), &mut rank), SqcxStatus::InvalidInput);
        assert!(last_error().contains("disconnected"), "{}", last_error());
        sqcx_complex_free(g1);
        sqcx_complex_free(ptr::null_mut());
        sqcx_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/squarecx.h")).unwrap();
    assert!(header.contains("typedef struct SqcxComplex SqcxComplex;"));
    for f in [
        "sqcx_complex_parse",
        "sqcx_complex_named",
        "sqcx_complex_lot",
        "sqcx_complex_free",
        "sqcx_complex_counts",
        "sqcx_complex_render",
        "sqcx_is_large",
        "sqcx_poison_count",
        "sqcx_kernel_rank",
        "sqcx_analyze_json",
        "sqcx_string_free",
        "sqcx_last_error",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing");
    }
    assert!(header.contains("SQCX_STATUS_OK = 0"));
}
