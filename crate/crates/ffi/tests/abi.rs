//! Exercises the C ABI exactly as a C caller would: handles in, status
//! codes and heap strings out, every string released through the library.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use matfib_ffi::*;

/// Builds a handle from a builtin name, panicking on failure.
fn builtin(name: &str) -> *mut MatfibMatrix {
    let name = CString::new(name).unwrap();
    let mut handle: *mut MatfibMatrix = ptr::null_mut();
    let status = unsafe { matfib_matrix_builtin(name.as_ptr(), &mut handle) };
    assert_eq!(status, MatfibStatus::Ok, "{:?}", last_error());
    assert!(!handle.is_null());
    handle
}

/// Copies a library string into Rust and frees the original.
fn take_string(text: *mut c_char) -> Option<String> {
    if text.is_null() {
        return None;
    }
    let copied = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_string();
    unsafe { matfib_string_free(text) };
    Some(copied)
}

fn last_error() -> Option<String> {
    take_string(matfib_last_error_message())
}

#[test]
fn the_version_is_a_static_string() {
    let version = unsafe { CStr::from_ptr(matfib_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn builtin_matrices_load_and_report_their_shape() {
    let handle = builtin("P1");
    assert_eq!(unsafe { matfib_matrix_value_count(handle) }, 3);
    let name = take_string(unsafe { matfib_matrix_name(handle) }).unwrap();
    assert_eq!(name, "P1");
    let rendered = take_string(unsafe { matfib_matrix_render(handle) }).unwrap();
    assert!(rendered.contains("impP1"), "{rendered}");
    unsafe { matfib_matrix_free(handle) };
}

#[test]
fn entailment_reports_verdicts_and_witnesses() {
    let handle = builtin("CPLand");
    let mut holds = false;
    let mut witness: *mut c_char = ptr::null_mut();

    let sequent = CString::new("p1, p2 |- and(p1,p2)").unwrap();
    let status =
        unsafe { matfib_entails(handle, sequent.as_ptr(), &mut holds, &mut witness) };
    assert_eq!(status, MatfibStatus::Ok);
    assert!(holds);
    assert!(witness.is_null());

    let sequent = CString::new("and(p,q) |- neg(p)").unwrap();
    let status =
        unsafe { matfib_entails(handle, sequent.as_ptr(), &mut holds, &mut witness) };
    assert_eq!(status, MatfibStatus::Ok);
    assert!(!holds);
    assert_eq!(take_string(witness).as_deref(), Some("p=1, q=1"));

    unsafe { matfib_matrix_free(handle) };
}

#[test]
fn tautologies_are_decided_without_a_witness_pointer() {
    let handle = builtin("CPLor");
    let mut holds = false;
    let formula = CString::new("or(neg(p),p)").unwrap();
    let status = unsafe {
        matfib_is_tautology(handle, formula.as_ptr(), &mut holds, ptr::null_mut())
    };
    assert_eq!(status, MatfibStatus::Ok);
    assert!(holds);
    unsafe { matfib_matrix_free(handle) };
}

#[test]
fn fibred_spec_text_builds_the_combined_matrix() {
    let p1 = builtin("P1");
    let cpland = builtin("CPLand");
    let mut count = 0u64;
    let status = unsafe { matfib_admissible_pair_count(p1, cpland, &mut count) };
    assert_eq!(status, MatfibStatus::Ok);
    assert_eq!(count, 2);
    unsafe {
        matfib_matrix_free(p1);
        matfib_matrix_free(cpland);
    }

    let spec = CString::new(
        "matrix P1 {
           values T T1 F ;
           designated T T1 ;
           op negP1/1 { T -> F ; T1 -> T ; F -> T ; }
         }
         matrix CPLand {
           values 0 1 ;
           designated 1 ;
           op and/2 { table 0 0 0 1 ; }
         }
         pair demo {
           lambda { T -> 1 ; T1 -> 1 ; F -> 0 ; }
           mu { 1 -> T ; 0 -> F ; }
         }",
    )
    .unwrap();
    let mut handle: *mut MatfibMatrix = ptr::null_mut();
    let status = unsafe { matfib_matrix_from_spec(spec.as_ptr(), &mut handle) };
    assert_eq!(status, MatfibStatus::Ok, "{:?}", last_error());
    assert_eq!(unsafe { matfib_matrix_value_count(handle) }, 5);

    let mut holds = true;
    let formula = CString::new("negP1@1(and@2(p,p))").unwrap();
    let mut witness: *mut c_char = ptr::null_mut();
    let status =
        unsafe { matfib_is_tautology(handle, formula.as_ptr(), &mut holds, &mut witness) };
    assert_eq!(status, MatfibStatus::Ok);
    assert!(!holds);
    assert_eq!(take_string(witness).as_deref(), Some("p=T@1"));
    unsafe { matfib_matrix_free(handle) };
}

#[test]
fn every_failure_leaves_a_readable_message() {
    let mut handle: *mut MatfibMatrix = ptr::null_mut();

    let status = unsafe { matfib_matrix_builtin(ptr::null(), &mut handle) };
    assert_eq!(status, MatfibStatus::NullPointer);
    assert!(last_error().unwrap().contains("null"));

    let bad_utf8 = [0xffu8, 0xfe, 0x00];
    let status = unsafe {
        matfib_matrix_builtin(bad_utf8.as_ptr().cast::<c_char>(), &mut handle)
    };
    assert_eq!(status, MatfibStatus::InvalidUtf8);
    assert!(last_error().unwrap().contains("UTF-8"));

    let unknown = CString::new("NoSuchMatrix").unwrap();
    let status = unsafe { matfib_matrix_builtin(unknown.as_ptr(), &mut handle) };
    assert_eq!(status, MatfibStatus::InvalidInput);
    assert!(last_error().unwrap().contains("NoSuchMatrix"));

    let broken = CString::new("matrix Broken { values").unwrap();
    let status = unsafe { matfib_matrix_from_spec(broken.as_ptr(), &mut handle) };
    assert_eq!(status, MatfibStatus::ParseError);

    let cpl = builtin("CPLand");
    let mut holds = false;
    let sequent = CString::new("p |- nosuch(p,q)").unwrap();
    let status =
        unsafe { matfib_entails(cpl, sequent.as_ptr(), &mut holds, ptr::null_mut()) };
    assert_eq!(status, MatfibStatus::ParseError);
    unsafe { matfib_matrix_free(cpl) };
}

#[test]
fn frees_ignore_null() {
    unsafe {
        matfib_matrix_free(ptr::null_mut());
        matfib_string_free(ptr::null_mut());
    }
}

#[test]
fn the_committed_header_matches_the_surface() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/matfib.h"
    ))
    .expect("include/matfib.h is committed");
    for symbol in [
        "matfib_version",
        "matfib_matrix_builtin",
        "matfib_matrix_from_spec",
        "matfib_matrix_free",
        "matfib_matrix_name",
        "matfib_matrix_value_count",
        "matfib_matrix_render",
        "matfib_entails",
        "matfib_is_tautology",
        "matfib_admissible_pair_count",
        "matfib_last_error_message",
        "matfib_string_free",
        "MATFIB_STATUS_OK",
        "typedef struct MatfibMatrix MatfibMatrix",
    ] {
        assert!(header.contains(symbol), "header lacks {symbol}");
    }
}
