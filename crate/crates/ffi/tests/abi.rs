use std::ffi::{c_char, CStr, CString};
use std::ptr;

use argeo_ffi::*;

const MARRIED_JOHN: &str = "wr. go.\n~hw <- b.\nhw <- m.\nm -< wr.\nb -< go.\n";

fn parse(text: &str) -> *mut ArgeoProgram {
    let text = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { argeo_program_parse(text.as_ptr(), &mut p) },
        ArgeoStatus::Ok
    );
    assert!(!p.is_null());
    p
}

fn last_error() -> String {
    let e = argeo_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_string_lossy().into_owned()
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { argeo_string_free(s) };
    out
}

#[test]
fn warrant_through_the_abi() {
    let p = parse(MARRIED_JOHN);
    let goal = CString::new("m").unwrap();
    for engine in [ArgeoWarrantEngine::Delp, ArgeoWarrantEngine::DelpGr] {
        let mut w = true;
        let s = unsafe { argeo_warrant(p, goal.as_ptr(), engine as i32, &mut w) };
        assert_eq!(s, ArgeoStatus::Ok);
        assert!(!w);
    }
    let wr = CString::new("wr").unwrap();
    let mut w = false;
    unsafe { argeo_warrant(p, wr.as_ptr(), ArgeoWarrantEngine::Delp as i32, &mut w) };
    assert!(w);
    assert!(argeo_last_error().is_null());
    unsafe { argeo_program_free(p) };
}

#[test]
fn justification_and_extensions() {
    let p = parse(MARRIED_JOHN);
    let m = CString::new("m").unwrap();
    let mut j = false;
    let s = unsafe {
        argeo_justified(
            p,
            m.as_ptr(),
            ArgeoAttack::DlpRebut as i32,
            ArgeoSemantics::Grounded as i32,
            true,
            &mut j,
        )
    };
    assert_eq!((s, j), (ArgeoStatus::Ok, false));
    let mut text = ptr::null_mut();
    let s = unsafe {
        argeo_extensions(
            p,
            ArgeoAttack::DlpRebut as i32,
            ArgeoSemantics::Grounded as i32,
            &mut text,
        )
    };
    assert_eq!(s, ArgeoStatus::Ok);
    assert_eq!(take(text), "{go, wr}\n");
    unsafe { argeo_program_free(p) };
}

#[test]
fn postulates_and_compare() {
    let p = parse(MARRIED_JOHN);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { argeo_postulates(p, &mut text) }, ArgeoStatus::Ok);
    let table = take(text);
    assert!(table.starts_with("configuration\tDC\tIC\tSC\n"));
    assert_eq!(table.lines().count(), 6);
    let mut n = usize::MAX;
    assert_eq!(
        unsafe { argeo_compare(p, ArgeoAttack::DlpRebut as i32, &mut n) },
        ArgeoStatus::Ok
    );
    assert_eq!(n, 0);
    unsafe { argeo_program_free(p) };
}

#[test]
fn round_trip_print() {
    let p = parse(MARRIED_JOHN);
    let mut text = ptr::null_mut();
    assert_eq!(
        unsafe { argeo_program_print(p, &mut text) },
        ArgeoStatus::Ok
    );
    let printed = take(text);
    let q = parse(&printed);
    unsafe { argeo_program_print(q, &mut text) };
    assert_eq!(take(text), printed);
    unsafe {
        argeo_program_free(p);
        argeo_program_free(q);
    }
}

#[test]
fn errors_are_reported_not_raised() {
    let mut p = ptr::null_mut();
    let bad = CString::new("p -< q").unwrap();
    assert_eq!(
        unsafe { argeo_program_parse(bad.as_ptr(), &mut p) },
        ArgeoStatus::Parse
    );
    assert!(p.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(
        unsafe { argeo_program_parse(ptr::null(), &mut p) },
        ArgeoStatus::NullArgument
    );
    let text = CString::new("a.").unwrap();
    assert_eq!(
        unsafe { argeo_program_parse(text.as_ptr(), ptr::null_mut()) },
        ArgeoStatus::NullArgument
    );

    let p = parse("a.\nb -< a.");
    let goal = CString::new("b").unwrap();
    let mut w = false;
    let s = unsafe { argeo_warrant(p, goal.as_ptr(), 7, &mut w) };
    assert_eq!(s, ArgeoStatus::InvalidArgument);
    assert!(last_error().contains('7'));
    let s = unsafe { argeo_warrant(p, goal.as_ptr(), 0, ptr::null_mut()) };
    assert_eq!(s, ArgeoStatus::NullArgument);
    let not_a_literal = CString::new("~~").unwrap();
    let s = unsafe { argeo_warrant(p, not_a_literal.as_ptr(), 0, &mut w) };
    assert_eq!(s, ArgeoStatus::Parse);
    unsafe { argeo_program_free(p) };
}

#[test]
fn budget_is_enforced() {
    let p = parse("a. b.\nc -< a.\nd -< b.\ne -< c, d.");
    assert_eq!(unsafe { argeo_program_set_budget(p, 2) }, ArgeoStatus::Ok);
    let mut text = ptr::null_mut();
    let s = unsafe {
        argeo_extensions(
            p,
            ArgeoAttack::Rebut as i32,
            ArgeoSemantics::Grounded as i32,
            &mut text,
        )
    };
    assert_eq!(s, ArgeoStatus::Engine);
    assert!(last_error().contains("budget"));
    unsafe { argeo_program_free(p) };
}

#[test]
fn compare_refuses_unsimplified_programs() {
    let p = parse("p.\nq <- p.\nq -< .");
    let mut n = 0;
    assert_eq!(unsafe { argeo_compare(p, 0, &mut n) }, ArgeoStatus::Engine);
    unsafe { argeo_program_free(p) };
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(argeo_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    unsafe { argeo_string_free(ptr::null_mut()) };
    unsafe { argeo_program_free(ptr::null_mut()) };
}
