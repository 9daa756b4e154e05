use std::ffi::{c_char, CStr, CString};
use std::ptr;

use varjet_ffi::*;

struct Handle(*mut VarjetExpr);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { varjet_expr_free(self.0) }
    }
}

fn parse(src: &str) -> Handle {
    let src = CString::new(src).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { varjet_parse(src.as_ptr(), &mut out) };
    assert_eq!(status, VarjetStatus::Ok, "{}", last_error());
    Handle(out)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(varjet_last_error_message()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn render(h: &Handle, format: VarjetFormat) -> String {
    let mut s: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { varjet_render(h.0, format, &mut s) },
        VarjetStatus::Ok
    );
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { varjet_string_free(s) };
    text
}

fn unary(
    f: unsafe extern "C" fn(*const VarjetExpr, *mut *mut VarjetExpr) -> VarjetStatus,
    h: &Handle,
) -> Handle {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { f(h.0, &mut out) },
        VarjetStatus::Ok,
        "{}",
        last_error()
    );
    Handle(out)
}

fn equal(a: &Handle, b: &Handle) -> bool {
    let mut eq = false;
    assert_eq!(
        unsafe { varjet_expr_equal(a.0, b.0, &mut eq) },
        VarjetStatus::Ok
    );
    eq
}

#[test]
fn parse_and_render() {
    let s = parse("q'''/q' - 3/2*(q''/q')^2");
    assert_eq!(
        render(&s, VarjetFormat::Canonical),
        "(2*q'*q''' - 3*q''^2)/(2*q'^2)"
    );
    let one = parse("1");
    assert_eq!(
        render(&one, VarjetFormat::Json),
        r#"{"num": [{"coeff": {"n": "1", "d": "1"}, "atoms": []}], "den": [{"coeff": {"n": "1", "d": "1"}, "atoms": []}]}"#
    );
    assert!(render(&s, VarjetFormat::Latex).contains("\\dddot{q}"));
}

#[test]
fn variational_operators() {
    let l2 = parse("L2()");
    let s3 = parse("sigma(3)");
    let el = unary(varjet_euler_lagrange, &l2);
    assert!(equal(
        &el,
        &parse("(q'^2*q^(4) - 4*q'*q''*q''' + 3*q''^3)/q'^4")
    ));
    let j = unary(varjet_jacobi, &l2);
    assert!(equal(&j, &parse("-sigma(3)")));

    let s4 = parse("sigma(4)");
    let mut null = false;
    assert_eq!(unsafe { varjet_is_null(s4.0, &mut null) }, VarjetStatus::Ok);
    assert!(null);
    let gauge = unary(varjet_extract_gauge, &s4);
    assert!(equal(&gauge, &s3));

    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { varjet_total_derivative(gauge.0, 1, &mut back) },
        VarjetStatus::Ok
    );
    let back = Handle(back);
    assert!(equal(&back, &s4));
}

#[test]
fn gauge_of_non_null_lagrangian_fails() {
    let s5 = parse("sigma(5)");
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { varjet_extract_gauge(s5.0, &mut out) },
        VarjetStatus::NotNull
    );
    assert!(out.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn invariance_and_builtins() {
    let name = CString::new("sigma").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { varjet_builtin(name.as_ptr(), 6, &mut out) },
        VarjetStatus::Ok
    );
    let s6 = Handle(out);
    let mut inv = false;
    assert_eq!(
        unsafe { varjet_sl2_invariant(s6.0, &mut inv) },
        VarjetStatus::Ok
    );
    assert!(inv);

    let pre = parse("presch()");
    assert_eq!(
        unsafe { varjet_sl2_invariant(pre.0, &mut inv) },
        VarjetStatus::Ok
    );
    assert!(!inv);

    let reserved = parse("a*q'");
    assert_eq!(
        unsafe { varjet_sl2_invariant(reserved.0, &mut inv) },
        VarjetStatus::ReservedParameter
    );

    let mut bad = ptr::null_mut();
    assert_eq!(
        unsafe { varjet_builtin(name.as_ptr(), 7, &mut bad) },
        VarjetStatus::UnsupportedOrder
    );
    let mut order = 0;
    assert_eq!(
        unsafe { varjet_jet_order(s6.0, &mut order) },
        VarjetStatus::Ok
    );
    assert_eq!(order, 6);
}

#[test]
fn evaluation() {
    let s = parse("sigma(3) + k*t");
    let jets = [0.0, 1.0, 1.0, 1.0];
    let k = CString::new("k").unwrap();
    let names = [k.as_ptr()];
    let mut v = 0.0;
    let status = unsafe {
        varjet_eval(
            s.0,
            2.0,
            jets.as_ptr(),
            4,
            names.as_ptr(),
            [3.0].as_ptr(),
            1,
            &mut v,
        )
    };
    assert_eq!(status, VarjetStatus::Ok);
    assert_eq!(v, 5.5);

    let status = unsafe {
        varjet_eval(
            s.0,
            0.0,
            jets.as_ptr(),
            2,
            ptr::null(),
            ptr::null(),
            0,
            &mut v,
        )
    };
    assert_eq!(status, VarjetStatus::MissingAtom);

    let singular = [0.0, 0.0, 1.0, 1.0];
    let status = unsafe {
        varjet_eval(
            s.0,
            0.0,
            singular.as_ptr(),
            4,
            names.as_ptr(),
            [3.0].as_ptr(),
            1,
            &mut v,
        )
    };
    assert_eq!(status, VarjetStatus::NumericSingularity);
}

#[test]
fn error_reporting() {
    let src = CString::new("q +\n * q").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { varjet_parse(src.as_ptr(), &mut out) },
        VarjetStatus::ParseError
    );
    assert!(last_error().contains("line 2"));

    let src = CString::new("1/0").unwrap();
    assert_eq!(
        unsafe { varjet_parse(src.as_ptr(), &mut out) },
        VarjetStatus::ExprError
    );

    assert_eq!(
        unsafe { varjet_parse(ptr::null(), &mut out) },
        VarjetStatus::NullArgument
    );
    let ok = CString::new("q").unwrap();
    assert_eq!(
        unsafe { varjet_parse(ok.as_ptr(), ptr::null_mut()) },
        VarjetStatus::NullArgument
    );
    assert_eq!(
        unsafe { varjet_euler_lagrange(ptr::null(), &mut out) },
        VarjetStatus::NullArgument
    );

    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { varjet_parse(invalid.as_ptr() as *const c_char, &mut out) },
        VarjetStatus::InvalidUtf8
    );

    assert_eq!(
        unsafe { varjet_parse(ok.as_ptr(), &mut out) },
        VarjetStatus::Ok
    );
    assert!(last_error().is_empty());
    unsafe { varjet_expr_free(out) };
    unsafe { varjet_expr_free(ptr::null_mut()) };
    unsafe { varjet_string_free(ptr::null_mut()) };
}

#[test]
fn clone_is_independent() {
    let a = parse("q'^2");
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { varjet_expr_clone(a.0, &mut out) },
        VarjetStatus::Ok
    );
    let b = Handle(out);
    drop(a);
    assert_eq!(render(&b, VarjetFormat::Canonical), "q'^2");
}

#[test]
fn header_declares_the_surface() {
    let header = include_str!("../include/varjet.h");
    for symbol in [
        "typedef struct VarjetExpr VarjetExpr;",
        "VARJET_STATUS_OK = 0",
        "varjet_parse(",
        "varjet_expr_free(",
        "varjet_render(",
        "varjet_string_free(",
        "varjet_euler_lagrange(",
        "varjet_jacobi(",
        "varjet_total_derivative(",
        "varjet_extract_gauge(",
        "varjet_is_null(",
        "varjet_sl2_invariant(",
        "varjet_builtin(",
        "varjet_eval(",
        "varjet_last_error_message(",
    ] {
        assert!(header.contains(symbol), "header lacks {symbol}");
    }
}
