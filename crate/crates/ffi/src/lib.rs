//! C ABI for `varjet`.
//!
//! Expressions cross the boundary as opaque `VarjetExpr` handles owned by
//! the caller and released with `varjet_expr_free`. Every fallible call
//! returns a `VarjetStatus`; on failure a human-readable message is kept
//! per thread and can be read with `varjet_last_error_message`. Strings
//! returned through out-parameters are released with `varjet_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use varjet::error::{HierarchyError, NumericError, ParseError, Sl2Error, VariationalError};
use varjet::numeric::JetPoint;
use varjet::{Atom, Expr, HierarchyId, RenderMode};

/// Opaque expression handle.
pub struct VarjetExpr(Expr);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarjetStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ExprError = 4,
    NotNull = 5,
    IntegrationUnsupported = 6,
    NonexactTop = 7,
    UnsupportedOrder = 8,
    ReservedParameter = 9,
    MissingAtom = 10,
    NumericSingularity = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarjetFormat {
    Canonical = 0,
    Latex = 1,
    Json = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let clean = message.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).expect("nul bytes removed"));
}

fn fail(status: VarjetStatus, message: impl ToString) -> VarjetStatus {
    set_error(&message.to_string());
    status
}

fn guard(f: impl FnOnce() -> VarjetStatus) -> VarjetStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == VarjetStatus::Ok {
                set_error("");
            }
            status
        }
        Err(_) => fail(VarjetStatus::Panic, "internal panic"),
    }
}

fn variational_status(e: &VariationalError) -> VarjetStatus {
    match e {
        VariationalError::NotNull => VarjetStatus::NotNull,
        VariationalError::IntegrationUnsupported(_) => VarjetStatus::IntegrationUnsupported,
        VariationalError::NonexactTop(_)
        | VariationalError::NonlinearTop(_)
        | VariationalError::NoJet => VarjetStatus::NonexactTop,
        VariationalError::Cancelled | VariationalError::Expr(_) => VarjetStatus::ExprError,
    }
}

unsafe fn text<'a>(src: *const c_char) -> Result<&'a str, VarjetStatus> {
    if src.is_null() {
        return Err(fail(VarjetStatus::NullArgument, "null string"));
    }
    CStr::from_ptr(src)
        .to_str()
        .map_err(|_| fail(VarjetStatus::InvalidUtf8, "input is not valid UTF-8"))
}

unsafe fn handle<'a>(e: *const VarjetExpr) -> Result<&'a Expr, VarjetStatus> {
    e.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| fail(VarjetStatus::NullArgument, "null expression handle"))
}

unsafe fn emit(out: *mut *mut VarjetExpr, e: Expr) -> VarjetStatus {
    *out = Box::into_raw(Box::new(VarjetExpr(e)));
    VarjetStatus::Ok
}

macro_rules! check_out {
    ($out:expr) => {
        if $out.is_null() {
            return fail(VarjetStatus::NullArgument, "null out-parameter");
        }
    };
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Message describing the last failure on this thread; empty after a
/// success. Valid until the next `varjet_*` call on the same thread.
#[no_mangle]
pub extern "C" fn varjet_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `src` in the expression grammar into a new handle.
///
/// # Safety
/// `src` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn varjet_parse(
    src: *const c_char,
    out: *mut *mut VarjetExpr,
) -> VarjetStatus {
    guard(|| {
        check_out!(out);
        let src = tri!(text(src));
        match varjet::parse_expr(src) {
            Ok(e) => emit(out, e),
            Err(ParseError::Hierarchy(h)) => fail(VarjetStatus::UnsupportedOrder, h),
            Err(ParseError::Expr(x)) => fail(VarjetStatus::ExprError, x),
            Err(p) => fail(VarjetStatus::ParseError, p),
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `e` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn varjet_expr_free(e: *mut VarjetExpr) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Copies a handle.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn varjet_expr_clone(
    e: *const VarjetExpr,
    out: *mut *mut VarjetExpr,
) -> VarjetStatus {
    guard(|| {
        check_out!(out);
        let e = tri!(handle(e));
        emit(out, e.clone())
    })
}

/// Whether two handles hold the same canonical expression.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn varjet_expr_equal(
    a: *const VarjetExpr,
    b: *const VarjetExpr,
    out: *mut bool,
) -> VarjetStatus {
    guard(|| {
        check_out!(out);
        let (a, b) = (tri!(handle(a)), tri!(handle(b)));
        *out = a == b;
        VarjetStatus::Ok
    })
}

/// Renders `e`; the string is released with `varjet_string_free`.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn varjet_render(
    e: *const VarjetExpr,
    format: VarjetFormat,
    out: *mut *mut c_char,
) -> VarjetStatus {
    guard(|| {
        check_out!(out);
        let e = tri!(handle(e));
        let mode = match format {
            VarjetFormat::Canonical => RenderMode::CanonicalText,
            VarjetFormat::Latex => RenderMode::Latex,
            VarjetFormat::Json => RenderMode::JsonAst,
        };
        let s = CString::new(varjet::render(e, mode)).expect("renderings contain no nul bytes");
        *out = s.into_raw();
        VarjetStatus::Ok
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from `varjet_render` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn varjet_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Euler-Lagrange expression of `l`.
///
/// # Safety
/// `l` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn varjet_euler_lagrange(
    l: *const VarjetExpr,
    out: *mut *mut VarjetExpr,
) -> VarjetStatus {
    guard(|| {
        check_out!(out);
        emit(out, varjet::euler_lagrange(tri!(handle(l))))
    })
}

/// Jacobi integral of `l`.
///
/// # Safety
/// `l` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn varjet_jacobi(
    l: *const VarjetExpr,
    out: *mut *mut VarjetExpr,
) -> VarjetStatus {
    guard(|| {
        check_out!(out);
        emit(out, varjet::jacobi(tri!(handle(l))))
    })
}

/// `k`-fold total time derivative.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn varjet_total_derivative(
    e: *const VarjetExpr,
    k: u32,
    out: *mut *mut VarjetExpr,
) -> VarjetStatus {
    guard(|| {
        check_out!(out);
        emit(out, varjet::total_derivative(tri!(handle(e)), k))
    })
}

/// Gauge `P` with `D_t P = l`; fails with `NotNull` when `l` is not a null
/// Lagrangian.
///
/// # Safety
/// `l` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn varjet_extract_gauge(
    l: *const VarjetExpr,
    out: *mut *mut VarjetExpr,
) -> VarjetStatus {
    guard(|| {
        check_out!(out);
        match varjet::extract_gauge(tri!(handle(l))) {
            Ok(g) => emit(out, g.gauge),
            Err(e) => fail(variational_status(&e), e),
        }
    })
}

/// # Safety
/// `l` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn varjet_is_null(l: *const VarjetExpr, out: *mut bool) -> VarjetStatus {
    guard(|| {
        check_out!(out);
        *out = varjet::is_null(tri!(handle(l)));
        VarjetStatus::Ok
    })
}

/// SL(2,R) invariance by prolongation residues.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn varjet_sl2_invariant(
    e: *const VarjetExpr,
    out: *mut bool,
) -> VarjetStatus {
    guard(|| {
        check_out!(out);
        match varjet::sl2_residues(tri!(handle(e))) {
            Ok(r) => {
                *out = r.invariant;
                VarjetStatus::Ok
            }
            Err(err @ Sl2Error::ReservedParameter(_)) => fail(VarjetStatus::ReservedParameter, err),
            Err(err) => fail(VarjetStatus::ExprError, err),
        }
    })
}

/// Built-in Lagrangian by family name (`presch`, `L2`, `sigma`,
/// `schippers`); `order` is ignored for the first two.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn varjet_builtin(
    name: *const c_char,
    order: u32,
    out: *mut *mut VarjetExpr,
) -> VarjetStatus {
    guard(|| {
        check_out!(out);
        let name = tri!(text(name));
        let id = match HierarchyId::from_name(name, Some(order)) {
            Ok(id) => id,
            Err(m) => return fail(VarjetStatus::UnsupportedOrder, m),
        };
        match varjet::builtin(id) {
            Ok(e) => emit(out, e),
            Err(err @ HierarchyError::UnsupportedOrder { .. }) => {
                fail(VarjetStatus::UnsupportedOrder, err)
            }
        }
    })
}

/// Evaluates `e` at `q^(k) = jets[k]` for `k < n_jets`, time `t` and the
/// named parameters.
///
/// # Safety
/// `jets` must point to `n_jets` doubles; `names` and `values` to `n_params`
/// entries each (either may be null when the count is zero); `out` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn varjet_eval(
    e: *const VarjetExpr,
    t: f64,
    jets: *const f64,
    n_jets: usize,
    names: *const *const c_char,
    values: *const f64,
    n_params: usize,
    out: *mut f64,
) -> VarjetStatus {
    guard(|| {
        check_out!(out);
        let e = tri!(handle(e));
        if (n_jets > 0 && jets.is_null()) || (n_params > 0 && (names.is_null() || values.is_null()))
        {
            return fail(VarjetStatus::NullArgument, "null array with nonzero length");
        }
        let mut point = JetPoint::new().with(Atom::Time, t);
        if n_jets > 0 {
            for (k, v) in std::slice::from_raw_parts(jets, n_jets).iter().enumerate() {
                point.set(Atom::Jet(k as u32), *v);
            }
        }
        if n_params > 0 {
            let names = std::slice::from_raw_parts(names, n_params);
            let values = std::slice::from_raw_parts(values, n_params);
            for (name, v) in names.iter().zip(values) {
                point.set(Atom::param(tri!(text(*name))), *v);
            }
        }
        match varjet::eval(e, &point) {
            Ok(v) => {
                *out = v;
                VarjetStatus::Ok
            }
            Err(err @ NumericError::MissingAtom(_)) => fail(VarjetStatus::MissingAtom, err),
            Err(err) => fail(VarjetStatus::NumericSingularity, err),
        }
    })
}

/// Highest jet order in `e`, or -1 when `e` is jet-free.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn varjet_jet_order(e: *const VarjetExpr, out: *mut i64) -> VarjetStatus {
    guard(|| {
        check_out!(out);
        *out = varjet::jet_order(tri!(handle(e))).map_or(-1, i64::from);
        VarjetStatus::Ok
    })
}
