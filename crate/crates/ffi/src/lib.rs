//! C ABI over `schett-core`.
//!
//! Objects cross the boundary as opaque handles ([`SchettPoly`],
//! [`SchettMatrix`]) that the caller releases with the matching `*_free`
//! function. Every fallible call returns a [`SchettStatus`]; on failure a
//! description is available from [`schett_last_error`] on the same thread.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and released with [`schett_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use schett_core::matrixkit::{
    build_generic_quad, build_l, build_p, build_q, build_t, MatrixJson, PolyMatrix, VarStyle,
};
use schett_core::outputmat::output_matrix;
use schett_core::permoracle::dumont_poly;
use schett_core::polyring::Poly;
use schett_core::schett::{schett_poly, schett_reduced};
use schett_core::totalpos::{enumerate_minors, schett_hankel};
use schett_core::Parity;

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchettStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was out of range or malformed (including invalid UTF-8 or JSON).
    InvalidArgument = 2,
    /// The computation itself reported an error.
    Computation = 3,
    /// A Rust panic was caught at the boundary.
    Panic = 4,
}

/// Matrices that [`schett_matrix_new`] can build.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchettMatrixKind {
    P = 0,
    Q = 1,
    T = 2,
    L = 3,
    Generic = 4,
    OutputP = 5,
    OutputQ = 6,
    HankelEven = 7,
    HankelOdd = 8,
}

/// Opaque polynomial handle.
pub struct SchettPoly(Poly);

/// Opaque matrix handle.
pub struct SchettMatrix(PolyMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, mapping errors and panics to a status and the last-error slot.
fn guard(f: impl FnOnce() -> Result<(), (SchettStatus, String)>) -> SchettStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SchettStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("panic: {msg}"));
            SchettStatus::Panic
        }
    }
}

fn computation(e: schett_core::Error) -> (SchettStatus, String) {
    (SchettStatus::Computation, e.to_string())
}

fn null(what: &str) -> (SchettStatus, String) {
    (SchettStatus::NullPointer, format!("{what} must not be null"))
}

fn invalid(msg: impl Into<String>) -> (SchettStatus, String) {
    (SchettStatus::InvalidArgument, msg.into())
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), (SchettStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (SchettStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| invalid("string contains an interior NUL"))?;
    *out = c.into_raw();
    Ok(())
}

/// # Safety
/// `p` must be null or point to a live handle.
unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (SchettStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Message for the most recent failed call on this thread, or null. The
/// pointer stays valid until the next call into this library on this thread.
#[no_mangle]
pub extern "C" fn schett_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn schett_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn schett_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `X_n^{[m+1]}` in `m + 1` variables; `m = 2` gives the classical `X_n(x, y, z)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schett_poly_new(n: usize, m: usize, out: *mut *mut SchettPoly) -> SchettStatus {
    guard(|| {
        let p = schett_poly(n, m).map_err(computation)?;
        write_out(out, SchettPoly(p))
    })
}

/// Reduced Schett polynomial of index `n` in `X, Y, Z`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schett_reduced_new(n: usize, out: *mut *mut SchettPoly) -> SchettStatus {
    guard(|| {
        let p = schett_reduced(n).map_err(computation)?.poly;
        write_out(out, SchettPoly(p))
    })
}

/// Permutation-statistics polynomial `D_n`, optionally weighted by cycles.
/// Enumerates `n!` permutations; `n` is limited to 12.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schett_dumont_new(
    n: usize,
    with_lambda: bool,
    out: *mut *mut SchettPoly,
) -> SchettStatus {
    guard(|| {
        if n > 12 {
            return Err(invalid("n must be at most 12"));
        }
        write_out(out, SchettPoly(dumont_poly(n, with_lambda)))
    })
}

/// Parses a polynomial from its JSON interchange form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schett_poly_from_json(
    json: *const c_char,
    out: *mut *mut SchettPoly,
) -> SchettStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| invalid("json is not UTF-8"))?;
        let p = Poly::from_json(text).map_err(|e| invalid(e.to_string()))?;
        write_out(out, SchettPoly(p))
    })
}

/// JSON interchange form of a polynomial.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schett_poly_to_json(p: *const SchettPoly, out: *mut *mut c_char) -> SchettStatus {
    guard(|| write_string(out, deref(p, "poly")?.0.to_json()))
}

/// LaTeX rendering of a polynomial.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schett_poly_to_latex(p: *const SchettPoly, out: *mut *mut c_char) -> SchettStatus {
    guard(|| write_string(out, deref(p, "poly")?.0.to_latex()))
}

/// Plain-text rendering, e.g. `4*x^2*y*z + y^3*z + y*z^3`.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schett_poly_to_string(p: *const SchettPoly, out: *mut *mut c_char) -> SchettStatus {
    guard(|| write_string(out, deref(p, "poly")?.0.to_string()))
}

/// Exact equality of two polynomials (variables matched by name).
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schett_poly_equal(
    a: *const SchettPoly,
    b: *const SchettPoly,
    out: *mut bool,
) -> SchettStatus {
    guard(|| {
        let eq = deref(a, "a")?.0 == deref(b, "b")?.0;
        *out.as_mut().ok_or_else(|| null("out"))? = eq;
        Ok(())
    })
}

/// Releases a polynomial handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn schett_poly_free(p: *mut SchettPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Builds the leading `size x size` block of the selected matrix. `squared`
/// selects `X, Y, Z` instead of `x, y, z` where both are available.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schett_matrix_new(
    kind: SchettMatrixKind,
    size: usize,
    squared: bool,
    out: *mut *mut SchettMatrix,
) -> SchettStatus {
    guard(|| {
        if size == 0 {
            return Err(invalid("size must be at least 1"));
        }
        let style = if squared { VarStyle::Squared } else { VarStyle::Raw };
        let m = match kind {
            SchettMatrixKind::P => build_p(size, style),
            SchettMatrixKind::Q => build_q(size, style),
            SchettMatrixKind::T => build_t(size, style),
            SchettMatrixKind::L => build_l(size, style),
            SchettMatrixKind::Generic => build_generic_quad(size).map_err(computation)?,
            SchettMatrixKind::OutputP => {
                output_matrix(&build_p(size, style), size).map_err(computation)?.into_matrix()
            }
            SchettMatrixKind::OutputQ => {
                output_matrix(&build_q(size, style), size).map_err(computation)?.into_matrix()
            }
            SchettMatrixKind::HankelEven => schett_hankel(Parity::Even, size).map_err(computation)?,
            SchettMatrixKind::HankelOdd => schett_hankel(Parity::Odd, size).map_err(computation)?,
        };
        write_out(out, SchettMatrix(m))
    })
}

/// Parses a matrix from the JSON form produced by [`schett_matrix_to_json`].
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schett_matrix_from_json(
    json: *const c_char,
    out: *mut *mut SchettMatrix,
) -> SchettStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| invalid("json is not UTF-8"))?;
        let parsed: MatrixJson = serde_json::from_str(text).map_err(|e| invalid(e.to_string()))?;
        let m = PolyMatrix::try_from(&parsed).map_err(|e| invalid(e.to_string()))?;
        write_out(out, SchettMatrix(m))
    })
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn schett_matrix_rows(m: *const SchettMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

/// Number of columns, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn schett_matrix_cols(m: *const SchettMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols())
}

/// Copies entry `(i, j)` into a new polynomial handle.
///
/// # Safety
/// `m` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schett_matrix_entry(
    m: *const SchettMatrix,
    i: usize,
    j: usize,
    out: *mut *mut SchettPoly,
) -> SchettStatus {
    guard(|| {
        let m = &deref(m, "matrix")?.0;
        if i >= m.rows() || j >= m.cols() {
            return Err(invalid(format!("entry ({i}, {j}) outside a {}x{} matrix", m.rows(), m.cols())));
        }
        write_out(out, SchettPoly(m.get(i, j).clone()))
    })
}

/// JSON form of a matrix (`rows`, `cols`, `entries`, `source`, `exact_block`).
///
/// # Safety
/// `m` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schett_matrix_to_json(
    m: *const SchettMatrix,
    out: *mut *mut c_char,
) -> SchettStatus {
    guard(|| {
        let json =
            serde_json::to_string(&deref(m, "matrix")?.0.to_json()).map_err(|e| invalid(e.to_string()))?;
        write_string(out, json)
    })
}

/// Checks every minor of order `<= max_order` for nonnegative coefficients.
/// Writes the certificate JSON to `cert_json` and the verdict to `passed`.
/// A failing verdict is still a successful call.
///
/// # Safety
/// `m` must be a live handle; `cert_json` and `passed` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schett_matrix_certify(
    m: *const SchettMatrix,
    max_order: usize,
    cert_json: *mut *mut c_char,
    passed: *mut bool,
) -> SchettStatus {
    guard(|| {
        let m = &deref(m, "matrix")?.0;
        if passed.is_null() {
            return Err(null("passed"));
        }
        if max_order > m.rows().min(m.cols()) {
            return Err(invalid(format!("max_order {max_order} exceeds the matrix size")));
        }
        let cert = enumerate_minors(m, max_order).map_err(computation)?;
        let json = serde_json::to_string(&cert.to_json()).map_err(|e| invalid(e.to_string()))?;
        write_string(cert_json, json)?;
        *passed = cert.passed();
        Ok(())
    })
}

/// Releases a matrix handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn schett_matrix_free(m: *mut SchettMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}
