//! C ABI for squarecx.
//!
//! Complexes are opaque handles. Every call returns an [`SqcxStatus`];
//! results come back through out-pointers. After a failure,
//! [`sqcx_last_error`] describes it until the next call on the same thread.
//! Strings handed out must be released with [`sqcx_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use squarecx::complex::{build_lot_family, build_named, parse_spec};
use squarecx::link::{build_link, largeness, poison_corners};
use squarecx::morse::{kernel_rank, WeightSystem};
use squarecx::{cli, Error, SquareComplex};

/// Opaque complex handle.
pub struct SqcxComplex {
    inner: SquareComplex,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqcxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Internal = 4,
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(SqcxStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.is_internal() { SqcxStatus::Internal } else { SqcxStatus::InvalidInput };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SqcxStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SqcxStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside squarecx".to_string());
            SqcxStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SqcxStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SqcxStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn optional_text<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

unsafe fn handle<'a>(p: *const SqcxComplex) -> Result<&'a SquareComplex, Failure> {
    p.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure(SqcxStatus::NullPointer, "complex handle is null".to_string()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SqcxStatus::NullPointer, "output pointer is null".to_string()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_complex(out: *mut *mut SqcxComplex, inner: SquareComplex) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SqcxStatus::NullPointer, "output pointer is null".to_string()));
    }
    out.write(Box::into_raw(Box::new(SqcxComplex { inner })));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(SqcxStatus::Internal, "string contains NUL".to_string()))?;
    write_out(out, c.into_raw())
}

fn weights_for(c: &SquareComplex, spec: Option<&str>) -> Result<WeightSystem, Failure> {
    match spec {
        Some(s) => Ok(WeightSystem::parse(s, c.alphabet())?),
        None => Ok(WeightSystem::uniform(c.alphabet().len(), 1)),
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next squarecx call on the same thread.
#[no_mangle]
pub extern "C" fn sqcx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses the text format.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sqcx_complex_parse(spec: *const c_char, out: *mut *mut SqcxComplex) -> SqcxStatus {
    guard(|| {
        let c = parse_spec(text(spec, "text")?)?;
        write_complex(out, c)
    })
}

/// Builds a named complex: lot-a, lot-b, g1, gf, g2 or torus.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sqcx_complex_named(name: *const c_char, out: *mut *mut SqcxComplex) -> SqcxStatus {
    guard(|| {
        let c = build_named(text(name, "name")?)?;
        write_complex(out, c)
    })
}

/// Builds the labeled oriented tree family member with generators
/// `stem0..stem{k}`.
///
/// # Safety
/// `stem` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sqcx_complex_lot(k: usize, stem: *const c_char, out: *mut *mut SqcxComplex) -> SqcxStatus {
    guard(|| {
        let c = build_lot_family(k, text(stem, "stem")?)?;
        write_complex(out, c)
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `complex` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sqcx_complex_free(complex: *mut SqcxComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

/// # Safety
/// `complex` must be a live handle and the out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn sqcx_complex_counts(
    complex: *const SqcxComplex,
    generators: *mut usize,
    squares: *mut usize,
) -> SqcxStatus {
    guard(|| {
        let c = handle(complex)?;
        write_out(generators, c.alphabet().len())?;
        write_out(squares, c.squares().len())
    })
}

/// The complex in the text format.
///
/// # Safety
/// `complex` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sqcx_complex_render(complex: *const SqcxComplex, out: *mut *mut c_char) -> SqcxStatus {
    guard(|| write_string(out, handle(complex)?.render()))
}

/// Whether the link has girth at least 4.
///
/// # Safety
/// `complex` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sqcx_is_large(complex: *const SqcxComplex, out: *mut bool) -> SqcxStatus {
    guard(|| write_out(out, largeness(&build_link(handle(complex)?)).is_large))
}

/// # Safety
/// `complex` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sqcx_poison_count(complex: *const SqcxComplex, out: *mut usize) -> SqcxStatus {
    guard(|| write_out(out, poison_corners(handle(complex)?).len()))
}

/// Kernel rank for a weight specification such as "a=1,b=2"; NULL means
/// every weight is 1.
///
/// # Safety
/// `complex` must be a live handle, `weights` NULL or NUL-terminated, and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sqcx_kernel_rank(
    complex: *const SqcxComplex,
    weights: *const c_char,
    out: *mut i64,
) -> SqcxStatus {
    guard(|| {
        let c = handle(complex)?;
        let ws = weights_for(c, optional_text(weights, "weights")?)?;
        write_out(out, kernel_rank(c, &ws)?)
    })
}

/// Full analysis report as JSON. `weights` may be NULL (every weight 1).
///
/// # Safety
/// `complex` must be a live handle, `weights` NULL or NUL-terminated, and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sqcx_analyze_json(
    complex: *const SqcxComplex,
    weights: *const c_char,
    radius: i64,
    out: *mut *mut c_char,
) -> SqcxStatus {
    guard(|| {
        let c = handle(complex)?;
        let weights: Vec<String> = optional_text(weights, "weights")?.map(String::from).into_iter().collect();
        let report = cli::analyze(c, &weights, radius, None)?;
        let json = serde_json::to_string(&report.json).map_err(|e| Failure(SqcxStatus::Internal, e.to_string()))?;
        write_string(out, json)
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sqcx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
