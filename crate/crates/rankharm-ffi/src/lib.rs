//! C ABI over `rankharm`.
//!
//! Elements cross the boundary as opaque `RhElement` handles created from
//! JSON and released with `rh_element_free`. Every fallible call returns an
//! `RhStatus`; on failure `rh_last_error` describes the most recent error on
//! the calling thread. Strings returned through `char **` belong to the
//! caller and must be released with `rh_string_free`.

use rankharm::element::Element;
use rankharm::heisenberg::{quad_to_ext, HeisQuad};
use rankharm::suites::run_suite;
use rankharm::value_group::GammaElement;
use rankharm::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Outcome of a call across the C boundary.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    Mismatch = 4,
    InvalidInput = 5,
    Arithmetic = 6,
    Overflow = 7,
    Panic = 8,
}

/// A rank-two function or distribution.
pub struct RhElement(Element);

/// Coordinates `(a, b, c, m)` of the extended Heisenberg group.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RhQuad {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub m: i64,
}

impl From<RhQuad> for HeisQuad {
    fn from(q: RhQuad) -> Self {
        HeisQuad::new(q.a, q.b, q.c, q.m)
    }
}

impl From<HeisQuad> for RhQuad {
    fn from(q: HeisQuad) -> Self {
        RhQuad { a: q.a, b: q.b, c: q.c, m: q.m }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> RhStatus {
    match e {
        Error::Parse(_) => RhStatus::Parse,
        Error::PrimeMismatch(..) | Error::EndpointMismatch(_) | Error::FiberMismatch(..) | Error::BasePointMismatch(_) => {
            RhStatus::Mismatch
        }
        Error::DivisionByZero | Error::Pole(_) | Error::ZeroMeasure => RhStatus::Arithmetic,
        Error::WindowOverflow(_) => RhStatus::Overflow,
        _ => RhStatus::InvalidInput,
    }
}

struct Fail(RhStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> RhStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            RhStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RhStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(RhStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(RhStatus::Utf8, e.to_string()))
}

unsafe fn read_element<'a>(p: *const RhElement) -> Result<&'a Element, Fail> {
    p.as_ref().map(|e| &e.0).ok_or_else(|| Fail(RhStatus::NullPointer, "null element".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(RhStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|e| Fail(RhStatus::Utf8, e.to_string()))?;
    write_out(out, c.into_raw())
}

unsafe fn write_element(out: *mut *mut RhElement, e: Element) -> Result<(), Fail> {
    write_out(out, Box::into_raw(Box::new(RhElement(e))))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn rh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a `rank2fn` or `rank2dist` JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_element_from_json(json: *const c_char, out: *mut *mut RhElement) -> RhStatus {
    guard(|| {
        let text = read_str(json)?;
        write_element(out, Element::parse(text)?)
    })
}

/// Serializes an element to JSON.
///
/// # Safety
/// `elem` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_element_to_json(elem: *const RhElement, out: *mut *mut c_char) -> RhStatus {
    guard(|| write_string(out, read_element(elem)?.to_json()?))
}

/// Returns 1 for a function, 0 for a distribution, −1 for a null handle.
///
/// # Safety
/// `elem` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn rh_element_is_function(elem: *const RhElement) -> i32 {
    match elem.as_ref() {
        Some(RhElement(Element::Function(_))) => 1,
        Some(_) => 0,
        None => -1,
    }
}

/// Fourier transform with parameter `(gamma_n, gamma_p)`.
///
/// # Safety
/// `elem` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_element_fourier(
    elem: *const RhElement,
    gamma_n: i64,
    gamma_p: i64,
    out: *mut *mut RhElement,
) -> RhStatus {
    guard(|| {
        let x = read_element(elem)?;
        write_element(out, x.fourier(GammaElement::new(gamma_n, gamma_p))?)
    })
}

/// Action of the extended group element with coordinates `g`; the element
/// must live over the base point `(0, −∞)`.
///
/// # Safety
/// `elem` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_element_act_quad(elem: *const RhElement, g: RhQuad, out: *mut *mut RhElement) -> RhStatus {
    guard(|| {
        let x = read_element(elem)?;
        write_element(out, x.act_ext(&quad_to_ext(&g.into()))?)
    })
}

/// Pairing of a function with a distribution, in either order, as a scalar string.
///
/// # Safety
/// Both handles must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_pair(a: *const RhElement, b: *const RhElement, out: *mut *mut c_char) -> RhStatus {
    guard(|| {
        let v = read_element(a)?.pair(read_element(b)?)?;
        write_string(out, v.to_canonical_string())
    })
}

/// Releases an element; null is ignored.
///
/// # Safety
/// `elem` must be null or come from this library, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rh_element_free(elem: *mut RhElement) {
    if !elem.is_null() {
        drop(Box::from_raw(elem));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Product in the extended Heisenberg group.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_quad_mul(x: RhQuad, y: RhQuad, out: *mut RhQuad) -> RhStatus {
    guard(|| write_out(out, HeisQuad::from(x).mul(&y.into()).into()))
}

/// Inverse in the extended Heisenberg group.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rh_quad_inverse(x: RhQuad, out: *mut RhQuad) -> RhStatus {
    guard(|| write_out(out, HeisQuad::from(x).inverse().into()))
}

/// Runs a verification suite; `passed` receives 1 when every check passes.
/// `report_json` may be null; otherwise it receives the full report.
///
/// # Safety
/// `suite` must be a NUL-terminated string, `passed` a valid pointer, and
/// `report_json` null or valid.
#[no_mangle]
pub unsafe extern "C" fn rh_verify(
    suite: *const c_char,
    seed: u64,
    size: usize,
    passed: *mut i32,
    report_json: *mut *mut c_char,
) -> RhStatus {
    guard(|| {
        let report = run_suite(read_str(suite)?, seed, size)?;
        write_out(passed, i32::from(report.passed()))?;
        if !report_json.is_null() {
            write_string(report_json, report.to_json()?)?;
        }
        Ok(())
    })
}
