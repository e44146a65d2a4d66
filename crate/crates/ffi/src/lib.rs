//! C interface: opaque handles, integer status codes and a thread-local error message.
//!
//! Every function returns a [`CdglStatus`] and writes results through out-pointers.
//! Strings handed out by the library are freed with [`cdgl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cdgl_core::cosimplicial::{build_ln, default_truncation};
use cdgl_core::lie::format::{parse_presentation, write_presentation};
use cdgl_core::lie::FreeCdglPresentation;
use cdgl_core::quillen::{FiniteSimplicialSet, Lambda};
use cdgl_core::verify::{run_suite, SuiteOptions, VerificationReport};
use cdgl_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdglStatus {
    Ok = 0,
    NullPointer = 1,
    Input = 2,
    Precondition = 3,
    Consistency = 4,
    Verification = 5,
    Panic = 6,
}

/// A dgl presentation together with its canonical JSON text.
pub struct CdglPresentation {
    presentation: FreeCdglPresentation,
    text: String,
}

pub struct CdglSimplicialSet(FiniteSimplicialSet);

pub struct CdglReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CdglStatus {
    match e {
        Error::Input(_) | Error::Json(_) | Error::Io(_) => CdglStatus::Input,
        Error::Precondition(_) => CdglStatus::Precondition,
        Error::Consistency(_) => CdglStatus::Consistency,
        Error::Verification(_) => CdglStatus::Verification,
    }
}

enum Fail {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CdglStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CdglStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            CdglStatus::NullPointer
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            CdglStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Core(Error::input(format!("{what} is not UTF-8"))))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: &str) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail::Core(Error::consistency("string contains a nul byte")))
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn cdgl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn cdgl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build `L_n`. A `truncation` of 0 selects the default for `n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdgl_build_ln(n: usize, truncation: usize, out: *mut *mut CdglPresentation) -> CdglStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let t = if truncation == 0 { default_truncation(n) } else { truncation };
        let ln = build_ln(n, t)?;
        let text = ln.to_text();
        let h = Box::new(CdglPresentation {
            presentation: ln.presentation,
            text,
        });
        write_out(out, Box::into_raw(h), "out")
    })
}

/// Parse a presentation from its JSON text.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdgl_presentation_parse(json: *const c_char, out: *mut *mut CdglPresentation) -> CdglStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let (presentation, extra) = parse_presentation(text)?;
        let extras: Vec<(&str, _)> = extra.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
        let text = write_presentation(&presentation, &extras);
        write_out(out, Box::into_raw(Box::new(CdglPresentation { presentation, text })), "out")
    })
}

/// Canonical JSON text; free with [`cdgl_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdgl_presentation_to_json(p: *const CdglPresentation, out: *mut *mut c_char) -> CdglStatus {
    guard(|| {
        let p = handle(p, "presentation")?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        write_out(out, c_string(&p.text)?, "out")
    })
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdgl_presentation_generator_count(p: *const CdglPresentation, out: *mut usize) -> CdglStatus {
    guard(|| {
        let p = handle(p, "presentation")?;
        write_out(out, p.presentation.generators().len(), "out")
    })
}

/// Whether `d^2 = 0` holds on every generator.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdgl_presentation_d_squared_zero(p: *const CdglPresentation, out: *mut bool) -> CdglStatus {
    guard(|| {
        let p = handle(p, "presentation")?;
        write_out(out, p.presentation.check_d_squared().passed(), "out")
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cdgl_presentation_free(p: *mut CdglPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Read a finite simplicial set from its JSON description.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdgl_sset_parse(json: *const c_char, out: *mut *mut CdglSimplicialSet) -> CdglStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let x = FiniteSimplicialSet::from_json(text)?;
        write_out(out, Box::into_raw(Box::new(CdglSimplicialSet(x))), "out")
    })
}

/// # Safety
/// `x` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cdgl_sset_free(x: *mut CdglSimplicialSet) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Dimensions of `H_k(lambda X)` for `k = 1..=cap`, written to `dims[0..cap]`.
///
/// # Safety
/// `x` must be a live handle and `dims` must have room for `len >= cap` entries.
#[no_mangle]
pub unsafe extern "C" fn cdgl_lambda_homology(
    x: *const CdglSimplicialSet,
    truncation: usize,
    cap: usize,
    dims: *mut usize,
    len: usize,
) -> CdglStatus {
    guard(|| {
        let x = handle(x, "simplicial set")?;
        if dims.is_null() {
            return Err(Fail::Null("dims"));
        }
        if len < cap {
            return Err(Error::input(format!("buffer holds {len} entries, {cap} needed")).into());
        }
        let h = Lambda::new(x.0.clone(), truncation, cap)?.homology_dims();
        std::slice::from_raw_parts_mut(dims, cap).copy_from_slice(&h);
        Ok(())
    })
}

/// Run a verification suite by name. Zero `truncation` or `cap` selects the
/// suite's default; `model` may be null for `s2`. Timings are omitted.
///
/// # Safety
/// `suite` and `model` (if non-null) must be nul-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdgl_verify(
    suite: *const c_char,
    truncation: usize,
    cap: usize,
    seed: u64,
    model: *const c_char,
    out: *mut *mut CdglReport,
) -> CdglStatus {
    guard(|| {
        let suite = str_arg(suite, "suite")?.parse()?;
        let mut opts = SuiteOptions {
            truncation: (truncation > 0).then_some(truncation),
            cap: (cap > 0).then_some(cap),
            seed,
            ..Default::default()
        };
        if !model.is_null() {
            opts.model = str_arg(model, "model")?.parse()?;
        }
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let r = run_suite(suite, &opts)?.without_timings();
        write_out(out, Box::into_raw(Box::new(CdglReport(r))), "out")
    })
}

/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdgl_report_passed(r: *const CdglReport, out: *mut bool) -> CdglStatus {
    guard(|| {
        let r = handle(r, "report")?;
        write_out(out, r.0.passed(), "out")
    })
}

/// Report as JSON; free with [`cdgl_string_free`].
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cdgl_report_to_json(r: *const CdglReport, out: *mut *mut c_char) -> CdglStatus {
    guard(|| {
        let r = handle(r, "report")?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        write_out(out, c_string(&r.0.to_json())?, "out")
    })
}

/// # Safety
/// `r` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cdgl_report_free(r: *mut CdglReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
