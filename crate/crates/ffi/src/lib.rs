//! C interface.
//!
//! Models and balanced forms are opaque handles created by this library and
//! released with [`wfa_model_free`] / [`wfa_sva_free`]. Every fallible
//! function returns a status code (`WFA_OK` on success) and writes its result
//! through an out pointer. After a failure, [`wfa_last_error`] returns a
//! message for the calling thread.
//!
//! Matrices cross the boundary row-major.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wfa_sva::analysis;
use wfa_sva::gramian::{self, GramianRoute};
use wfa_sva::io;
use wfa_sva::sva::{self, SvaForm};
use wfa_sva::{Error, Wfa};

pub const WFA_OK: i32 = 0;
/// A required pointer argument was null.
pub const WFA_ERR_NULL: i32 = 1;
/// A string argument was not valid UTF-8.
pub const WFA_ERR_UTF8: i32 = 2;
/// Malformed or invalid model, unknown symbol, alphabet mismatch.
pub const WFA_ERR_MODEL: i32 = 3;
/// Argument out of range, or an output buffer is too small.
pub const WFA_ERR_RANGE: i32 = 4;
/// The function is not square summable or a Gramian diverged.
pub const WFA_ERR_NEGATIVE: i32 = 5;
/// Numerical failure (singular matrix, no convergence, ...).
pub const WFA_ERR_NUMERICAL: i32 = 6;
/// Internal panic caught at the boundary.
pub const WFA_ERR_PANIC: i32 = 7;

/// Opaque weighted automaton.
pub struct WfaModel {
    inner: Wfa,
}

/// Opaque singular value automaton together with its singular values.
pub struct WfaSva {
    inner: SvaForm,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::OutOfRange { .. } | Error::HankelCap { .. } => WFA_ERR_RANGE,
            e if e.is_model_error() => WFA_ERR_MODEL,
            e if e.is_analytic_negative() => WFA_ERR_NEGATIVE,
            _ => WFA_ERR_NUMERICAL,
        };
        Fail(code, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(WFA_ERR_NULL, format!("{what} is null"))
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WFA_OK,
        Ok(Err(Fail(code, message))) => {
            set_error(&message);
            code
        }
        Err(_) => {
            set_error("internal panic");
            WFA_ERR_PANIC
        }
    }
}

unsafe fn model_ref<'a>(m: *const WfaModel, what: &str) -> Result<&'a Wfa, Fail> {
    m.as_ref().map(|m| &m.inner).ok_or_else(|| null(what))
}

unsafe fn sva_ref<'a>(s: *const WfaSva) -> Result<&'a SvaForm, Fail> {
    s.as_ref().map(|s| &s.inner).ok_or_else(|| null("sva"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(WFA_ERR_UTF8, format!("{what} is not valid UTF-8")))
}

fn new_model(a: Wfa) -> *mut WfaModel {
    Box::into_raw(Box::new(WfaModel { inner: a }))
}

/// Message describing the last failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wfa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a JSON model document (strict mode).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_model_from_json(json: *const c_char, out: *mut *mut WfaModel) -> i32 {
    guard(|| {
        let out = out_ref(out, "out")?;
        let text = str_arg(json, "json")?;
        *out = new_model(io::parse(text)?);
        Ok(())
    })
}

/// Serializes a model; free the result with [`wfa_string_free`].
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_model_to_json(model: *const WfaModel, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let a = model_ref(model, "model")?;
        let out = out_ref(out, "out")?;
        *out = CString::new(io::serialize(a)).expect("JSON has no nul bytes").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn wfa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `model` must come from this library or be null; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wfa_model_free(model: *mut WfaModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of states.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_model_states(model: *const WfaModel, out: *mut usize) -> i32 {
    guard(|| {
        *out_ref(out, "out")? = model_ref(model, "model")?.states();
        Ok(())
    })
}

/// Alphabet size.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_model_alphabet_size(model: *const WfaModel, out: *mut usize) -> i32 {
    guard(|| {
        *out_ref(out, "out")? = model_ref(model, "model")?.alphabet().len();
        Ok(())
    })
}

/// Evaluates on a word given as symbol indices.
///
/// # Safety
/// `word` must point to `len` readable indices (may be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn wfa_eval(model: *const WfaModel, word: *const usize, len: usize, out: *mut f64) -> i32 {
    guard(|| {
        let a = model_ref(model, "model")?;
        let out = out_ref(out, "out")?;
        let w: &[usize] = if len == 0 {
            &[]
        } else if word.is_null() {
            return Err(null("word"));
        } else {
            std::slice::from_raw_parts(word, len)
        };
        if let Some(&bad) = w.iter().find(|&&i| i >= a.alphabet().len()) {
            return Err(Fail(WFA_ERR_MODEL, format!("symbol index {bad} out of range")));
        }
        *out = a.evaluate_indices(w);
        Ok(())
    })
}

/// Evaluates on a word written as a string of symbols.
///
/// # Safety
/// `word` must be a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn wfa_eval_string(model: *const WfaModel, word: *const c_char, out: *mut f64) -> i32 {
    guard(|| {
        let a = model_ref(model, "model")?;
        let out = out_ref(out, "out")?;
        let w = a.alphabet().tokenize(str_arg(word, "word")?)?;
        *out = a.evaluate(&w)?;
        Ok(())
    })
}

/// Minimal equivalent automaton.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_minimize(model: *const WfaModel, out: *mut *mut WfaModel) -> i32 {
    guard(|| {
        let a = model_ref(model, "model")?;
        let out = out_ref(out, "out")?;
        *out = new_model(wfa_sva::minimize(a).minimal);
        Ok(())
    })
}

/// ℓ² norm; `WFA_ERR_NEGATIVE` when it is infinite.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_norm_l2(model: *const WfaModel, out: *mut f64) -> i32 {
    guard(|| {
        let a = model_ref(model, "model")?;
        *out_ref(out, "out")? = analysis::norm_l2(a)?;
        Ok(())
    })
}

/// ℓ² distance between two models over the same alphabet.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_distance_l2(a: *const WfaModel, b: *const WfaModel, out: *mut f64) -> i32 {
    guard(|| {
        let (a, b) = (model_ref(a, "a")?, model_ref(b, "b")?);
        *out_ref(out, "out")? = analysis::distance_l2(a, b)?;
        Ok(())
    })
}

/// Square-summability test. Writes 1 or 0 to `member` and the decisive
/// spectral radius to `witness` (which may be null).
///
/// # Safety
/// `model` must be a live handle; `member` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_check_l2(model: *const WfaModel, member: *mut i32, witness: *mut f64) -> i32 {
    guard(|| {
        let a = model_ref(model, "model")?;
        let member = out_ref(member, "member")?;
        let r = analysis::check_l2(a)?;
        *member = i32::from(r.member);
        if let Some(w) = witness.as_mut() {
            *w = r.witness;
        }
        Ok(())
    })
}

/// Both Gramians, row-major, into buffers of at least `n * n` doubles.
///
/// # Safety
/// `gp` and `gs` must each point to `capacity` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn wfa_gramians(model: *const WfaModel, gp: *mut f64, gs: *mut f64, capacity: usize) -> i32 {
    guard(|| {
        let a = model_ref(model, "model")?;
        if gp.is_null() || gs.is_null() {
            return Err(null("gramian buffer"));
        }
        let n = a.states();
        if capacity < n * n {
            return Err(Fail(WFA_ERR_RANGE, format!("buffers hold {capacity} values, need {}", n * n)));
        }
        let g = gramian::gramians(a, GramianRoute::Auto)?;
        let (bp, bs) = (std::slice::from_raw_parts_mut(gp, n * n), std::slice::from_raw_parts_mut(gs, n * n));
        for i in 0..n {
            for j in 0..n {
                bp[i * n + j] = g.gp[(i, j)];
                bs[i * n + j] = g.gs[(i, j)];
            }
        }
        Ok(())
    })
}

/// Singular value automaton of the function computed by `model`.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_sva_compute(model: *const WfaModel, out: *mut *mut WfaSva) -> i32 {
    guard(|| {
        let a = model_ref(model, "model")?;
        let out = out_ref(out, "out")?;
        *out = Box::into_raw(Box::new(WfaSva { inner: sva::compute_sva(a)? }));
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library or be null; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wfa_sva_free(s: *mut WfaSva) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of states of the balanced automaton.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_sva_dim(s: *const WfaSva, out: *mut usize) -> i32 {
    guard(|| {
        *out_ref(out, "out")? = sva_ref(s)?.dim();
        Ok(())
    })
}

/// Copies the singular values (descending) into `buf`; `len` receives their
/// count even when `capacity` is too small.
///
/// # Safety
/// `buf` must point to `capacity` writable doubles; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_sva_sigmas(s: *const WfaSva, buf: *mut f64, capacity: usize, len: *mut usize) -> i32 {
    guard(|| {
        let s = sva_ref(s)?;
        let len = out_ref(len, "len")?;
        *len = s.dim();
        if capacity < s.dim() {
            return Err(Fail(WFA_ERR_RANGE, format!("buffer holds {capacity} values, need {}", s.dim())));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        std::slice::from_raw_parts_mut(buf, s.dim()).copy_from_slice(&s.sigmas);
        Ok(())
    })
}

/// The balanced automaton as a new model handle.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_sva_model(s: *const WfaSva, out: *mut *mut WfaModel) -> i32 {
    guard(|| {
        let s = sva_ref(s)?;
        *out_ref(out, "out")? = new_model(s.automaton.clone());
        Ok(())
    })
}

/// Truncation to `n_hat` states. `bound` (may be null) receives the sum of
/// the squared dropped singular values.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_sva_truncate(s: *const WfaSva, n_hat: usize, out: *mut *mut WfaModel, bound: *mut f64) -> i32 {
    guard(|| {
        let s = sva_ref(s)?;
        let out = out_ref(out, "out")?;
        let r = sva::truncate(s, n_hat)?;
        if let Some(b) = bound.as_mut() {
            *b = r.bound;
        }
        *out = new_model(r.truncated);
        Ok(())
    })
}

/// Exact squared ℓ² error of the truncation to `n_hat` states.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfa_sva_exact_error_sq(s: *const WfaSva, n_hat: usize, out: *mut f64) -> i32 {
    guard(|| {
        let s = sva_ref(s)?;
        *out_ref(out, "out")? = analysis::exact_truncation_error_sq(s, n_hat)?;
        Ok(())
    })
}
