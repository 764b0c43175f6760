//! C interface to `lambek`.
//!
//! Programs are opaque handles created by [`lb_program_parse`] and released
//! with [`lb_program_free`]. Every fallible call returns an [`LbStatus`];
//! on failure [`lb_last_error`] describes what went wrong on the calling
//! thread. Strings handed out by the library are freed with
//! [`lb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lambek::check::{check_program, Mode};
use lambek::enumerate::{count_inhabitants, SearchBudget};
use lambek::eval::{EvalError, Evaluator};
use lambek::syntax::{parse_program, parse_type, Expr, Program};
use thiserror::Error;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LbStatus {
    Ok = 0,
    /// A declaration was rejected by the checker.
    Rejected = 1,
    ParseError = 2,
    NullArgument = 3,
    InvalidUtf8 = 4,
    UnknownDeclaration = 5,
    OutOfFuel = 6,
    EvalError = 7,
    Unsupported = 8,
    /// A Rust panic was caught at the boundary.
    Internal = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LbMode {
    Ordered = 0,
    Linear = 1,
    Unrestricted = 2,
}

impl From<LbMode> for Mode {
    fn from(m: LbMode) -> Self {
        match m {
            LbMode::Ordered => Mode::Ordered,
            LbMode::Linear => Mode::Linear,
            LbMode::Unrestricted => Mode::Unrestricted,
        }
    }
}

/// A parsed program.
pub struct LbProgram {
    program: Program,
}

#[derive(Debug, Error)]
enum FfiError {
    #[error("argument `{0}` is null")]
    Null(&'static str),
    #[error("argument `{0}` is not valid UTF-8")]
    Utf8(&'static str),
    #[error("parse error at {0}")]
    Parse(String),
    #[error("no declaration named `{0}`")]
    UnknownDeclaration(String),
    #[error("`{name}` rejected: {reason}")]
    Rejected { name: String, reason: String },
    #[error("evaluation of `{0}` ran out of fuel")]
    OutOfFuel(String),
    #[error("evaluation of `{name}` failed: {source}")]
    Eval { name: String, source: EvalError },
    #[error("{0}")]
    Unsupported(String),
}

impl FfiError {
    fn status(&self) -> LbStatus {
        match self {
            FfiError::Null(_) => LbStatus::NullArgument,
            FfiError::Utf8(_) => LbStatus::InvalidUtf8,
            FfiError::Parse(_) => LbStatus::ParseError,
            FfiError::UnknownDeclaration(_) => LbStatus::UnknownDeclaration,
            FfiError::Rejected { .. } => LbStatus::Rejected,
            FfiError::OutOfFuel(_) => LbStatus::OutOfFuel,
            FfiError::Eval { .. } => LbStatus::EvalError,
            FfiError::Unsupported(_) => LbStatus::Unsupported,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', "?")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<LbStatus, FfiError>) -> LbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            status
        }
        Ok(Err(e)) => {
            set_last_error(&e.to_string());
            e.status()
        }
        Err(_) => {
            set_last_error("internal error: panic in lambek");
            LbStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, FfiError> {
    if p.is_null() {
        return Err(FfiError::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| FfiError::Utf8(what))
}

unsafe fn handle<'a>(p: *const LbProgram) -> Result<&'a Program, FfiError> {
    p.as_ref()
        .map(|h| &h.program)
        .ok_or(FfiError::Null("program"))
}

fn out<T>(p: *mut T, what: &'static str) -> Result<*mut T, FfiError> {
    if p.is_null() {
        Err(FfiError::Null(what))
    } else {
        Ok(p)
    }
}

/// Parses `source` into a new program handle stored in `*out_program`.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out_program` a valid
/// pointer. The handle must be released with `lb_program_free`.
#[no_mangle]
pub unsafe extern "C" fn lb_program_parse(
    source: *const c_char,
    out_program: *mut *mut LbProgram,
) -> LbStatus {
    guard(|| {
        let out_program = out(out_program, "out_program")?;
        *out_program = ptr::null_mut();
        let src = text(source, "source")?;
        let program = parse_program(src).map_err(|e| FfiError::Parse(e.to_string()))?;
        *out_program = Box::into_raw(Box::new(LbProgram { program }));
        Ok(LbStatus::Ok)
    })
}

/// Releases a program handle. Null is ignored.
///
/// # Safety
/// `program` must come from `lb_program_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lb_program_free(program: *mut LbProgram) {
    if !program.is_null() {
        drop(Box::from_raw(program));
    }
}

/// Number of declarations in the program, or 0 for a null handle.
///
/// # Safety
/// `program` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lb_program_declaration_count(program: *const LbProgram) -> usize {
    program.as_ref().map_or(0, |h| h.program.declarations.len())
}

/// Checks every declaration. Returns `LB_STATUS_OK` when all are accepted and
/// `LB_STATUS_REJECTED` otherwise; `*out_rejected` receives the number of
/// rejected declarations.
///
/// # Safety
/// `program` must be a live handle and `out_rejected` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lb_program_check(
    program: *const LbProgram,
    mode: LbMode,
    out_rejected: *mut usize,
) -> LbStatus {
    guard(|| {
        let out_rejected = out(out_rejected, "out_rejected")?;
        let p = handle(program)?;
        let verdicts = check_program(p, mode.into());
        let rejected: Vec<_> = verdicts.iter().filter(|v| !v.verdict.accepted).collect();
        *out_rejected = rejected.len();
        match rejected.first() {
            None => Ok(LbStatus::Ok),
            Some(v) => Err(FfiError::Rejected {
                name: v.name.clone(),
                reason: v
                    .verdict
                    .diagnostics
                    .first()
                    .map_or_else(String::new, |d| d.to_string()),
            }),
        }
    })
}

/// Evaluates declaration `name` with at most `fuel` steps and stores its
/// printed value in `*out_value`, to be freed with `lb_string_free`. The
/// declaration is checked first.
///
/// # Safety
/// `program` must be a live handle, `name` a NUL-terminated string and
/// `out_value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lb_program_eval(
    program: *const LbProgram,
    name: *const c_char,
    mode: LbMode,
    fuel: u64,
    out_value: *mut *mut c_char,
) -> LbStatus {
    guard(|| {
        let out_value = out(out_value, "out_value")?;
        *out_value = ptr::null_mut();
        let p = handle(program)?;
        let name = text(name, "name")?;
        if p.declaration(name).is_none() {
            return Err(FfiError::UnknownDeclaration(name.to_string()));
        }
        let verdicts = check_program(p, mode.into());
        let v = verdicts
            .iter()
            .find(|v| v.name == name)
            .expect("one verdict per declaration");
        if let Some(d) = v.verdict.diagnostics.first() {
            return Err(FfiError::Rejected {
                name: name.to_string(),
                reason: d.to_string(),
            });
        }
        let value = Evaluator::new(fuel)
            .with_globals(p)
            .eval(&Expr::var(name))
            .map_err(|e| match e {
                EvalError::OutOfFuel => FfiError::OutOfFuel(name.to_string()),
                source => FfiError::Eval {
                    name: name.to_string(),
                    source,
                },
            })?;
        let shown = CString::new(value.to_string()).expect("printed values contain no NUL");
        *out_value = shown.into_raw();
        Ok(LbStatus::Ok)
    })
}

/// Counts the normal inhabitants of the closed type `type_text` under the
/// default search budget.
///
/// # Safety
/// `type_text` must be a NUL-terminated string; the out pointers must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn lb_count_inhabitants(
    type_text: *const c_char,
    mode: LbMode,
    out_count: *mut usize,
    out_truncated: *mut bool,
) -> LbStatus {
    guard(|| {
        let out_count = out(out_count, "out_count")?;
        let out_truncated = out(out_truncated, "out_truncated")?;
        let ty = parse_type(text(type_text, "type_text")?)
            .map_err(|e| FfiError::Parse(e.to_string()))?;
        let (n, truncated) = count_inhabitants(&ty, mode.into(), SearchBudget::default())
            .map_err(|e| FfiError::Unsupported(e.to_string()))?;
        *out_count = n;
        *out_truncated = truncated;
        Ok(LbStatus::Ok)
    })
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn lb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
