//! C interface to segrekit.
//!
//! Inputs and jobs are opaque handles created and released by this library.
//! Every fallible call returns a [`SegrekitStatus`]; the message of the last
//! failure on the calling thread is available from [`segrekit_last_error`].
//! Results come back as JSON strings that the caller releases with
//! [`segrekit_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use segrekit::app::{self, Command, JobSpec};
use segrekit::{Error, FieldSpec, InputFile};

/// Status codes. The nonzero values below 6 match the exit codes of the
/// command-line tool.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegrekitStatus {
    Ok = 0,
    Error = 1,
    CheckFailed = 2,
    Genericity = 3,
    Budget = 4,
    Parse = 5,
    NullPointer = 6,
    InvalidUtf8 = 7,
    Panic = 8,
}

/// A parsed ideal file.
pub struct SegrekitInput {
    inner: InputFile,
}

/// A command with its options.
pub struct SegrekitJob {
    inner: JobSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> SegrekitStatus {
    match e {
        Error::CheckFailed(_) => SegrekitStatus::CheckFailed,
        Error::Genericity(_) => SegrekitStatus::Genericity,
        Error::BudgetExceeded(_) => SegrekitStatus::Budget,
        Error::Parse { .. } => SegrekitStatus::Parse,
        _ => SegrekitStatus::Error,
    }
}

fn fail(status: SegrekitStatus, msg: &str) -> SegrekitStatus {
    set_last_error(msg);
    status
}

fn guard(f: impl FnOnce() -> SegrekitStatus) -> SegrekitStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(SegrekitStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, SegrekitStatus> {
    if s.is_null() {
        return Err(fail(SegrekitStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(SegrekitStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn read_slice<'a>(data: *const i64, len: usize) -> Result<&'a [i64], SegrekitStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(fail(SegrekitStatus::NullPointer, "null array argument"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn with_job(
    job: *mut SegrekitJob,
    f: impl FnOnce(&mut JobSpec) -> Result<(), SegrekitStatus>,
) -> SegrekitStatus {
    guard(|| {
        let Some(job) = job.as_mut() else {
            return fail(SegrekitStatus::NullPointer, "null job handle");
        };
        match f(&mut job.inner) {
            Ok(()) => SegrekitStatus::Ok,
            Err(s) => s,
        }
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn segrekit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn segrekit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses the text of an ideal file into `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn segrekit_input_parse(
    text: *const c_char,
    out: *mut *mut SegrekitInput,
) -> SegrekitStatus {
    guard(|| {
        if out.is_null() {
            return fail(SegrekitStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match text.parse::<InputFile>() {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(SegrekitInput { inner }));
                SegrekitStatus::Ok
            }
            Err(e) => fail(status_of(&e), &e.to_string()),
        }
    })
}

/// Number of variables of the ring declared by an input. Returns 0 for null.
///
/// # Safety
/// `input` must be null or a handle from [`segrekit_input_parse`].
#[no_mangle]
pub unsafe extern "C" fn segrekit_input_num_vars(input: *const SegrekitInput) -> usize {
    input.as_ref().map_or(0, |i| i.inner.vars().len())
}

/// Number of generators of an input. Returns 0 for null.
///
/// # Safety
/// `input` must be null or a handle from [`segrekit_input_parse`].
#[no_mangle]
pub unsafe extern "C" fn segrekit_input_num_gens(input: *const SegrekitInput) -> usize {
    input.as_ref().map_or(0, |i| i.inner.num_gens())
}

/// # Safety
/// `input` must be null or a handle from [`segrekit_input_parse`] that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn segrekit_input_free(input: *mut SegrekitInput) {
    if !input.is_null() {
        drop(Box::from_raw(input));
    }
}

/// Creates a job for `command` (`sv`, `segre`, `mass-check`, `gysin`, `mult`,
/// `segre-numbers`, `check-gata1` or `check-roundtrip`) with default options.
///
/// # Safety
/// `command` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn segrekit_job_new(
    command: *const c_char,
    out: *mut *mut SegrekitJob,
) -> SegrekitStatus {
    guard(|| {
        if out.is_null() {
            return fail(SegrekitStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let name = match read_str(command) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match name.parse::<Command>() {
            Ok(c) => {
                *out = Box::into_raw(Box::new(SegrekitJob {
                    inner: JobSpec::new(c),
                }));
                SegrekitStatus::Ok
            }
            Err(e) => fail(status_of(&e), &e.to_string()),
        }
    })
}

/// # Safety
/// `job` must be null or a handle from [`segrekit_job_new`] that has not been
/// freed.
#[no_mangle]
pub unsafe extern "C" fn segrekit_job_free(job: *mut SegrekitJob) {
    if !job.is_null() {
        drop(Box::from_raw(job));
    }
}

/// # Safety
/// `job` must be a live job handle.
#[no_mangle]
pub unsafe extern "C" fn segrekit_job_set_seed(job: *mut SegrekitJob, seed: u64) -> SegrekitStatus {
    with_job(job, |j| {
        j.seed = seed;
        Ok(())
    })
}

/// # Safety
/// `job` must be a live job handle.
#[no_mangle]
pub unsafe extern "C" fn segrekit_job_set_trials(
    job: *mut SegrekitJob,
    trials: usize,
) -> SegrekitStatus {
    with_job(job, |j| {
        j.trials = trials.max(1);
        Ok(())
    })
}

/// Twist of the section family; 0 restores the default.
///
/// # Safety
/// `job` must be a live job handle.
#[no_mangle]
pub unsafe extern "C" fn segrekit_job_set_twist(job: *mut SegrekitJob, twist: u32) -> SegrekitStatus {
    with_job(job, |j| {
        j.twist = (twist > 0).then_some(twist);
        Ok(())
    })
}

/// Maximum S-pairs per Gröbner basis; 0 restores the default.
///
/// # Safety
/// `job` must be a live job handle.
#[no_mangle]
pub unsafe extern "C" fn segrekit_job_set_budget(
    job: *mut SegrekitJob,
    max_pairs: usize,
) -> SegrekitStatus {
    with_job(job, |j| {
        j.budget = (max_pairs > 0).then_some(max_pairs);
        Ok(())
    })
}

/// Field override: `q`, `fp` or `fp:<prime>`; null restores the file's choice.
///
/// # Safety
/// `job` must be a live job handle and `field` null or a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn segrekit_job_set_field(
    job: *mut SegrekitJob,
    field: *const c_char,
) -> SegrekitStatus {
    with_job(job, |j| {
        if field.is_null() {
            j.field = None;
            return Ok(());
        }
        let spec: FieldSpec = read_str(field)?
            .parse()
            .map_err(|e: Error| fail(SegrekitStatus::Error, &e.to_string()))?;
        j.field = Some(spec);
        Ok(())
    })
}

/// Complete-intersection degrees for `check-gata1` and `gysin`.
///
/// # Safety
/// `job` must be a live job handle and `twists` point to `len` integers.
#[no_mangle]
pub unsafe extern "C" fn segrekit_job_set_twists(
    job: *mut SegrekitJob,
    twists: *const i64,
    len: usize,
) -> SegrekitStatus {
    with_job(job, |j| {
        j.twists = read_slice(twists, len)?.to_vec();
        Ok(())
    })
}

/// Expected local dimension for `mult`; negative restores automatic detection.
///
/// # Safety
/// `job` must be a live job handle.
#[no_mangle]
pub unsafe extern "C" fn segrekit_job_set_dim(job: *mut SegrekitJob, dim: i64) -> SegrekitStatus {
    with_job(job, |j| {
        j.dim = usize::try_from(dim).ok();
        Ok(())
    })
}

/// Ambient dimension for `gysin`.
///
/// # Safety
/// `job` must be a live job handle.
#[no_mangle]
pub unsafe extern "C" fn segrekit_job_set_ambient(
    job: *mut SegrekitJob,
    ambient: usize,
) -> SegrekitStatus {
    with_job(job, |j| {
        j.ambient = Some(ambient);
        Ok(())
    })
}

/// Integer class coefficients `c_0, c_1, ...` for `gysin`.
///
/// # Safety
/// `job` must be a live job handle and `coeffs` point to `len` integers.
#[no_mangle]
pub unsafe extern "C" fn segrekit_job_set_class(
    job: *mut SegrekitJob,
    coeffs: *const i64,
    len: usize,
) -> SegrekitStatus {
    with_job(job, |j| {
        j.class = read_slice(coeffs, len)?
            .iter()
            .map(|&c| num::BigRational::from_integer(c.into()))
            .collect();
        Ok(())
    })
}

/// Variable set to 1 before local computations; null clears it.
///
/// # Safety
/// `job` must be a live job handle and `var` null or a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn segrekit_job_set_chart(
    job: *mut SegrekitJob,
    var: *const c_char,
) -> SegrekitStatus {
    with_job(job, |j| {
        j.chart = if var.is_null() {
            None
        } else {
            Some(read_str(var)?.to_string())
        };
        Ok(())
    })
}

/// Point moved to the origin before local computations.
///
/// # Safety
/// `job` must be a live job handle and `coords` point to `len` integers.
#[no_mangle]
pub unsafe extern "C" fn segrekit_job_set_point(
    job: *mut SegrekitJob,
    coords: *const i64,
    len: usize,
) -> SegrekitStatus {
    with_job(job, |j| {
        j.point = read_slice(coords, len)?.to_vec();
        Ok(())
    })
}

/// Runs `job` on `input` (which may be null for `gysin`) and stores the JSON
/// report in `*json_out`. A failed check still produces a report and returns
/// [`SegrekitStatus::CheckFailed`].
///
/// # Safety
/// `job` must be a live job handle, `input` null or a live input handle, and
/// `json_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn segrekit_run(
    job: *const SegrekitJob,
    input: *const SegrekitInput,
    json_out: *mut *mut c_char,
) -> SegrekitStatus {
    guard(|| {
        if json_out.is_null() {
            return fail(SegrekitStatus::NullPointer, "null output pointer");
        }
        *json_out = ptr::null_mut();
        let Some(job) = job.as_ref() else {
            return fail(SegrekitStatus::NullPointer, "null job handle");
        };
        let input = input.as_ref().map(|i| &i.inner);
        match app::run(&job.inner, input) {
            Ok(report) => {
                let json = CString::new(report.to_json_string()).expect("JSON has no NUL");
                *json_out = json.into_raw();
                match report.failure {
                    Some(msg) => fail(SegrekitStatus::CheckFailed, &msg),
                    None => SegrekitStatus::Ok,
                }
            }
            Err(e) => fail(status_of(&e), &e.to_string()),
        }
    })
}

/// Releases a string returned by [`segrekit_run`].
///
/// # Safety
/// `s` must be null or a string from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn segrekit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
