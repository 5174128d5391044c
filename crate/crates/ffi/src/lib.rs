//! C ABI for gop-core.
//!
//! Operators live behind an opaque `GopOperator` handle. Every entry point
//! returns an integer status (`GOP_OK` on success); results come back through
//! out-pointers. Strings handed to the caller are NUL-terminated, owned by the
//! caller, and must be released with `gop_string_free`. No panic crosses the
//! boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gop_core::catalog;
use gop_core::cli::{self, parse_operator, print_operator};
use gop_core::diffop::DiffOp;
use gop_core::local::classify_operator;
use gop_core::pcurv::{global_scan, PStatus, ScanTarget};
use gop_core::Error;

pub const GOP_OK: i32 = 0;
pub const GOP_ERR_NULL_POINTER: i32 = 1;
pub const GOP_ERR_UTF8: i32 = 2;
pub const GOP_ERR_PARSE: i32 = 3;
pub const GOP_ERR_MIXED_BASIS: i32 = 4;
pub const GOP_ERR_BAD_PRIME: i32 = 5;
pub const GOP_ERR_INVALID_ARGUMENT: i32 = 6;
pub const GOP_ERR_UNKNOWN_CATALOG_ID: i32 = 7;
pub const GOP_ERR_DOMAIN: i32 = 8;
pub const GOP_ERR_PANIC: i32 = 9;

pub const GOP_STATUS_NILPOTENT: i32 = 0;
pub const GOP_STATUS_NON_NILPOTENT: i32 = 1;
pub const GOP_STATUS_BAD_PRIME: i32 = 2;

/// Opaque differential operator.
pub struct GopOperator {
    op: DiffOp,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => GOP_ERR_PARSE,
        Error::MixedBasis => GOP_ERR_MIXED_BASIS,
        Error::BadPrime { .. } => GOP_ERR_BAD_PRIME,
        Error::InvalidParameters(_) => GOP_ERR_INVALID_ARGUMENT,
        Error::UnknownCatalogId(_) => GOP_ERR_UNKNOWN_CATALOG_ID,
        _ => GOP_ERR_DOMAIN,
    }
}

/// Run `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), i32>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GOP_OK,
        Ok(Err(code)) => code,
        Err(_) => {
            set_last_error("internal panic");
            GOP_ERR_PANIC
        }
    }
}

fn fail(e: Error) -> i32 {
    set_last_error(&e.to_string());
    code_of(&e)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, i32> {
    if s.is_null() {
        set_last_error("null string argument");
        return Err(GOP_ERR_NULL_POINTER);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_last_error("string argument is not UTF-8");
        GOP_ERR_UTF8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), i32> {
    if out.is_null() {
        set_last_error("null output pointer");
        return Err(GOP_ERR_NULL_POINTER);
    }
    *out = CString::new(s.replace('\0', " "))
        .expect("no interior NUL")
        .into_raw();
    Ok(())
}

unsafe fn handle<'a>(h: *const GopOperator) -> Result<&'a GopOperator, i32> {
    h.as_ref().ok_or_else(|| {
        set_last_error("null operator handle");
        GOP_ERR_NULL_POINTER
    })
}

unsafe fn emit_handle(out: *mut *mut GopOperator, op: DiffOp) -> Result<(), i32> {
    if out.is_null() {
        set_last_error("null output pointer");
        return Err(GOP_ERR_NULL_POINTER);
    }
    *out = Box::into_raw(Box::new(GopOperator { op }));
    Ok(())
}

/// Parse an operator expression such as `"(1-z)*D^2 - D"`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gop_operator_parse(
    text: *const c_char,
    out: *mut *mut GopOperator,
) -> i32 {
    guard(|| {
        let t = read_str(text)?;
        let op = parse_operator(t).map_err(fail)?;
        emit_handle(out, op)
    })
}

/// Operator of a catalog entry, e.g. `"polylog:2"`.
///
/// # Safety
/// `id` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gop_operator_from_catalog(
    id: *const c_char,
    out: *mut *mut GopOperator,
) -> i32 {
    guard(|| {
        let t = read_str(id)?;
        let e = catalog::get(t).map_err(fail)?;
        emit_handle(out, e.operator)
    })
}

/// Release a handle. Null is accepted.
///
/// # Safety
/// `op` must be null or come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gop_operator_free(op: *mut GopOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gop_operator_order(op: *const GopOperator, out: *mut usize) -> i32 {
    guard(|| {
        let h = handle(op)?;
        if out.is_null() {
            set_last_error("null output pointer");
            return Err(GOP_ERR_NULL_POINTER);
        }
        *out = h.op.order();
        Ok(())
    })
}

/// Normal-form text of the operator; parseable by `gop_operator_parse`.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gop_operator_to_string(
    op: *const GopOperator,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let h = handle(op)?;
        write_string(out, print_operator(&h.op))
    })
}

/// Singularity and exponent profile as JSON.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gop_classify_json(op: *const GopOperator, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let h = handle(op)?;
        let v = cli::report::profile(&classify_operator(&h.op));
        write_string(out, v.to_string())
    })
}

/// p-curvature status at one prime: one of the `GOP_STATUS_*` values.
///
/// # Safety
/// `op` must be a live handle and `status` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gop_pcurvature_status(
    op: *const GopOperator,
    p: u64,
    status: *mut i32,
) -> i32 {
    guard(|| {
        let h = handle(op)?;
        if status.is_null() {
            set_last_error("null output pointer");
            return Err(GOP_ERR_NULL_POINTER);
        }
        let scan = global_scan("ffi", &ScanTarget::Operator(h.op.clone()), &[p]).map_err(fail)?;
        *status = match scan.reports[0].status {
            PStatus::Nilpotent => GOP_STATUS_NILPOTENT,
            PStatus::NonNilpotent => GOP_STATUS_NON_NILPOTENT,
            PStatus::BadPrime => GOP_STATUS_BAD_PRIME,
        };
        Ok(())
    })
}

/// Scan of all primes in [lo, hi] as JSON.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gop_scan_json(
    op: *const GopOperator,
    lo: u64,
    hi: u64,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let h = handle(op)?;
        if lo > hi {
            set_last_error("empty prime range");
            return Err(GOP_ERR_INVALID_ARGUMENT);
        }
        let primes = gop_core::arith::rational::primes_in(lo, hi);
        let scan =
            global_scan("ffi", &ScanTarget::Operator(h.op.clone()), &primes).map_err(fail)?;
        write_string(out, cli::report::scan(&scan).to_string())
    })
}

/// Run the command-line front end on `argv` (without the program name).
/// The report goes to `out_stdout`; the process-style exit code (0, 1 or 2)
/// goes to `exit_code`.
///
/// # Safety
/// `argv` must point to `argc` valid NUL-terminated strings; the out
/// pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gop_cli_run(
    argc: usize,
    argv: *const *const c_char,
    out_stdout: *mut *mut c_char,
    exit_code: *mut i32,
) -> i32 {
    guard(|| {
        if (argv.is_null() && argc > 0) || exit_code.is_null() {
            set_last_error("null argument");
            return Err(GOP_ERR_NULL_POINTER);
        }
        let mut args = vec!["gop".to_string()];
        for i in 0..argc {
            args.push(read_str(*argv.add(i))?.to_string());
        }
        let o = cli::run_command(args);
        *exit_code = o.code;
        write_string(out_stdout, o.stdout)
    })
}

/// Release a string returned by this library. Null is accepted.
///
/// # Safety
/// `s` must be null or come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gop_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn gop_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn gop_status_description(code: i32) -> *const c_char {
    let s: &'static CStr = match code {
        GOP_OK => c"ok",
        GOP_ERR_NULL_POINTER => c"null pointer",
        GOP_ERR_UTF8 => c"invalid UTF-8",
        GOP_ERR_PARSE => c"parse error",
        GOP_ERR_MIXED_BASIS => c"mixed D and theta",
        GOP_ERR_BAD_PRIME => c"bad prime",
        GOP_ERR_INVALID_ARGUMENT => c"invalid argument",
        GOP_ERR_UNKNOWN_CATALOG_ID => c"unknown catalog id",
        GOP_ERR_DOMAIN => c"domain error",
        GOP_ERR_PANIC => c"internal panic",
        _ => c"unknown status",
    };
    s.as_ptr()
}
