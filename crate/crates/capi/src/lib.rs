//! C ABI for the invariant-algebra library.
//!
//! Conventions:
//! - Every string returned by this library is a fresh NUL-terminated
//!   UTF-8 allocation; release it with [`ia_string_free`].
//! - Functions returning `IaStatus` report `IA_STATUS_OK` (0) on success,
//!   `IA_STATUS_DOMAIN_ERROR` (1) for mathematical failures, and
//!   `IA_STATUS_USAGE_ERROR` (2) for malformed input. The most recent
//!   error message is available per thread via [`ia_last_error`].
//! - Vector fields can be held as opaque [`IaField`] handles created from
//!   their JSON form; handles must be released with [`ia_field_free`].
//! - All payloads are the same JSON documents the command-line tool reads
//!   and writes.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use invariant_algebra::cli::{ops, CliError};
use invariant_algebra::parse_io::vector_field_to_json;
use invariant_algebra::poly::PolyVectorField;

/// Status codes mirroring the command-line exit codes.
pub const IA_STATUS_OK: c_int = 0;
pub const IA_STATUS_DOMAIN_ERROR: c_int = 1;
pub const IA_STATUS_USAGE_ERROR: c_int = 2;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let cstring = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &CliError) -> c_int {
    err.exit_code() as c_int
}

/// Opaque handle to a parsed polynomial vector field.
pub struct IaField {
    inner: PolyVectorField,
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, ()> {
    if ptr.is_null() {
        return Err(());
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| ())
}

fn give_string(s: String, out: *mut *mut c_char) -> c_int {
    let cstring = match CString::new(s) {
        Ok(c) => c,
        Err(_) => {
            set_error("output contained an interior NUL byte");
            return IA_STATUS_DOMAIN_ERROR;
        }
    };
    if out.is_null() {
        set_error("output pointer is null");
        return IA_STATUS_USAGE_ERROR;
    }
    unsafe { *out = cstring.into_raw() };
    clear_error();
    IA_STATUS_OK
}

fn run_op(result: Result<String, CliError>, out: *mut *mut c_char) -> c_int {
    match result {
        Ok(json) => give_string(json, out),
        Err(err) => {
            set_error(&invariant_algebra::cli::error_json(&err));
            status_of(&err)
        }
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn ia_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Most recent error on this thread as a JSON document, or NULL when the
/// last call succeeded. Do not free; the buffer is reused by later calls.
#[no_mangle]
pub extern "C" fn ia_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow().as_ref().map(|c| c.as_ptr()).unwrap_or(ptr::null())
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through an `out_json`
/// parameter of this library and not yet freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ia_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a vector field from its JSON document into an opaque handle.
/// Returns NULL on failure (consult [`ia_last_error`]).
///
/// # Safety
/// `field_json` must point to a NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn ia_field_from_json(field_json: *const c_char) -> *mut IaField {
    let Ok(text) = read_str(field_json) else {
        set_error("field_json must be valid UTF-8 and non-null");
        return ptr::null_mut();
    };
    match invariant_algebra::cli::field_from_json_str(text) {
        Ok(inner) => {
            clear_error();
            Box::into_raw(Box::new(IaField { inner }))
        }
        Err(err) => {
            set_error(&invariant_algebra::cli::error_json(&err));
            ptr::null_mut()
        }
    }
}

/// Release a field handle.
///
/// # Safety
/// `field` must come from [`ia_field_from_json`] and not be freed twice;
/// NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ia_field_free(field: *mut IaField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Dimension n of the field, or -1 for NULL.
///
/// # Safety
/// `field` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ia_field_dimension(field: *const IaField) -> c_int {
    match field.as_ref() {
        Some(f) => f.inner.dim() as c_int,
        None => -1,
    }
}

/// Total degree m of the field, or -1 for NULL.
///
/// # Safety
/// `field` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ia_field_degree(field: *const IaField) -> c_int {
    match field.as_ref() {
        Some(f) => f.inner.degree() as c_int,
        None => -1,
    }
}

/// Serialize the handle back to its canonical JSON document.
///
/// # Safety
/// `field` must be a live handle; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ia_field_to_json(
    field: *const IaField,
    out_json: *mut *mut c_char,
) -> c_int {
    let Some(f) = field.as_ref() else {
        set_error("field handle is null");
        return IA_STATUS_USAGE_ERROR;
    };
    let json = serde_json::to_string_pretty(&vector_field_to_json(&f.inner))
        .expect("serialization cannot fail");
    give_string(json, out_json)
}

/// Construct the distinguished quadratic field for a prescription
/// document; the result JSON includes the seventh-idempotent report.
///
/// # Safety
/// `gamma_json` must be a NUL-terminated UTF-8 string; `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn ia_construct(
    gamma_json: *const c_char,
    out_json: *mut *mut c_char,
) -> c_int {
    let Ok(text) = read_str(gamma_json) else {
        set_error("gamma_json must be valid UTF-8 and non-null");
        return IA_STATUS_USAGE_ERROR;
    };
    run_op(ops::construct(text), out_json)
}

/// Certify the eigenvalue dichotomy at the supplied invariant lines.
///
/// # Safety
/// `field` must be a live handle; `lines_json` a NUL-terminated UTF-8
/// string; `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn ia_analyze(
    field: *const IaField,
    lines_json: *const c_char,
    precision_bits: u32,
    out_json: *mut *mut c_char,
) -> c_int {
    let Some(f) = field.as_ref() else {
        set_error("field handle is null");
        return IA_STATUS_USAGE_ERROR;
    };
    let Ok(lines) = read_str(lines_json) else {
        set_error("lines_json must be valid UTF-8 and non-null");
        return IA_STATUS_USAGE_ERROR;
    };
    let field_json = serde_json::to_string(&vector_field_to_json(&f.inner))
        .expect("serialization cannot fail");
    run_op(ops::analyze(&field_json, lines, precision_bits), out_json)
}

/// Verify one polynomial as a semi-invariant of the field.
///
/// # Safety
/// `field` live handle, `psi_text` NUL-terminated UTF-8, `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn ia_semi_verify(
    field: *const IaField,
    psi_text: *const c_char,
    out_json: *mut *mut c_char,
) -> c_int {
    let Some(f) = field.as_ref() else {
        set_error("field handle is null");
        return IA_STATUS_USAGE_ERROR;
    };
    let Ok(psi) = read_str(psi_text) else {
        set_error("psi_text must be valid UTF-8 and non-null");
        return IA_STATUS_USAGE_ERROR;
    };
    let field_json = serde_json::to_string(&vector_field_to_json(&f.inner))
        .expect("serialization cannot fail");
    run_op(ops::semi_verify(&field_json, psi), out_json)
}

/// Search all semi-invariants of degree at most `dmax`; `budget` of 0
/// selects the default elimination cap.
///
/// # Safety
/// `field` live handle, `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn ia_semi_search(
    field: *const IaField,
    dmax: u64,
    budget: u64,
    out_json: *mut *mut c_char,
) -> c_int {
    let Some(f) = field.as_ref() else {
        set_error("field handle is null");
        return IA_STATUS_USAGE_ERROR;
    };
    let field_json = serde_json::to_string(&vector_field_to_json(&f.inner))
        .expect("serialization cannot fail");
    let budget = if budget == 0 { None } else { Some(budget) };
    run_op(ops::semi_search(&field_json, dmax, budget), out_json)
}

/// Check the multiplier identity for a factor document.
///
/// # Safety
/// `field` live handle, `factors_json` NUL-terminated UTF-8, `out_json`
/// valid.
#[no_mangle]
pub unsafe extern "C" fn ia_multiplier(
    field: *const IaField,
    factors_json: *const c_char,
    out_json: *mut *mut c_char,
) -> c_int {
    let Some(f) = field.as_ref() else {
        set_error("field handle is null");
        return IA_STATUS_USAGE_ERROR;
    };
    let Ok(factors) = read_str(factors_json) else {
        set_error("factors_json must be valid UTF-8 and non-null");
        return IA_STATUS_USAGE_ERROR;
    };
    let field_json = serde_json::to_string(&vector_field_to_json(&f.inner))
        .expect("serialization cannot fail");
    run_op(ops::multiplier(&field_json, factors), out_json)
}

/// Seeded genericity experiment; returns the stats document.
///
/// # Safety
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ia_sample(
    count: u64,
    range: i64,
    seed: u64,
    precision_bits: u32,
    out_json: *mut *mut c_char,
) -> c_int {
    run_op(ops::sample(count, range, seed, precision_bits), out_json)
}

/// Closed-form degree-bound report; `degrees_csv` may be NULL.
///
/// # Safety
/// `degrees_csv` NULL or NUL-terminated UTF-8, `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn ia_bounds(
    m: u64,
    n: usize,
    degrees_csv: *const c_char,
    out_json: *mut *mut c_char,
) -> c_int {
    let degrees = if degrees_csv.is_null() {
        None
    } else {
        let Ok(text) = read_str(degrees_csv) else {
            set_error("degrees_csv must be valid UTF-8");
            return IA_STATUS_USAGE_ERROR;
        };
        let parsed: Result<Vec<u64>, _> =
            text.split(',').map(|s| s.trim().parse::<u64>()).collect();
        match parsed {
            Ok(d) => Some(d),
            Err(e) => {
                set_error(&format!("bad degrees list: {e}"));
                return IA_STATUS_USAGE_ERROR;
            }
        }
    };
    run_op(ops::bounds(m, n, degrees, None, None), out_json)
}

/// Transform of the field with respect to a direction given as comma
/// separated constant expressions.
///
/// # Safety
/// `field` live handle, `direction` NUL-terminated UTF-8, `out_json`
/// valid.
#[no_mangle]
pub unsafe extern "C" fn ia_transform_field(
    field: *const IaField,
    direction: *const c_char,
    out_json: *mut *mut c_char,
) -> c_int {
    let Some(f) = field.as_ref() else {
        set_error("field handle is null");
        return IA_STATUS_USAGE_ERROR;
    };
    let Ok(dir) = read_str(direction) else {
        set_error("direction must be valid UTF-8 and non-null");
        return IA_STATUS_USAGE_ERROR;
    };
    let field_json = serde_json::to_string(&vector_field_to_json(&f.inner))
        .expect("serialization cannot fail");
    run_op(ops::transform_field_json(&field_json, dir), out_json)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAMMA: &str = r#"{"discriminants":[2,3,5],"gamma":[["sqrt2","sqrt3","0"],["0","sqrt3","sqrt5"],["sqrt2","0","sqrt5"]]}"#;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(out: *mut c_char) -> String {
        let s = CStr::from_ptr(out).to_str().unwrap().to_string();
        ia_string_free(out);
        s
    }

    #[test]
    fn construct_through_the_c_abi() {
        unsafe {
            let gamma = cstr(GAMMA);
            let mut out: *mut c_char = ptr::null_mut();
            let status = ia_construct(gamma.as_ptr(), &mut out);
            assert_eq!(status, IA_STATUS_OK);
            let json = take(out);
            let v: serde_json::Value = serde_json::from_str(&json).unwrap();
            assert_eq!(v["seventh"]["status"], "ok");
            assert!(ia_last_error().is_null());
        }
    }

    #[test]
    fn field_handle_round_trip_and_ops() {
        unsafe {
            let gamma = cstr(GAMMA);
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(ia_construct(gamma.as_ptr(), &mut out), IA_STATUS_OK);
            let construct: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
            let field_json = cstr(&serde_json::to_string(&construct["field"]).unwrap());
            let handle = ia_field_from_json(field_json.as_ptr());
            assert!(!handle.is_null());
            assert_eq!(ia_field_dimension(handle), 3);
            assert_eq!(ia_field_degree(handle), 2);
            let psi = cstr("x1");
            let mut verify_out: *mut c_char = ptr::null_mut();
            assert_eq!(ia_semi_verify(handle, psi.as_ptr(), &mut verify_out), IA_STATUS_OK);
            let verify: serde_json::Value = serde_json::from_str(&take(verify_out)).unwrap();
            assert_eq!(verify["verified"], true);
            ia_field_free(handle);
        }
    }

    #[test]
    fn errors_set_status_and_message() {
        unsafe {
            let bad = cstr("{not json");
            let mut out: *mut c_char = ptr::null_mut();
            let status = ia_construct(bad.as_ptr(), &mut out);
            assert_eq!(status, IA_STATUS_USAGE_ERROR);
            let err = ia_last_error();
            assert!(!err.is_null());
            let msg = CStr::from_ptr(err).to_str().unwrap();
            assert!(msg.contains("JsonError"), "got {msg}");
            // singular prescription: domain error
            let singular = cstr(
                r#"{"discriminants":[],"gamma":[["1","0","0"],["0","1","0"],["0","0","1"]]}"#,
            );
            let status = ia_construct(singular.as_ptr(), &mut out);
            assert_eq!(status, IA_STATUS_DOMAIN_ERROR);
        }
    }

    #[test]
    fn bounds_and_sample_manage_strings() {
        unsafe {
            let mut out: *mut c_char = ptr::null_mut();
            let degrees = cstr("1,1");
            assert_eq!(ia_bounds(2, 3, degrees.as_ptr(), &mut out), IA_STATUS_OK);
            let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
            assert_eq!(v["line_count_bound"], "7");
            assert_eq!(ia_sample(3, 5, 7, 128, &mut out), IA_STATUS_OK);
            let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
            assert_eq!(v["count"], 3);
            // version string is static
            let version = CStr::from_ptr(ia_version()).to_str().unwrap();
            assert!(!version.is_empty());
        }
    }
}
