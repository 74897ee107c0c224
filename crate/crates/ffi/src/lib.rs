//! C ABI for the hermicode library.
//!
//! Every fallible entry point returns an [`HcStatus`]. Results come back
//! through opaque handles or heap-allocated JSON strings that the caller
//! releases with [`hc_string_free`]. After a non-OK status the thread-local
//! message behind [`hc_last_error_message`] describes the failure; the
//! pointer stays valid until the same thread hits the next error.
//!
//! Panics never unwind across the boundary: they are caught and reported as
//! [`HcStatus::Panic`].
//!
//! Safety contract, shared by every entry point: pointer arguments are
//! either null (reported as [`HcStatus::NullArgument`] or treated as a
//! no-op, as documented per function) or valid for the access implied by
//! their C type; `criterion` strings are nul-terminated. Handles and strings
//! must be released by the matching `_free` function, exactly once.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hermicode::emit::{self, Emission, Format};
use hermicode::onepoint::{generator_matrix, CodeReport, LinearCode};
use hermicode::prospector::Criterion;
use hermicode::weight::{min_distance_exact_with_guard, DistanceResult, DEFAULT_WEIGHT_GUARD};
use hermicode::Error;

/// Status code of every fallible call. `Domain` collects all parameter and
/// scope errors (the CLI's exit 2); the guard and verification codes mirror
/// CLI exits 3 and 4.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    Domain = 2,
    SizeGuard = 3,
    Verification = 4,
    NullArgument = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

/// A one-point Hermitian code handle; create with `hc_code_new`, release
/// with `hc_code_free`.
pub struct HcCode {
    code: LinearCode,
    exact: Option<DistanceResult>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn remember(message: &str) {
    let clean = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(clean).expect("nul bytes stripped");
    });
}

fn status_of(err: &Error) -> HcStatus {
    match err.exit_code() {
        3 => HcStatus::SizeGuard,
        4 => HcStatus::Verification,
        _ => HcStatus::Domain,
    }
}

fn fail(err: Error) -> HcStatus {
    remember(&err.to_string());
    status_of(&err)
}

/// Run `body` with panics converted to `HcStatus::Panic`.
fn guarded(body: impl FnOnce() -> HcStatus) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            remember("internal panic");
            HcStatus::Panic
        }
    }
}

fn null_arg(name: &str) -> HcStatus {
    remember(&format!("{} must not be null", name));
    HcStatus::NullArgument
}

/// Write `s` to `*out` as a heap-allocated C string.
///
/// # Safety
/// `out` must be a valid, non-null pointer to writable memory.
unsafe fn write_string(out: *mut *mut c_char, s: String) {
    let c = CString::new(s.replace('\0', " ")).expect("nul bytes stripped");
    *out = c.into_raw();
}

fn emission_json(emission: &Emission) -> Result<String, Error> {
    emit::render(emission, Format::Json)
}

/// Build the code for pole degree `t` over the field with `q^2` elements.
/// On success `*out` owns the handle.
#[no_mangle]
pub unsafe extern "C" fn hc_code_new(q: u64, t: u64, out: *mut *mut HcCode) -> HcStatus {
    guarded(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match generator_matrix(q, t) {
            Ok(code) => {
                *out = Box::into_raw(Box::new(HcCode { code, exact: None }));
                HcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Release a handle from `hc_code_new`. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn hc_code_free(code: *mut HcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Code length n = q^3, or 0 if the handle is null.
#[no_mangle]
pub unsafe extern "C" fn hc_code_length(code: *const HcCode) -> u64 {
    code.as_ref().map_or(0, |h| h.code.n() as u64)
}

/// Code dimension k, or 0 if the handle is null.
#[no_mangle]
pub unsafe extern "C" fn hc_code_dimension(code: *const HcCode) -> u64 {
    code.as_ref().map_or(0, |h| h.code.k() as u64)
}

/// Goppa designed distance q^3 - t, or 0 if the handle is null.
#[no_mangle]
pub unsafe extern "C" fn hc_code_goppa_bound(code: *const HcCode) -> u64 {
    code.as_ref().and_then(|h| h.code.d_lower()).unwrap_or(0)
}

/// Exact minimum distance by scalar-quotient enumeration. `guard` caps the
/// full message count; pass 0 for the default guard. The result is cached on
/// the handle and shows up in later reports.
#[no_mangle]
pub unsafe extern "C" fn hc_code_exact_distance(
    code: *mut HcCode,
    guard: u64,
    out_distance: *mut u64,
) -> HcStatus {
    guarded(|| {
        let Some(handle) = code.as_mut() else {
            return null_arg("code");
        };
        if out_distance.is_null() {
            return null_arg("out_distance");
        }
        let guard = if guard == 0 {
            DEFAULT_WEIGHT_GUARD
        } else {
            guard
        };
        match min_distance_exact_with_guard(&handle.code, guard) {
            Ok(result) => {
                *out_distance = result.distance;
                handle.exact = Some(result);
                HcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Full code report as JSON, including the exact distance if it has been
/// computed on this handle.
#[no_mangle]
pub unsafe extern "C" fn hc_code_report_json(
    code: *const HcCode,
    include_matrix: bool,
    out_json: *mut *mut c_char,
) -> HcStatus {
    guarded(|| {
        let Some(handle) = code.as_ref() else {
            return null_arg("code");
        };
        if out_json.is_null() {
            return null_arg("out_json");
        }
        let report = CodeReport::build(&handle.code, handle.exact.as_ref(), include_matrix)
            .and_then(|r| emission_json(&Emission::Code(r)));
        match report {
            Ok(json) => {
                write_string(out_json, json);
                HcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

fn json_entry(
    out_json: *mut *mut c_char,
    build: impl FnOnce() -> Result<Emission, Error>,
) -> HcStatus {
    guarded(|| {
        if out_json.is_null() {
            return null_arg("out_json");
        }
        match build().and_then(|e| emission_json(&e)) {
            Ok(json) => {
                unsafe { write_string(out_json, json) };
                HcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// L-polynomial, class number and bounded A-table as JSON.
#[no_mangle]
pub unsafe extern "C" fn hc_zeta_json(q: u64, kmax: u64, out_json: *mut *mut c_char) -> HcStatus {
    json_entry(out_json, || emit::build_zeta(q, kmax, false))
}

/// Existence-criterion search as JSON. `criterion` is "prop23" or "exact".
#[no_mangle]
pub unsafe extern "C" fn hc_prospect_json(
    q: u64,
    criterion: *const c_char,
    k_min: u64,
    out_json: *mut *mut c_char,
) -> HcStatus {
    guarded(|| {
        if criterion.is_null() {
            return null_arg("criterion");
        }
        let Ok(name) = CStr::from_ptr(criterion).to_str() else {
            remember("criterion is not valid UTF-8");
            return HcStatus::InvalidUtf8;
        };
        let parsed: Result<Criterion, Error> = name.parse();
        match parsed {
            Ok(criterion) => json_entry(out_json, || {
                emit::build_prospect(q, criterion, k_min, None, None, false)
            }),
            Err(e) => fail(e),
        }
    })
}

/// Affine-lemma verification on the toy q = 2 curve as JSON. The evaluation
/// set is the first `eval_size` affine points in canonical order.
#[no_mangle]
pub unsafe extern "C" fn hc_verify_lemma_json(
    eval_size: u64,
    s: u64,
    m: u64,
    out_json: *mut *mut c_char,
) -> HcStatus {
    json_entry(out_json, || emit::build_lemma(2, eval_size as usize, s, m))
}

/// Asymptotic distance-improvement profile as JSON; needs q >= 4.
#[no_mangle]
pub unsafe extern "C" fn hc_asymptotic_json(q: u64, out_json: *mut *mut c_char) -> HcStatus {
    json_entry(out_json, || emit::build_asymptotic(q))
}

/// Release a string returned by any `_json` call. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last error on this thread; empty until the first failure.
#[no_mangle]
pub extern "C" fn hc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn take_json(status: HcStatus, ptr: *mut c_char) -> serde_json::Value {
        assert_eq!(status, HcStatus::Ok, "{}", last_error());
        assert!(!ptr.is_null());
        let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_owned();
        unsafe { hc_string_free(ptr) };
        serde_json::from_str(&text).expect("valid json")
    }

    fn last_error() -> String {
        unsafe { CStr::from_ptr(hc_last_error_message()) }
            .to_string_lossy()
            .into_owned()
    }

    #[test]
    fn code_handle_round_trip() {
        let mut handle: *mut HcCode = ptr::null_mut();
        let status = unsafe { hc_code_new(2, 5, &mut handle) };
        assert_eq!(status, HcStatus::Ok);
        unsafe {
            assert_eq!(hc_code_length(handle), 8);
            assert_eq!(hc_code_dimension(handle), 5);
            assert_eq!(hc_code_goppa_bound(handle), 3);
            let mut d = 0u64;
            assert_eq!(hc_code_exact_distance(handle, 0, &mut d), HcStatus::Ok);
            assert_eq!(d, 3);
            let mut json: *mut c_char = ptr::null_mut();
            let status = hc_code_report_json(handle, true, &mut json);
            let v = take_json(status, json);
            assert_eq!(v["exact_distance"], 3);
            assert_eq!(v["matrix"].as_array().unwrap().len(), 5);
            hc_code_free(handle);
        }
    }

    #[test]
    fn domain_errors_set_the_message() {
        let mut handle: *mut HcCode = ptr::null_mut();
        let status = unsafe { hc_code_new(6, 3, &mut handle) };
        assert_eq!(status, HcStatus::Domain);
        assert!(handle.is_null());
        assert!(last_error().contains("prime power"), "{}", last_error());
    }

    #[test]
    fn size_guard_status() {
        let mut handle: *mut HcCode = ptr::null_mut();
        assert_eq!(unsafe { hc_code_new(2, 5, &mut handle) }, HcStatus::Ok);
        let mut d = 0u64;
        let status = unsafe { hc_code_exact_distance(handle, 10, &mut d) };
        assert_eq!(status, HcStatus::SizeGuard);
        unsafe { hc_code_free(handle) };
    }

    #[test]
    fn null_arguments_are_rejected() {
        assert_eq!(
            unsafe { hc_code_new(2, 5, ptr::null_mut()) },
            HcStatus::NullArgument
        );
        let mut d = 0u64;
        assert_eq!(
            unsafe { hc_code_exact_distance(ptr::null_mut(), 0, &mut d) },
            HcStatus::NullArgument
        );
        assert_eq!(
            unsafe { hc_zeta_json(2, 3, ptr::null_mut()) },
            HcStatus::NullArgument
        );
        unsafe {
            assert_eq!(hc_code_length(ptr::null()), 0);
            hc_code_free(ptr::null_mut());
            hc_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn zeta_bridge() {
        let mut json: *mut c_char = ptr::null_mut();
        let status = unsafe { hc_zeta_json(2, 3, &mut json) };
        let v = take_json(status, json);
        assert_eq!(v["class_number"], "9");
        assert_eq!(v["a_table"][2], "45");
    }

    #[test]
    fn prospect_bridge_and_bad_criterion() {
        let name = CString::new("exact").unwrap();
        let mut json: *mut c_char = ptr::null_mut();
        let status = unsafe { hc_prospect_json(2, name.as_ptr(), 1, &mut json) };
        let v = take_json(status, json);
        assert_eq!(v["rows"][0]["d_lower"], 8);
        let bad = CString::new("fancy").unwrap();
        let status = unsafe { hc_prospect_json(2, bad.as_ptr(), 1, &mut json) };
        assert_eq!(status, HcStatus::Domain);
    }

    #[test]
    fn lemma_and_asymptotic_bridges() {
        let mut json: *mut c_char = ptr::null_mut();
        let status = unsafe { hc_verify_lemma_json(4, 2, 2, &mut json) };
        let v = take_json(status, json);
        assert_eq!(v["passed"], true);
        let status = unsafe { hc_verify_lemma_json(4, 4, 1, &mut json) };
        assert_eq!(status, HcStatus::Domain, "scope violation maps to Domain");
        let status = unsafe { hc_asymptotic_json(16, &mut json) };
        let v = take_json(status, json);
        assert_eq!(v["k_positive"], false);
        let status = unsafe { hc_asymptotic_json(3, &mut json) };
        assert_eq!(status, HcStatus::Domain);
    }

    #[test]
    fn header_is_generated() {
        let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("include")
            .join("hermicode.h");
        let text = std::fs::read_to_string(&header).expect("header exists");
        for needle in [
            "HcStatus",
            "hc_code_new",
            "hc_code_exact_distance",
            "hc_last_error_message",
            "hc_string_free",
        ] {
            assert!(text.contains(needle), "header lacks {}", needle);
        }
    }
}
