//! C ABI for the vincular counting library.
//!
//! The surface is a conventional handle-and-error-code API so other
//! languages can bind without knowing anything about Rust: patterns and
//! series are opaque heap handles created and freed here, every fallible
//! call returns a [`VncStatus`], and the last error message is kept in
//! thread-local storage for retrieval with [`vnc_last_error`]. Series
//! coefficients travel as exact decimal strings (or `p/q` for rationals);
//! a convenience accessor returns `u64` when the coefficient fits.
//!
//! The matching header is generated into `include/vincular.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vincular::closed_forms::{build_catalog, series_for_pattern, F_G_HORIZON, H_PHI_HORIZON};
use vincular::enumerate::{count_avoiders_matching, count_exactly_one_matching, Family};
use vincular::pattern::{parse_pattern, GeneralizedPattern, PatternMatcher};
use vincular::series::QSeries;
use vincular::verify::{run_verification, EntryFilter};

/// ABI revision; bump on any breaking change to this header.
pub const VNC_ABI_VERSION: u32 = 1;

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VncStatus {
    Ok = 0,
    NullArgument,
    InvalidUtf8,
    ParseError,
    OutOfRange,
    HorizonExceeded,
    Unsupported,
    BufferTooSmall,
    NotRepresentable,
    InternalError,
}

/// Counting family selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VncFamily {
    F = 0,
    G = 1,
    H = 2,
    Phi = 3,
}

impl From<VncFamily> for Family {
    fn from(f: VncFamily) -> Family {
        match f {
            VncFamily::F => Family::F,
            VncFamily::G => Family::G,
            VncFamily::H => Family::H,
            VncFamily::Phi => Family::Phi,
        }
    }
}

/// Opaque parsed-pattern handle.
pub struct VncPattern {
    inner: GeneralizedPattern,
}

/// Opaque exact-series handle.
pub struct VncSeries {
    inner: QSeries,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(message: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = message.into());
}

fn fail(status: VncStatus, message: impl Into<String>) -> VncStatus {
    set_error(message);
    status
}

/// Wrap a body so a Rust panic becomes `InternalError` instead of unwinding
/// across the ABI boundary.
fn guarded(body: impl FnOnce() -> VncStatus) -> VncStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(VncStatus::InternalError, "internal panic"),
    }
}

fn write_str(buf: *mut c_char, cap: usize, written: *mut usize, s: &str) -> VncStatus {
    let bytes = s.as_bytes();
    let needed = bytes.len() + 1;
    if !written.is_null() {
        unsafe { *written = needed };
    }
    if buf.is_null() {
        // Size query.
        return VncStatus::Ok;
    }
    if cap < needed {
        return fail(
            VncStatus::BufferTooSmall,
            format!("buffer of {cap} bytes cannot hold {needed}"),
        );
    }
    unsafe {
        ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
        *buf.add(bytes.len()) = 0;
    }
    VncStatus::Ok
}

/// ABI revision of this library.
#[no_mangle]
pub extern "C" fn vnc_abi_version() -> u32 {
    VNC_ABI_VERSION
}

/// Parse a pattern in the dash grammar (e.g. `"1-23"`). On success stores a
/// new handle in `out`; free it with [`vnc_pattern_free`].
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vnc_pattern_parse(
    text: *const c_char,
    out: *mut *mut VncPattern,
) -> VncStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return fail(VncStatus::NullArgument, "text and out must be non-null");
        }
        let text = match unsafe { CStr::from_ptr(text) }.to_str() {
            Ok(s) => s,
            Err(_) => return fail(VncStatus::InvalidUtf8, "pattern text is not UTF-8"),
        };
        match parse_pattern(text) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(VncPattern { inner })) };
                VncStatus::Ok
            }
            Err(e) => fail(VncStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `p` must be a handle from [`vnc_pattern_parse`] (or null) and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vnc_pattern_free(p: *mut VncPattern) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Number of letters in the pattern; 0 for a null handle.
///
/// # Safety
/// `p` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn vnc_pattern_len(p: *const VncPattern) -> usize {
    if p.is_null() {
        return 0;
    }
    unsafe { &*p }.inner.len()
}

/// Render the pattern back into the dash grammar. With a null `buf` this is
/// a size query: `*written` receives the required capacity including the
/// terminating NUL.
///
/// # Safety
/// `p` must be a valid handle; `buf` must have capacity `cap` when non-null.
#[no_mangle]
pub unsafe extern "C" fn vnc_pattern_display(
    p: *const VncPattern,
    buf: *mut c_char,
    cap: usize,
    written: *mut usize,
) -> VncStatus {
    guarded(|| {
        if p.is_null() {
            return fail(VncStatus::NullArgument, "pattern handle is null");
        }
        let text = unsafe { &*p }.inner.to_string();
        write_str(buf, cap, written, &text)
    })
}

/// Compute the counting series of `family` for `pattern` to the given
/// truncation order, routing through the closed-form catalog, the recursion
/// engines, or enumeration, in that order of preference. The handle stored
/// in `out` must be freed with [`vnc_series_free`]. The result's order may
/// be lower than requested when only enumeration applies.
///
/// # Safety
/// `pattern` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vnc_series_for_pattern(
    family: VncFamily,
    pattern: *const VncPattern,
    order: usize,
    out: *mut *mut VncSeries,
) -> VncStatus {
    guarded(|| {
        if pattern.is_null() || out.is_null() {
            return fail(VncStatus::NullArgument, "pattern and out must be non-null");
        }
        let pat = &unsafe { &*pattern }.inner;
        let catalog = build_catalog();
        match series_for_pattern(&catalog, family.into(), pat, order) {
            Ok((inner, _source)) => {
                unsafe { *out = Box::into_raw(Box::new(VncSeries { inner })) };
                VncStatus::Ok
            }
            Err(e) => fail(VncStatus::Unsupported, e.to_string()),
        }
    })
}

/// Expand a catalog entry by its exact instance id (e.g. `"G.g21[k=3]"`).
///
/// # Safety
/// `entry_id` must be a valid NUL-terminated string and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn vnc_series_for_entry(
    entry_id: *const c_char,
    order: usize,
    out: *mut *mut VncSeries,
) -> VncStatus {
    guarded(|| {
        if entry_id.is_null() || out.is_null() {
            return fail(VncStatus::NullArgument, "entry_id and out must be non-null");
        }
        let id = match unsafe { CStr::from_ptr(entry_id) }.to_str() {
            Ok(s) => s,
            Err(_) => return fail(VncStatus::InvalidUtf8, "entry id is not UTF-8"),
        };
        let catalog = build_catalog();
        let Some(entry) = catalog.iter().find(|e| e.id == id) else {
            return fail(VncStatus::Unsupported, format!("unknown entry {id:?}"));
        };
        match entry.closed_form(order) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(VncSeries { inner })) };
                VncStatus::Ok
            }
            Err(e) => fail(VncStatus::OutOfRange, e.to_string()),
        }
    })
}

/// Truncation order of the series (the highest stored coefficient index).
///
/// # Safety
/// `s` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn vnc_series_order(s: *const VncSeries) -> usize {
    if s.is_null() {
        return 0;
    }
    unsafe { &*s }.inner.order()
}

/// Coefficient `n` as an exact decimal string (integers as plain decimals,
/// other rationals as `p/q`). Null `buf` performs a size query via
/// `*written`.
///
/// # Safety
/// `s` must be a valid handle; `buf` must have capacity `cap` when non-null.
#[no_mangle]
pub unsafe extern "C" fn vnc_series_coeff_string(
    s: *const VncSeries,
    n: usize,
    buf: *mut c_char,
    cap: usize,
    written: *mut usize,
) -> VncStatus {
    guarded(|| {
        if s.is_null() {
            return fail(VncStatus::NullArgument, "series handle is null");
        }
        let series = &unsafe { &*s }.inner;
        if n > series.order() {
            return fail(
                VncStatus::OutOfRange,
                format!("coefficient {n} beyond truncation order {}", series.order()),
            );
        }
        write_str(buf, cap, written, &series.coeff_string(n))
    })
}

/// Coefficient `n` as a `u64`, when it is a non-negative integer that fits.
///
/// # Safety
/// `s` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vnc_series_coeff_u64(
    s: *const VncSeries,
    n: usize,
    out: *mut u64,
) -> VncStatus {
    guarded(|| {
        if s.is_null() || out.is_null() {
            return fail(VncStatus::NullArgument, "series and out must be non-null");
        }
        let series = &unsafe { &*s }.inner;
        if n > series.order() {
            return fail(
                VncStatus::OutOfRange,
                format!("coefficient {n} beyond truncation order {}", series.order()),
            );
        }
        match series.coeff_u64(n) {
            Some(v) => {
                unsafe { *out = v };
                VncStatus::Ok
            }
            None => fail(
                VncStatus::NotRepresentable,
                format!("coefficient {n} = {} does not fit in u64", series.coeff_string(n)),
            ),
        }
    })
}

/// # Safety
/// `s` must be a handle from a series constructor (or null) and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vnc_series_free(s: *mut VncSeries) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

/// Enumerate the single count of size `n` for `family` and `pattern` by
/// brute force. Counts past the family's oracle horizon (12 for F/G, 10 for
/// H/PHI) are refused unless `force` is set.
///
/// # Safety
/// `pattern` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vnc_count(
    family: VncFamily,
    pattern: *const VncPattern,
    n: u32,
    force: bool,
    out: *mut u64,
) -> VncStatus {
    guarded(|| {
        if pattern.is_null() || out.is_null() {
            return fail(VncStatus::NullArgument, "pattern and out must be non-null");
        }
        let family: Family = family.into();
        let horizon = match family {
            Family::H | Family::Phi => H_PHI_HORIZON,
            _ => F_G_HORIZON,
        };
        let n = n as usize;
        if n > horizon && !force {
            return fail(
                VncStatus::HorizonExceeded,
                format!("n = {n} exceeds the {family} oracle horizon {horizon}"),
            );
        }
        let matcher = PatternMatcher::new(&unsafe { &*pattern }.inner);
        let count = match family {
            Family::F => count_avoiders_matching(n, |p| matcher.avoids(p)),
            Family::G => count_avoiders_matching(n, |p| matcher.contains_exactly_once(p)),
            Family::H => count_exactly_one_matching(n, |p| matcher.avoids(p)),
            Family::Phi => count_exactly_one_matching(n, |p| matcher.contains_exactly_once(p)),
            Family::Mixed => unreachable!("not constructible from VncFamily"),
        };
        unsafe { *out = count };
        VncStatus::Ok
    })
}

/// Run the verification harness and return the JSON report as a heap string
/// (free with [`vnc_string_free`]). `entry_filter` selects an entry or group
/// id; pass null for the whole catalog. `max_n` caps every entry's
/// enumeration bound; pass 0 for the per-entry defaults. `all_as_expected`
/// (optional) receives whether every observed status matched its pinned
/// expectation.
///
/// # Safety
/// `out_json` must be a valid pointer; `entry_filter` must be a valid string
/// when non-null.
#[no_mangle]
pub unsafe extern "C" fn vnc_verify_json(
    entry_filter: *const c_char,
    order: usize,
    max_n: u32,
    out_json: *mut *mut c_char,
    all_as_expected: *mut bool,
) -> VncStatus {
    guarded(|| {
        if out_json.is_null() {
            return fail(VncStatus::NullArgument, "out_json must be non-null");
        }
        let mut filter = EntryFilter::all();
        if !entry_filter.is_null() {
            match unsafe { CStr::from_ptr(entry_filter) }.to_str() {
                Ok(s) => filter.entry = Some(s.to_string()),
                Err(_) => return fail(VncStatus::InvalidUtf8, "entry filter is not UTF-8"),
            }
        }
        let catalog = build_catalog();
        let cap = if max_n == 0 { None } else { Some(max_n as usize) };
        match run_verification(&catalog, &filter, order, cap) {
            Ok(report) => {
                let json = CString::new(report.to_json()).expect("report has no NUL bytes");
                if !all_as_expected.is_null() {
                    unsafe { *all_as_expected = report.all_as_expected() };
                }
                unsafe { *out_json = json.into_raw() };
                VncStatus::Ok
            }
            Err(e) => fail(VncStatus::Unsupported, e.to_string()),
        }
    })
}

/// Free a string returned by this library.
///
/// # Safety
/// `s` must come from this library (or be null) and must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn vnc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Copy the calling thread's last error message. Null `buf` performs a size
/// query via `*written`.
///
/// # Safety
/// `buf` must have capacity `cap` when non-null.
#[no_mangle]
pub unsafe extern "C" fn vnc_last_error(
    buf: *mut c_char,
    cap: usize,
    written: *mut usize,
) -> VncStatus {
    let message = LAST_ERROR.with(|e| e.borrow().clone());
    write_str(buf, cap, written, &message)
}
