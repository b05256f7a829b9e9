//! C ABI over `rainbow_ap`.
//!
//! Colorings cross the boundary as opaque `RapColoring` handles owned by the
//! caller and released with `rap_coloring_free`. Every fallible function
//! returns a `RapStatus`; on failure `rap_last_error` describes the cause for
//! the calling thread. Strings returned through `char **` are released with
//! `rap_string_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use rainbow_ap::search::Budget;
use rainbow_ap::{
    BalanceClass, Coloring, Error, SearchConfig, SearchStatus, SymmetryLevel, Topology, VariantTag,
};

/// Opaque coloring handle.
pub struct RapColoring(Coloring);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RapStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed coloring text or JSON.
    Parse = 3,
    /// An argument outside the domain of the operation.
    InvalidArgument = 4,
    UnknownSuite = 5,
    /// The output buffer is too small; the required size was written.
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RapTopology {
    Interval = 0,
    Cyclic = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RapVariant {
    Default = 0,
    Alt41 = 1,
    Star = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RapBalance {
    Equinumerous = 0,
    NearEquinumerous = 1,
    Balanced = 2,
    Unbalanced = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RapSymmetry {
    None = 0,
    ValueOrder = 1,
    FullCanonical = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RapSearchStatus {
    Found = 0,
    Exhausted = 1,
    BudgetExceeded = 2,
}

/// A rainbow progression: `start, start + d, ...` with `length` members.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RapWitness {
    pub start: usize,
    pub d: usize,
    pub length: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RapSearchConfig {
    pub n: usize,
    pub k: usize,
    /// 0 means `k`.
    pub ap_length: usize,
    /// 0 means unlimited.
    pub max_nodes: u64,
    /// 0 means no time limit.
    pub time_limit_ms: u64,
    pub symmetry: RapSymmetry,
    /// 0 means 1.
    pub threads: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RapSearchResult {
    pub status: RapSearchStatus,
    pub nodes: u64,
    pub prunes_capacity: u64,
    pub prunes_rainbow: u64,
    pub canonical_rejects: u64,
    pub elapsed_ms: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(RapStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidColorLetter { .. }
            | Error::EmptyColoring
            | Error::ColorOutOfRange { .. }
            | Error::Json(_) => RapStatus::Parse,
            Error::UnknownSuite(_) => RapStatus::UnknownSuite,
            _ => RapStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn set_error(msg: Option<String>) {
    let msg = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior NUL"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RapStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            RapStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("internal panic".into()));
            RapStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(RapStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(RapStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn coloring<'a>(p: *const RapColoring) -> Result<&'a Coloring, Fail> {
    p.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn emit(out: *mut *mut RapColoring, c: Coloring) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(RapColoring(c)));
    Ok(())
}

/// Message for the last failed call on this thread, or NULL after a
/// successful one. Valid until the next call into this library.
#[no_mangle]
pub extern "C" fn rap_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses color letters (`A` = color 0). `k = 0` infers the number of colors
/// from the largest letter.
#[no_mangle]
pub unsafe extern "C" fn rap_coloring_parse(
    letters: *const c_char,
    topology: RapTopology,
    k: usize,
    out: *mut *mut RapColoring,
) -> RapStatus {
    guard(|| {
        let s = text(letters)?;
        let topology = match topology {
            RapTopology::Interval => Topology::Interval,
            RapTopology::Cyclic => Topology::Cyclic,
        };
        let c = if k == 0 {
            Coloring::from_letters_infer_k(topology, s)?
        } else {
            Coloring::from_letters(topology, k, s)?
        };
        emit(out, c)
    })
}

/// Parses `{"n", "k", "topology", "colors"}`.
#[no_mangle]
pub unsafe extern "C" fn rap_coloring_from_json(json: *const c_char, out: *mut *mut RapColoring) -> RapStatus {
    guard(|| emit(out, Coloring::from_json_str(text(json)?)?))
}

#[no_mangle]
pub unsafe extern "C" fn rap_coloring_free(c: *mut RapColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of positions, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn rap_coloring_len(c: *const RapColoring) -> usize {
    c.as_ref().map_or(0, |h| h.0.n())
}

/// Number of colors, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn rap_coloring_k(c: *const RapColoring) -> usize {
    c.as_ref().map_or(0, |h| h.0.k())
}

/// Writes the letters plus a terminating NUL into `buf`. `needed` receives
/// the buffer size required; pass `buf = NULL, cap = 0` to query it.
#[no_mangle]
pub unsafe extern "C" fn rap_coloring_write_letters(
    c: *const RapColoring,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> RapStatus {
    guard(|| {
        let letters = coloring(c)?.letters();
        let size = letters.len() + 1;
        if !needed.is_null() {
            *needed = size;
        }
        if buf.is_null() || cap < size {
            return Err(Fail(RapStatus::BufferTooSmall, format!("need {size} bytes")));
        }
        ptr::copy_nonoverlapping(letters.as_ptr(), buf.cast::<u8>(), letters.len());
        *buf.add(letters.len()) = 0;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rap_construct_interval4(n: usize, variant: RapVariant, out: *mut *mut RapColoring) -> RapStatus {
    guard(|| {
        let variant = match variant {
            RapVariant::Default => VariantTag::Default,
            RapVariant::Alt41 => VariantTag::Alt41,
            RapVariant::Star => VariantTag::Star,
        };
        emit(out, rainbow_ap::construct_interval4(n, variant)?)
    })
}

/// The `k`-coloring of `[total]` without a rainbow AP(k).
#[no_mangle]
pub unsafe extern "C" fn rap_construct_k(k: usize, total: usize, out: *mut *mut RapColoring) -> RapStatus {
    guard(|| emit(out, rainbow_ap::construct_k(k, total)?))
}

/// The Z_24 coloring repeated `times` times around Z_{24 times}.
#[no_mangle]
pub unsafe extern "C" fn rap_construct_z24(times: usize, out: *mut *mut RapColoring) -> RapStatus {
    guard(|| emit(out, rainbow_ap::tile(&rainbow_ap::construct_z24(), times)?))
}

#[no_mangle]
pub unsafe extern "C" fn rap_construct_pow3(n: usize, out: *mut *mut RapColoring) -> RapStatus {
    guard(|| emit(out, rainbow_ap::construct_pow3(n)?))
}

/// Looks for a rainbow AP of `length` terms. `found` is set; when true and
/// `witness` is non-NULL the progression is written there, and up to
/// `elements_cap` member positions are copied into `elements`.
#[no_mangle]
pub unsafe extern "C" fn rap_find_rainbow_ap(
    c: *const RapColoring,
    length: usize,
    found: *mut bool,
    witness: *mut RapWitness,
    elements: *mut usize,
    elements_cap: usize,
) -> RapStatus {
    guard(|| {
        if found.is_null() {
            return Err(null());
        }
        let w = rainbow_ap::find_rainbow_ap(coloring(c)?, length)?;
        *found = w.is_some();
        if let Some(w) = w {
            if !witness.is_null() {
                *witness = RapWitness {
                    start: w.spec.start,
                    d: w.spec.d,
                    length: w.spec.length,
                };
            }
            if !elements.is_null() {
                let m = w.elements.len().min(elements_cap);
                ptr::copy_nonoverlapping(w.elements.as_ptr(), elements, m);
            }
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rap_classify_balance(c: *const RapColoring, out: *mut RapBalance) -> RapStatus {
    guard(|| {
        let class = rainbow_ap::classify_balance(coloring(c)?);
        let out = out.as_mut().ok_or_else(null)?;
        *out = match class {
            BalanceClass::Equinumerous => RapBalance::Equinumerous,
            BalanceClass::NearEquinumerous => RapBalance::NearEquinumerous,
            BalanceClass::Balanced => RapBalance::Balanced,
            BalanceClass::Unbalanced => RapBalance::Unbalanced,
        };
        Ok(())
    })
}

/// The lexicographically least member of the coloring's symmetry orbit, as a
/// new handle.
#[no_mangle]
pub unsafe extern "C" fn rap_canonical_form(c: *const RapColoring, out: *mut *mut RapColoring) -> RapStatus {
    guard(|| emit(out, rainbow_ap::canonical_form(coloring(c)?)))
}

/// `valid` is true when the cyclic coloring is equinumerous and has no
/// rainbow AP of `length` terms.
#[no_mangle]
pub unsafe extern "C" fn rap_verify_certificate(c: *const RapColoring, length: usize, valid: *mut bool) -> RapStatus {
    guard(|| {
        let ok = rainbow_ap::verify_certificate(coloring(c)?, length)?;
        *valid.as_mut().ok_or_else(null)? = ok;
        Ok(())
    })
}

/// Searches equinumerous `k`-colorings of Z_n for one without a rainbow AP.
/// When the status is `Found` and `certificate` is non-NULL, a new handle is
/// stored there; otherwise `*certificate` is set to NULL.
#[no_mangle]
pub unsafe extern "C" fn rap_search(
    config: *const RapSearchConfig,
    result: *mut RapSearchResult,
    certificate: *mut *mut RapColoring,
) -> RapStatus {
    guard(|| {
        let cfg = config.as_ref().ok_or_else(null)?;
        let result = result.as_mut().ok_or_else(null)?;
        let symmetry = match cfg.symmetry {
            RapSymmetry::None => SymmetryLevel::None,
            RapSymmetry::ValueOrder => SymmetryLevel::ValueOrder,
            RapSymmetry::FullCanonical => SymmetryLevel::FullCanonical,
        };
        let budget = Budget {
            max_nodes: if cfg.max_nodes == 0 { u64::MAX } else { cfg.max_nodes },
            time_limit: (cfg.time_limit_ms > 0).then(|| Duration::from_millis(cfg.time_limit_ms)),
        };
        let config = SearchConfig::new(cfg.n, cfg.k)
            .with_budget(budget)
            .with_symmetry(symmetry)
            .with_threads(cfg.threads.max(1));
        let length = if cfg.ap_length == 0 { cfg.k } else { cfg.ap_length };
        let outcome = rainbow_ap::search_rainbow_free(&config, length)?;
        let s = outcome.stats;
        *result = RapSearchResult {
            status: match outcome.status {
                SearchStatus::Found(_) => RapSearchStatus::Found,
                SearchStatus::Exhausted => RapSearchStatus::Exhausted,
                SearchStatus::BudgetExceeded => RapSearchStatus::BudgetExceeded,
            },
            nodes: s.nodes,
            prunes_capacity: s.prunes_capacity,
            prunes_rainbow: s.prunes_rainbow,
            canonical_rejects: s.canonical_rejects,
            elapsed_ms: s.elapsed_ms,
        };
        if !certificate.is_null() {
            *certificate = match outcome.status {
                SearchStatus::Found(c) => Box::into_raw(Box::new(RapColoring(c))),
                _ => ptr::null_mut(),
            };
        }
        Ok(())
    })
}

/// Runs a verification suite and stores its JSON report in `*report`.
/// `params_json` is NULL or a JSON object of parameter values.
#[no_mangle]
pub unsafe extern "C" fn rap_run_suite_json(
    suite: *const c_char,
    params_json: *const c_char,
    report: *mut *mut c_char,
) -> RapStatus {
    guard(|| {
        if report.is_null() {
            return Err(null());
        }
        let name = text(suite)?;
        let mut params = BTreeMap::new();
        if !params_json.is_null() {
            let v: serde_json::Value = serde_json::from_str(text(params_json)?)
                .map_err(|e| Fail(RapStatus::Parse, e.to_string()))?;
            let obj = v
                .as_object()
                .ok_or_else(|| Fail(RapStatus::Parse, "params must be a JSON object".into()))?;
            for (key, value) in obj {
                let value = match value {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                params.insert(key.clone(), value);
            }
        }
        let r = rainbow_ap::run_suite(name, &params)?;
        let json = serde_json::to_string(&r).map_err(|e| Fail(RapStatus::Panic, e.to_string()))?;
        *report = CString::new(json).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
