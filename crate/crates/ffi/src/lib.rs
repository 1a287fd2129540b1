//! C ABI over `eaqecc`.
//!
//! Constructions are returned as opaque `EaqConstruction` handles. Every
//! fallible call returns an `EaqStatus`; on failure a message is kept per
//! thread and read with `eaq_last_error`. Strings handed out by this library
//! are freed with `eaq_string_free`, handles with `eaq_construction_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eaqecc::bch::{self, CertifyOptions, ConstructionError, ConstructionRequest, ConstructionResult, Theorem};
use eaqecc::cli::OutputRecord;
use eaqecc::cosets;
use eaqecc::enlarge::A0Style;

/// Result codes; `Ok` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EaqStatus {
    Ok = 0,
    /// a required pointer was null
    NullPointer = 1,
    /// malformed argument, such as a non-UTF-8 string or unknown theorem
    InvalidArgument = 2,
    /// the parameters break a hypothesis of the construction
    InvalidRequest = 3,
    /// exact distance required but the enumeration exceeds the budget
    BudgetExceeded = 4,
    /// the library failed while building matrices
    LibraryError = 5,
    /// a Rust panic was caught at the boundary
    Panic = 6,
}

/// `[[n, k, d; c]]_q`. `d_exact` is meaningful only when `has_d_exact` is set.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EaqParams {
    pub q: u64,
    pub n: u64,
    pub k: u64,
    pub d_lower: u64,
    pub d_exact: u64,
    pub has_d_exact: bool,
    pub c: u64,
}

/// Opaque construction result.
pub struct EaqConstruction(ConstructionResult);

/// Certification state of a construction.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EaqCertification {
    NotPerformed = 0,
    Passed = 1,
    Failed = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: EaqStatus, msg: impl Into<String>) -> EaqStatus {
    set_error(msg.into());
    status
}

fn guard(f: impl FnOnce() -> EaqStatus) -> EaqStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            fail(EaqStatus::Panic, msg)
        }
    }
}

fn map_error(e: ConstructionError) -> EaqStatus {
    let status = match &e {
        ConstructionError::InvalidRequest(_) => EaqStatus::InvalidRequest,
        ConstructionError::BudgetExceeded(_) => EaqStatus::BudgetExceeded,
        ConstructionError::Library(_) => EaqStatus::LibraryError,
    };
    fail(status, e.to_string())
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, EaqStatus> {
    if s.is_null() {
        return Err(fail(EaqStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(EaqStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn rep(v: i64) -> Option<u64> {
    u64::try_from(v).ok()
}

/// Builds a construction.
///
/// `theorem` is one of `bch`, `bchcase1`, `corthree`, `corone`,
/// `reciprocal`, `bchcase2`, `reciprocal2i`, `reciprocal2ii` (case and
/// `-`/`_` are ignored). `a_l1` and `a_l2` are coset representatives; pass a
/// negative value to omit one. `eta_style` selects the reduced-rank `A_0` for
/// the case-two constructions. With `certify` the matrices are built and
/// every parameter is re-derived, enumerating distances up to `budget`
/// codewords (0 means the library default).
///
/// # Safety
/// `theorem` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eaq_construct(
    theorem: *const c_char,
    p: u64,
    m: u32,
    s: u32,
    a_l1: i64,
    a_l2: i64,
    eta_style: bool,
    certify: bool,
    budget: u64,
    out: *mut *mut EaqConstruction,
) -> EaqStatus {
    guard(|| {
        if out.is_null() {
            return fail(EaqStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let name = match read_str(theorem, "theorem") {
            Ok(n) => n,
            Err(s) => return s,
        };
        let th: Theorem = match name.parse() {
            Ok(t) => t,
            Err(e) => return fail(EaqStatus::InvalidArgument, e),
        };
        let style = if eta_style { A0Style::Eta } else { A0Style::Standard };
        let req = ConstructionRequest::new(p, m, s, th).reps(rep(a_l1), rep(a_l2)).style(style).certify(certify);
        let mut opts = CertifyOptions::default();
        if budget > 0 {
            opts.budget = budget;
        }
        match bch::construct(&req, &opts) {
            Ok(res) => {
                *out = Box::into_raw(Box::new(EaqConstruction(res)));
                EaqStatus::Ok
            }
            Err(e) => map_error(e),
        }
    })
}

/// # Safety
/// `h` must be null or a handle from `eaq_construct` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eaq_construction_free(h: *mut EaqConstruction) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eaq_construction_params(h: *const EaqConstruction, out: *mut EaqParams) -> EaqStatus {
    guard(|| {
        if h.is_null() || out.is_null() {
            return fail(EaqStatus::NullPointer, "handle or out is null");
        }
        let res = &(*h).0;
        let p = res.params;
        let d_exact = res.certification.as_ref().and_then(|c| match c.distance {
            bch::DistanceReport::Exact { value } => Some(value),
            _ => None,
        });
        *out = EaqParams {
            q: p.q,
            n: p.n as u64,
            k: p.k as u64,
            d_lower: p.d_lower,
            d_exact: d_exact.unwrap_or(0),
            has_d_exact: d_exact.is_some(),
            c: p.c as u64,
        };
        EaqStatus::Ok
    })
}

/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eaq_construction_certification(h: *const EaqConstruction) -> EaqCertification {
    if h.is_null() {
        return EaqCertification::NotPerformed;
    }
    match &(*h).0.certification {
        None => EaqCertification::NotPerformed,
        Some(c) if c.passed() => EaqCertification::Passed,
        Some(_) => EaqCertification::Failed,
    }
}

/// The construction as the CLI's JSON record; null on error. Free the
/// result with `eaq_string_free`.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eaq_construction_to_json(h: *const EaqConstruction) -> *mut c_char {
    let mut json = None;
    let status = guard(|| {
        if h.is_null() {
            return fail(EaqStatus::NullPointer, "handle is null");
        }
        let rec = OutputRecord::from_result(&(*h).0, None);
        match serde_json::to_string(&rec) {
            Ok(s) => {
                json = Some(s);
                EaqStatus::Ok
            }
            Err(e) => fail(EaqStatus::LibraryError, e.to_string()),
        }
    });
    match (status, json) {
        (EaqStatus::Ok, Some(s)) => CString::new(s).map_or(ptr::null_mut(), CString::into_raw),
        _ => ptr::null_mut(),
    }
}

/// `B(p, m, s)`, the bound below which cosets are asymmetric of full size.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eaq_bound_b(p: u64, m: u32, s: u32, out: *mut u64) -> EaqStatus {
    guard(|| {
        if out.is_null() {
            return fail(EaqStatus::NullPointer, "out is null");
        }
        match cosets::bound_b(p, m, s) {
            Ok(b) => {
                *out = b;
                EaqStatus::Ok
            }
            Err(e) => fail(EaqStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn eaq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn eaq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Version of the JSON record layout; a static string.
#[no_mangle]
pub extern "C" fn eaq_schema_version() -> *const c_char {
    static V: &CStr = c"1";
    debug_assert_eq!(V.to_str().ok(), Some(eaqecc::cli::SCHEMA_VERSION));
    V.as_ptr()
}
