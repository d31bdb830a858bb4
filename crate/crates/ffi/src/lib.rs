//! C interface to `tiltver`.
//!
//! Every call returns a [`TvStatus`]. On failure the message is available
//! from [`tv_last_error`] on the same thread. Strings returned through out
//! parameters are owned by the caller and released with [`tv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use tiltver::extbounds::rank2_ext_report;
use tiltver::verify::{
    character_report, emit_report, levi_consistency, ph2_region_check, tmc_check, Case, CaseConfig, CharKind, Format,
};
use tiltver::{Error, Weight};

/// Opaque handle to one `(type, p)` case with its caches.
pub struct TvCase {
    case: Case,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Config = 3,
    UnsupportedType = 4,
    InvalidWeight = 5,
    Underdetermined = 6,
    TiltingDataMissing = 7,
    Table = 8,
    Computation = 9,
    Io = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvFormat {
    Text = 0,
    Json = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvCharKind {
    Weyl = 0,
    Simple = 1,
    BabyVerma = 2,
    Qhat = 3,
    Tilting = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TvStatus {
    match e {
        Error::UnsupportedType(_) => TvStatus::UnsupportedType,
        Error::NotDominant(_) | Error::NotRestricted(_) | Error::Parse(_) => TvStatus::InvalidWeight,
        Error::Underdetermined { .. } => TvStatus::Underdetermined,
        Error::TiltingDataMissing { .. } => TvStatus::TiltingDataMissing,
        Error::MalformedOverride { .. } | Error::LinkageViolation { .. } | Error::OverrideConflict { .. } => TvStatus::Table,
        Error::Config(_) => TvStatus::Config,
        Error::Io(_) => TvStatus::Io,
        Error::DatumMismatch
        | Error::NotInvariant
        | Error::NotDivisible
        | Error::DivisionByZero
        | Error::NegativeMultiplicity { .. }
        | Error::Inconsistent { .. } => TvStatus::Computation,
    }
}

struct Fail(TvStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TvStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TvStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(TvStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(TvStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn opt_path(p: *const c_char, what: &str) -> Result<Vec<PathBuf>, Fail> {
    if p.is_null() {
        Ok(Vec::new())
    } else {
        Ok(vec![PathBuf::from(str_arg(p, what)?)])
    }
}

unsafe fn case_arg<'a>(c: *const TvCase) -> Result<&'a Case, Fail> {
    c.as_ref().map(|h| &h.case).ok_or_else(|| Fail(TvStatus::NullPointer, "case handle is null".into()))
}

unsafe fn weight_arg(case: &Case, coords: *const i64, len: usize) -> Result<Weight, Fail> {
    if coords.is_null() {
        return Err(Fail(TvStatus::NullPointer, "weight is null".into()));
    }
    let rank = case.datum().rank();
    if len != rank {
        return Err(Fail(TvStatus::InvalidWeight, format!("weight has {len} coordinates, expected {rank}")));
    }
    Ok(Weight::new(std::slice::from_raw_parts(coords, len)))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(TvStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Fail(TvStatus::Computation, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn format_of(f: TvFormat) -> Format {
    match f {
        TvFormat::Text => Format::Text,
        TvFormat::Json => Format::Json,
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn tv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn tv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Create a case for `type_label` (e.g. "B2") at the prime `p`.
///
/// # Safety
/// `type_label` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_case_new(type_label: *const c_char, p: i64, out: *mut *mut TvCase) -> TvStatus {
    tv_case_new_with_tables(type_label, p, std::ptr::null(), std::ptr::null(), true, out)
}

/// Like [`tv_case_new`], with optional table files (pass NULL to skip) and
/// a switch for contravariant-form resolution of sum-formula ambiguities.
///
/// # Safety
/// String arguments must be NULL or NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tv_case_new_with_tables(
    type_label: *const c_char,
    p: i64,
    tilting_table: *const c_char,
    decomp_table: *const c_char,
    form_resolution: bool,
    out: *mut *mut TvCase,
) -> TvStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(TvStatus::NullPointer, "output pointer is null".into()));
        }
        let mut cfg = CaseConfig::new(str_arg(type_label, "type label")?, p);
        cfg.tilting_tables = opt_path(tilting_table, "tilting table path")?;
        cfg.decomp_tables = opt_path(decomp_table, "decomposition table path")?;
        cfg.form_resolution = form_resolution;
        let case = Case::build(&cfg)?;
        *out = Box::into_raw(Box::new(TvCase { case }));
        Ok(())
    })
}

/// Release a case; NULL is ignored.
///
/// # Safety
/// `case` must come from `tv_case_new*` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tv_case_free(case: *mut TvCase) {
    if !case.is_null() {
        drop(Box::from_raw(case));
    }
}

/// Rank of the root datum, or 0 for NULL.
///
/// # Safety
/// `case` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tv_case_rank(case: *const TvCase) -> usize {
    case.as_ref().map_or(0, |h| h.case.datum().rank())
}

/// Release a string returned by this library; NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Full sweep over `X₁`. `refuted` (may be NULL) receives whether any
/// REFUTED-NECESSARY verdict occurred.
///
/// # Safety
/// `case` must be live; `out` valid; `refuted` NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn tv_tmc_report(
    case: *const TvCase,
    format: TvFormat,
    out: *mut *mut c_char,
    refuted: *mut bool,
) -> TvStatus {
    guard(|| {
        let report = tmc_check(case_arg(case)?);
        if let Some(r) = refuted.as_mut() {
            *r = report.has_refutation();
        }
        put_string(out, emit_report(&report, format_of(format)))
    })
}

/// Ext-weight candidate report.
///
/// # Safety
/// `case` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tv_ext_report(case: *const TvCase, format: TvFormat, out: *mut *mut c_char) -> TvStatus {
    guard(|| {
        let case = case_arg(case)?;
        put_string(out, emit_report(&rank2_ext_report(&case.simples)?, format_of(format)))
    })
}

/// Levi comparison for the 0-based simple roots `j[0..j_len]`.
///
/// # Safety
/// `case` must be live, `j` valid for `j_len` reads (or NULL with
/// `j_len = 0`), and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tv_levi_report(
    case: *const TvCase,
    j: *const usize,
    j_len: usize,
    format: TvFormat,
    out: *mut *mut c_char,
) -> TvStatus {
    guard(|| {
        let case = case_arg(case)?;
        let j: &[usize] = match (j.is_null(), j_len) {
            (_, 0) => &[],
            (true, _) => return Err(Fail(TvStatus::NullPointer, "J is null".into())),
            (false, n) => std::slice::from_raw_parts(j, n),
        };
        put_string(out, emit_report(&levi_consistency(case, j)?, format_of(format)))
    })
}

/// Sweep of the region `⟨λ, α₀∨⟩ ≤ p(h−2)`.
///
/// # Safety
/// `case` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tv_ph2_report(case: *const TvCase, format: TvFormat, out: *mut *mut c_char) -> TvStatus {
    guard(|| put_string(out, emit_report(&ph2_region_check(case_arg(case)?)?, format_of(format))))
}

/// One character at the weight `coords[0..len]`.
///
/// # Safety
/// `case` must be live, `coords` valid for `len` reads, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tv_character(
    case: *const TvCase,
    kind: TvCharKind,
    coords: *const i64,
    len: usize,
    format: TvFormat,
    out: *mut *mut c_char,
) -> TvStatus {
    guard(|| {
        let case = case_arg(case)?;
        let w = weight_arg(case, coords, len)?;
        let kind = match kind {
            TvCharKind::Weyl => CharKind::Weyl,
            TvCharKind::Simple => CharKind::Simple,
            TvCharKind::BabyVerma => CharKind::Babyverma,
            TvCharKind::Qhat => CharKind::Qhat,
            TvCharKind::Tilting => CharKind::Tilting,
        };
        put_string(out, emit_report(&character_report(case, kind, &w)?, format_of(format)))
    })
}

/// `a^λ_μ` as a JSON object keyed by comma-separated weights.
///
/// # Safety
/// `case` must be live, `coords` valid for `len` reads, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tv_a_coefficients(
    case: *const TvCase,
    coords: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> TvStatus {
    guard(|| {
        let case = case_arg(case)?;
        let w = weight_arg(case, coords, len)?;
        if !w.is_restricted(case.ctx.p) {
            return Err(Error::NotRestricted(w).into());
        }
        let a = case.g1t.a_coefficients(&w)?;
        let mut s = String::from("{");
        for (i, (mu, n)) in a.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!("\"{mu}\":{n}"));
        }
        s.push('}');
        put_string(out, s)
    })
}
