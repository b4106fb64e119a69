//! C ABI over `dops-core`. Families are opaque handles; every fallible call
//! returns a [`DopsStatus`] and leaves a message for [`dops_last_error`].
//! Strings handed out by the library must be released with
//! [`dops_string_free`], handles with [`dops_family_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dops_core::cli::{render_reports, FamilyTable, Format, RunConfig};
use dops_core::families::{Family, FamilyData, LagFamily, LagParams, MlFamily, MlParams};
use dops_core::identities::{run_suites, Suite};
use dops_core::rational::{parse_rational, parse_rational_list};
use dops_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DopsStatus {
    Ok = 0,
    /// Null pointer or non UTF-8 string.
    InvalidArgument = 1,
    /// Parameters violate a family invariant.
    InvalidParameter = 2,
    /// Index beyond the generated order.
    OutOfRange = 3,
    /// At least one identity failed; the report is still produced.
    VerificationFailed = 4,
    UnknownSuite = 5,
    Internal = 6,
}

/// Opaque family handle.
pub struct DopsFamily {
    inner: Family,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> DopsStatus {
    match err {
        Error::UnknownSuite(_) => DopsStatus::UnknownSuite,
        Error::Io(_) | Error::Json(_) | Error::MalformedTable(_) => DopsStatus::InvalidArgument,
        _ => DopsStatus::InvalidParameter,
    }
}

fn guard(f: impl FnOnce() -> Result<(), DopsStatus>) -> DopsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DopsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            DopsStatus::Internal
        }
    }
}

fn core<T>(r: dops_core::Result<T>) -> Result<T, DopsStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, DopsStatus> {
    if s.is_null() {
        set_error(format!("{what} is null"));
        return Err(DopsStatus::InvalidArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        DopsStatus::InvalidArgument
    })
}

/// Null reads as the empty list.
unsafe fn read_opt<'a>(s: *const c_char, what: &str) -> Result<&'a str, DopsStatus> {
    if s.is_null() {
        Ok("")
    } else {
        read_str(s, what)
    }
}

fn hand_out(s: String, out: *mut *mut c_char) -> Result<(), DopsStatus> {
    let c = CString::new(s).map_err(|_| {
        set_error("output contains NUL");
        DopsStatus::Internal
    })?;
    // SAFETY: callers check `out` before computing `s`.
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), DopsStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        Err(DopsStatus::InvalidArgument)
    } else {
        Ok(())
    }
}

fn store(fam: Family, out: *mut *mut DopsFamily) {
    // SAFETY: `out` checked non-null by the caller.
    unsafe { *out = Box::into_raw(Box::new(DopsFamily { inner: fam })) };
}

/// Mittag-Leffler type family. `c` is a comma-separated list of
/// `c_1..c_{d-1}` and may be null.
///
/// # Safety
/// String arguments are null or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dops_family_ml(
    d: u32,
    alpha: *const c_char,
    beta: *const c_char,
    c: *const c_char,
    order: u32,
    out: *mut *mut DopsFamily,
) -> DopsStatus {
    guard(|| {
        non_null(out, "out")?;
        let alpha = core(parse_rational(read_str(alpha, "alpha")?))?;
        let beta = core(parse_rational(read_str(beta, "beta")?))?;
        let c = core(parse_rational_list(read_opt(c, "c")?))?;
        let params = core(MlParams::new(d as usize, alpha, beta, c))?;
        store(
            Family::ml(core(MlFamily::generate(params, order as usize))?),
            out,
        );
        Ok(())
    })
}

/// Laguerre type family. `b` is a comma-separated list of `b_1..b_d` and
/// may be null.
///
/// # Safety
/// String arguments are null or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dops_family_laguerre(
    d: u32,
    a: *const c_char,
    beta_exp: *const c_char,
    theta: *const c_char,
    b: *const c_char,
    order: u32,
    out: *mut *mut DopsFamily,
) -> DopsStatus {
    guard(|| {
        non_null(out, "out")?;
        let a = core(parse_rational(read_str(a, "a")?))?;
        let beta_exp = core(parse_rational(read_str(beta_exp, "beta_exp")?))?;
        let theta = core(parse_rational(read_str(theta, "theta")?))?;
        let b = core(parse_rational_list(read_opt(b, "b")?))?;
        let params = core(LagParams::new(d as usize, a, beta_exp, theta, b))?;
        let fam = core(LagFamily::generate(params, order as usize))?;
        store(
            Family {
                kind: dops_core::families::FamilyKind::Laguerre,
                data: FamilyData::Laguerre(fam),
            },
            out,
        );
        Ok(())
    })
}

/// Any family from a JSON run configuration, e.g.
/// `{"family": "hyp-laguerre", "params": {"alphavec": "1,1/2", "l": "1"}, "order": 8}`.
///
/// # Safety
/// `json` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dops_family_from_config(
    json: *const c_char,
    out: *mut *mut DopsFamily,
) -> DopsStatus {
    guard(|| {
        non_null(out, "out")?;
        let text = read_str(json, "json")?;
        let cfg: RunConfig = core(serde_json::from_str(text).map_err(Error::from))?;
        store(core(cfg.family())?, out);
        Ok(())
    })
}

/// Highest degree `N`; 0 for a null handle.
///
/// # Safety
/// `fam` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dops_family_order(fam: *const DopsFamily) -> usize {
    fam.as_ref().map_or(0, |f| f.inner.order())
}

/// # Safety
/// `fam` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dops_family_d(fam: *const DopsFamily) -> usize {
    fam.as_ref().map_or(0, |f| f.inner.d())
}

/// Coefficient of `x^k` in `P_n` as a `"p/q"` string.
///
/// # Safety
/// `fam` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dops_family_coeff(
    fam: *const DopsFamily,
    n: usize,
    k: usize,
    out: *mut *mut c_char,
) -> DopsStatus {
    guard(|| {
        non_null(fam, "family")?;
        non_null(out, "out")?;
        let p = (*fam).inner.p().get(n).ok_or_else(|| {
            set_error(format!("n = {n} exceeds the order"));
            DopsStatus::OutOfRange
        })?;
        hand_out(p.coeff(k).to_string(), out)
    })
}

/// The `gen` JSON table of the family, `Q` included when `with_q` is set.
///
/// # Safety
/// `fam` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dops_family_to_json(
    fam: *const DopsFamily,
    with_q: bool,
    out: *mut *mut c_char,
) -> DopsStatus {
    guard(|| {
        non_null(fam, "family")?;
        non_null(out, "out")?;
        let table = FamilyTable::from_family(&(*fam).inner, with_q);
        let text = core(serde_json::to_string_pretty(&table).map_err(Error::from))?;
        hand_out(text, out)
    })
}

/// Runs the comma-separated `suites` (null or `"all"` for every suite) and
/// writes the JSON report. Returns `VerificationFailed` when an identity
/// fails; the report is written either way.
///
/// # Safety
/// `fam` is a live handle; `suites` is null or NUL-terminated; `out` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dops_family_verify(
    fam: *const DopsFamily,
    suites: *const c_char,
    out: *mut *mut c_char,
) -> DopsStatus {
    let mut failed = false;
    let status = guard(|| {
        non_null(fam, "family")?;
        non_null(out, "out")?;
        let list = match read_opt(suites, "suites")? {
            "" => Suite::ALL.to_vec(),
            s => core(Suite::parse_list(s))?,
        };
        let fam = &(*fam).inner;
        let reports = core(run_suites(fam, &list))?;
        failed = reports.iter().any(|r| r.is_failure());
        hand_out(core(render_reports(fam, &reports, Format::Json))?, out)
    });
    if status == DopsStatus::Ok && failed {
        set_error("an identity failed");
        return DopsStatus::VerificationFailed;
    }
    status
}

/// # Safety
/// `fam` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dops_family_free(fam: *mut DopsFamily) {
    if !fam.is_null() {
        drop(Box::from_raw(fam));
    }
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dops_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dops_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
