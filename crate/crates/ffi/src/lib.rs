//! C ABI for the massey engine.
//!
//! Models are opaque [`MasseyModel`] handles. Every fallible call returns a
//! [`MasseyCode`]; on an error code, `massey_last_error` describes it. Strings
//! handed out by the library are NUL-terminated UTF-8 and must be released
//! with `massey_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use massey::cli::{massey_json, validate_json, verify_json};
use massey::io::{bundled_model, parse_polynomial, LoadedModel, ModelFile};
use massey::models::{blowup_certificate, ChernData, Route};
use massey::Error;

/// Result codes. `Ok` and `Negative` are successful calls; the rest are errors.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MasseyCode {
    Ok = 0,
    /// The call succeeded and the verdict is negative: an invalid model, an
    /// empty or inessential product, or a failed certificate.
    Negative = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    ParseError = 4,
    InvalidModel = 5,
    UnknownLabel = 6,
    NotACocycle = 7,
    DegreeOutOfRange = 8,
    HypothesisFailure = 9,
    BudgetExceeded = 10,
    CorruptCertificate = 11,
    Usage = 12,
    Internal = 13,
    Panic = 14,
}

/// A validated model with its labeled classes.
pub struct MasseyModel {
    inner: LoadedModel,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn code_of(e: &Error) -> MasseyCode {
    match e {
        Error::Parse { .. } => MasseyCode::ParseError,
        Error::InvalidField(_)
        | Error::InvalidPresentation(_)
        | Error::InvalidDifferential { .. }
        | Error::JacobiFailure(..)
        | Error::MixedPresentation => MasseyCode::InvalidModel,
        Error::UnknownLabel(_) => MasseyCode::UnknownLabel,
        Error::NotACocycle(_) => MasseyCode::NotACocycle,
        Error::DegreeOutOfRange { .. } | Error::DegreeMismatch { .. } => MasseyCode::DegreeOutOfRange,
        Error::HypothesisFailure(_) | Error::ExponentTooLarge { .. } => MasseyCode::HypothesisFailure,
        Error::BudgetExceeded { .. } => MasseyCode::BudgetExceeded,
        Error::CorruptCertificate(_) => MasseyCode::CorruptCertificate,
        Error::Usage(_) | Error::Io(_) => MasseyCode::Usage,
        _ => MasseyCode::Internal,
    }
}

/// Runs `f`, turning errors and panics into codes and the last-error message.
fn guard(f: impl FnOnce() -> Result<MasseyCode, (MasseyCode, String)>) -> MasseyCode {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(code)) => {
            set_error("");
            code
        }
        Ok(Err((code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("panic inside the massey engine");
            MasseyCode::Panic
        }
    }
}

fn fail(e: Error) -> (MasseyCode, String) {
    (code_of(&e), e.to_string())
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (MasseyCode, String)> {
    if s.is_null() {
        return Err((MasseyCode::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (MasseyCode::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `out` is null or valid for a pointer write.
unsafe fn put_string(out: *mut *mut c_char, text: String) -> Result<(), (MasseyCode, String)> {
    if out.is_null() {
        return Err((MasseyCode::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(text).map_err(|_| (MasseyCode::Internal, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn verdict(flag: bool) -> MasseyCode {
    if flag {
        MasseyCode::Ok
    } else {
        MasseyCode::Negative
    }
}

/// Message for the most recent error on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn massey_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Engine version, static.
#[no_mangle]
pub extern "C" fn massey_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn massey_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn store_model(out: *mut *mut MasseyModel, inner: LoadedModel) -> Result<MasseyCode, (MasseyCode, String)> {
    if out.is_null() {
        return Err((MasseyCode::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(MasseyModel { inner }));
    Ok(MasseyCode::Ok)
}

/// Loads and validates a model file given as JSON text.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn massey_model_load_json(json: *const c_char, out: *mut *mut MasseyModel) -> MasseyCode {
    guard(|| {
        let text = read_str(json, "json")?;
        let loaded = ModelFile::from_json(text).and_then(|f| f.build()).map_err(fail)?;
        store_model(out, loaded)
    })
}

/// Loads a bundled model by name (`kodaira_thurston`, `torus-3`, ...).
/// `field` is null for the rationals, or a field name such as `"F5"`.
///
/// # Safety
/// `name` is a NUL-terminated string, `field` is null or one; `out` is valid
/// for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn massey_model_bundled(
    name: *const c_char,
    field: *const c_char,
    out: *mut *mut MasseyModel,
) -> MasseyCode {
    guard(|| {
        let name = read_str(name, "name")?;
        let mut file = bundled_model(name).map_err(fail)?;
        if !field.is_null() {
            file.field = read_str(field, "field")?.to_string();
        }
        store_model(out, file.build().map_err(fail)?)
    })
}

/// Releases a model handle.
///
/// # Safety
/// `model` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn massey_model_free(model: *mut MasseyModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

unsafe fn model_ref<'a>(model: *const MasseyModel) -> Result<&'a MasseyModel, (MasseyCode, String)> {
    model
        .as_ref()
        .ok_or_else(|| (MasseyCode::NullPointer, "model is null".into()))
}

/// Writes `dim H^degree` to `out`.
///
/// # Safety
/// `model` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn massey_cohomology_dim(model: *const MasseyModel, degree: u32, out: *mut usize) -> MasseyCode {
    guard(|| {
        let m = model_ref(model)?;
        if out.is_null() {
            return Err((MasseyCode::NullPointer, "output pointer is null".into()));
        }
        m.inner.model.check_degree(degree as i64).map_err(fail)?;
        *out = m.inner.model.cohomology_dim(degree).map_err(fail)?;
        Ok(MasseyCode::Ok)
    })
}

/// Validates a model file (JSON text) and writes a JSON report to `report`.
/// Returns `Negative` for an invalid model.
///
/// # Safety
/// `json` is a NUL-terminated string; `report` is valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn massey_validate(json: *const c_char, report: *mut *mut c_char) -> MasseyCode {
    guard(|| {
        let text = read_str(json, "json")?;
        let (valid, out) = validate_json(text).map_err(fail)?;
        put_string(report, out)?;
        Ok(verdict(valid))
    })
}

/// `<a, b, c>` for classes given by label or polynomial; writes the verdict
/// as JSON. Returns `Negative` for an empty or inessential product.
///
/// # Safety
/// `model` is a live handle, `a`, `b`, `c` NUL-terminated strings, and
/// `verdict_json` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn massey_triple(
    model: *const MasseyModel,
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    verdict_json: *mut *mut c_char,
) -> MasseyCode {
    guard(|| {
        let m = model_ref(model)?;
        let labels = [read_str(a, "a")?, read_str(b, "b")?, read_str(c, "c")?]
            .map(str::to_string)
            .to_vec();
        let (positive, out) = massey_json(&m.inner, &labels).map_err(fail)?;
        put_string(verdict_json, out)?;
        Ok(verdict(positive))
    })
}

/// Builds a blow-up certificate. `route` is `"full-triple"` or
/// `"restricted-class"`; `chern_json` is null for the zero bundle or a JSON
/// array of polynomials `c_1, ..., c_{k+1}`.
///
/// # Safety
/// `model` is a live handle; string arguments are NUL-terminated (except a
/// null `chern_json`); `certificate` is valid for a pointer write.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn massey_blowup_certificate(
    model: *const MasseyModel,
    k: u32,
    route: *const c_char,
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    chern_json: *const c_char,
    certificate: *mut *mut c_char,
) -> MasseyCode {
    guard(|| {
        let m = &model_ref(model)?.inner;
        let route_name = read_str(route, "route")?;
        let route = Route::parse(route_name)
            .ok_or_else(|| (MasseyCode::Usage, format!("unknown route {route_name:?}")))?;
        let labels = [read_str(a, "a")?, read_str(b, "b")?, read_str(c, "c")?];
        let chern = if chern_json.is_null() {
            ChernData::zero(&m.model, k)
        } else {
            let text = read_str(chern_json, "chern_json")?;
            let list: Vec<String> = serde_json::from_str(text)
                .map_err(|e| (MasseyCode::ParseError, format!("chern_json: {e}")))?;
            let p = m.model.presentation();
            let classes = (0..=k as usize)
                .map(|i| {
                    let deg = 2 * (i as u32 + 1);
                    list.get(i)
                        .map_or(Ok(p.zero(deg)), |t| parse_polynomial(p, t, Some(deg)))
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(fail)?;
            if list.len() > k as usize + 1 {
                return Err((MasseyCode::Usage, "more than k + 1 Chern classes".into()));
            }
            ChernData::new(&m.model, k, classes).map_err(fail)?
        };
        let classes = labels.iter().map(|l| m.resolve(l)).collect::<Result<Vec<_>, _>>().map_err(fail)?;
        let cert = blowup_certificate(
            Arc::clone(&m.model),
            chern,
            route,
            [(labels[0], &classes[0]), (labels[1], &classes[1]), (labels[2], &classes[2])],
        )
        .map_err(fail)?;
        put_string(certificate, cert.to_json())?;
        Ok(MasseyCode::Ok)
    })
}

/// Re-checks a certificate and writes the JSON check list to `report`.
/// Returns `Negative` when a check fails.
///
/// # Safety
/// `certificate` is a NUL-terminated string; `report` is valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn massey_certificate_verify(certificate: *const c_char, report: *mut *mut c_char) -> MasseyCode {
    guard(|| {
        let text = read_str(certificate, "certificate")?;
        let (passed, out) = verify_json(text).map_err(fail)?;
        put_string(report, out)?;
        Ok(verdict(passed))
    })
}
