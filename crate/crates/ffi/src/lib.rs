//! C interface to `toric-apolarity`.
//!
//! Fans and forms are opaque handles owned by the caller. Every fallible call
//! returns a [`TaStatus`]; on failure [`ta_last_error`] describes what went
//! wrong on the calling thread. Strings handed out by the library must be
//! released with [`ta_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::{Arc, OnceLock};

use toric_apolarity::apolarity::ApolarForm;
use toric_apolarity::bounds::{bound_report, catalecticant};
use toric_apolarity::ideals::{cactus_certificate, length_estimate, IdealGens, LengthEstimate};
use toric_apolarity::linalg::DEFAULT_PRIME;
use toric_apolarity::{fixtures, Error, FanModel, GradedRing};

/// Result of a library call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed input: bad TOML, bad polynomial, wrong degree, and so on.
    InputError = 3,
    /// Well-formed input the mathematics refuses, such as a non-Cartier
    /// ample class or a certificate whose ideal is not apolar to the form.
    Refused = 4,
    /// The library panicked; this is a bug.
    Panic = 5,
}

/// A fan together with its lazily built Cox ring.
pub struct TaFan {
    fan: Arc<FanModel>,
    ring: OnceLock<Arc<GradedRing>>,
}

/// A form in the dual module of a fan's Cox ring.
pub struct TaForm {
    form: ApolarForm,
}

/// Catalecticant bounds at one degree.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct TaBounds {
    pub catalecticant_rank: usize,
    pub cartier: bool,
    pub border_lower: usize,
    pub rank_lower: usize,
    /// Meaningful only when `cartier` is set.
    pub cactus_lower: usize,
}

/// Outcome of a length estimate.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct TaLength {
    pub value: usize,
    pub stabilized: bool,
}

/// Outcome of a cactus certificate.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct TaCactus {
    pub length: usize,
    pub stabilized: bool,
    /// `cr(F) <= cactus_upper` when `stabilized`.
    pub cactus_upper: usize,
    /// `r(F) <= rank_upper` when `has_rank_upper`.
    pub has_rank_upper: bool,
    pub rank_upper: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.name() {
            "NoCertificate" | "InvalidCertificate" | "NotCartier" | "ContainmentFailed" | "DegenerateSample"
            | "PointInIrrelevantLocus" | "NonSquare" => TaStatus::Refused,
            _ => TaStatus::InputError,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> TaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            TaStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside toric-apolarity".into());
            TaStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(TaStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(TaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(TaStatus::NullArgument, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure(TaStatus::NullArgument, "output pointer is null".into()))
}

fn ring(fan: &TaFan) -> Result<Arc<GradedRing>, Failure> {
    if let Some(r) = fan.ring.get() {
        return Ok(Arc::clone(r));
    }
    let r = Arc::new(GradedRing::new(Arc::clone(&fan.fan)).map_err(Error::from)?);
    Ok(Arc::clone(fan.ring.get_or_init(|| r)))
}

fn new_fan(fan: FanModel) -> *mut TaFan {
    Box::into_raw(Box::new(TaFan { fan: Arc::new(fan), ring: OnceLock::new() }))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message for the last failed call on this thread, or null. The caller
/// owns the string.
#[no_mangle]
pub extern "C" fn ta_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ta_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a fan from the text of a TOML fan file.
///
/// # Safety
/// `toml` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_fan_from_toml(toml: *const c_char, out_fan: *mut *mut TaFan) -> TaStatus {
    guard(|| {
        let fan = FanModel::from_toml(text(toml, "toml")?)?;
        *out(out_fan)? = new_fan(fan);
        Ok(())
    })
}

/// One of the bundled surfaces: `hirzebruch`, `weighted_plane` or `fake_plane`.
///
/// # Safety
/// `name` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_fan_bundled(name: *const c_char, out_fan: *mut *mut TaFan) -> TaStatus {
    guard(|| {
        let name = text(name, "name")?;
        let fan = fixtures::by_name(name)
            .ok_or_else(|| Failure(TaStatus::InputError, format!("InputError: no bundled fan {name:?}")))?;
        *out(out_fan)? = new_fan(fan);
        Ok(())
    })
}

/// # Safety
/// `fan` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ta_fan_free(fan: *mut TaFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Number of rays, which is also the number of Cox coordinates.
///
/// # Safety
/// `fan` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn ta_fan_num_rays(fan: *const TaFan) -> usize {
    fan.as_ref().map_or(0, |f| f.fan.num_rays())
}

/// Class group and variable degrees, e.g. `Cl = Z x Z/3; deg a0=(1,0) ...`.
///
/// # Safety
/// `fan` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_fan_class_group(fan: *const TaFan, out_text: *mut *mut c_char) -> TaStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.fan;
        let degs: Vec<String> = f.var_names().iter().zip(f.var_degrees()).map(|(n, d)| format!("{n}={d}")).collect();
        *out(out_text)? = to_c(format!("Cl = {}; deg {}", f.class_group(), degs.join(" ")));
        Ok(())
    })
}

/// Whether a degree such as `"2,1"` or `"3;0"` is a Cartier class.
///
/// # Safety
/// `fan` must be a valid handle, `degree` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_fan_is_cartier(fan: *const TaFan, degree: *const c_char, out_flag: *mut bool) -> TaStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.fan;
        let d = f.parse_degree(text(degree, "degree")?)?;
        *out(out_flag)? = f.is_cartier(&d);
        Ok(())
    })
}

/// Parses a homogeneous form written in the dual coordinates.
///
/// # Safety
/// `fan` must be a valid handle, `form` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_form_parse(fan: *const TaFan, form: *const c_char, out_form: *mut *mut TaForm) -> TaStatus {
    guard(|| {
        let r = ring(handle(fan, "fan")?)?;
        let form = ApolarForm::parse(r, text(form, "form")?)?;
        *out(out_form)? = Box::into_raw(Box::new(TaForm { form }));
        Ok(())
    })
}

/// # Safety
/// `form` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ta_form_free(form: *mut TaForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// Degree of the form as text. The caller owns the string.
///
/// # Safety
/// `form` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_form_degree(form: *const TaForm, out_text: *mut *mut c_char) -> TaStatus {
    guard(|| {
        *out(out_text)? = to_c(handle(form, "form")?.form.degree().to_string());
        Ok(())
    })
}

/// Hilbert function of the apolar algebra at one degree.
///
/// # Safety
/// `form` must be a valid handle, `degree` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_form_hilbert(form: *const TaForm, degree: *const c_char, out_value: *mut usize) -> TaStatus {
    guard(|| {
        let f = &handle(form, "form")?.form;
        let d = f.fan().parse_degree(text(degree, "degree")?)?;
        *out(out_value)? = f.hilbert_value(&d);
        Ok(())
    })
}

/// Rank of the catalecticant matrix at `beta`.
///
/// # Safety
/// `form` must be a valid handle, `beta` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_form_catalecticant_rank(
    form: *const TaForm,
    beta: *const c_char,
    out_rank: *mut usize,
) -> TaStatus {
    guard(|| {
        let f = &handle(form, "form")?.form;
        let b = f.fan().parse_degree(text(beta, "beta")?)?;
        *out(out_rank)? = catalecticant(f, &b, Some(DEFAULT_PRIME)).rank;
        Ok(())
    })
}

/// Rank lower bounds from the catalecticant at `beta`.
///
/// # Safety
/// `form` must be a valid handle, `beta` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_form_bounds(form: *const TaForm, beta: *const c_char, out_bounds: *mut TaBounds) -> TaStatus {
    guard(|| {
        let f = &handle(form, "form")?.form;
        let b = f.fan().parse_degree(text(beta, "beta")?)?;
        let r = bound_report(f, &b);
        *out(out_bounds)? = TaBounds {
            catalecticant_rank: r.rank,
            cartier: r.cartier,
            border_lower: r.border,
            rank_lower: r.rank_bound,
            cactus_lower: r.cactus.unwrap_or(0),
        };
        Ok(())
    })
}

/// Whether the ideal spanned by comma-separated generators lies in the
/// apolar ideal of the form.
///
/// # Safety
/// `form` must be a valid handle, `ideal` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_form_contains(form: *const TaForm, ideal: *const c_char, out_flag: *mut bool) -> TaStatus {
    guard(|| {
        let f = &handle(form, "form")?.form;
        let i = IdealGens::parse_list(f.ring(), text(ideal, "ideal")?)?;
        *out(out_flag)? = f.apolar_contains(&i).map_err(Error::from)?;
        Ok(())
    })
}

fn length_out(est: &LengthEstimate) -> TaLength {
    TaLength { value: est.value, stabilized: est.stabilized }
}

/// Length of the scheme cut out by an ideal, sampled along multiples of an
/// ample Cartier class.
///
/// # Safety
/// `fan` must be a valid handle, `ideal` and `ample` valid C strings, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_length_estimate(
    fan: *const TaFan,
    ideal: *const c_char,
    ample: *const c_char,
    window: usize,
    max_k: usize,
    out_length: *mut TaLength,
) -> TaStatus {
    guard(|| {
        let r = ring(handle(fan, "fan")?)?;
        let i = IdealGens::parse_list(&r, text(ideal, "ideal")?)?;
        let a = r.fan().parse_degree(text(ample, "ample")?)?;
        *out(out_length)? = length_out(&length_estimate(&r, &i, &a, window, max_k).map_err(Error::from)?);
        Ok(())
    })
}

/// Containment check plus length estimate.
///
/// # Safety
/// `form` must be a valid handle, `ideal` and `ample` valid C strings, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_cactus_certificate(
    form: *const TaForm,
    ideal: *const c_char,
    ample: *const c_char,
    window: usize,
    max_k: usize,
    reduced: bool,
    out_cert: *mut TaCactus,
) -> TaStatus {
    guard(|| {
        let f = &handle(form, "form")?.form;
        let i = IdealGens::parse_list(f.ring(), text(ideal, "ideal")?)?;
        let a = f.fan().parse_degree(text(ample, "ample")?)?;
        let c = cactus_certificate(f, &i, &a, window, max_k, reduced).map_err(Error::from)?;
        *out(out_cert)? = TaCactus {
            length: c.length.value,
            stabilized: c.length.stabilized,
            cactus_upper: c.cactus_bound.unwrap_or(0),
            has_rank_upper: c.rank_bound.is_some(),
            rank_upper: c.rank_bound.unwrap_or(0),
        };
        Ok(())
    })
}
