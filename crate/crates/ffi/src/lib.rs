//! C ABI over `adm-core`.
//!
//! Fields are opaque `AdmField` handles owned by the caller and released
//! with [`adm_field_free`]. Every fallible function returns an
//! [`AdmStatus`]; on failure the message is available from
//! [`adm_last_error`] on the same thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use adm_core::deconvolution::DeconvOp;
use adm_core::diagnostics::{bound_main, error_report, kappa_log10, residual_stress_norm};
use adm_core::inequalities::{check_inq_tech1, check_inq_tech2, check_inq_tech3, check_transf_est, Inequality};
use adm_core::solver::{run_experiment, SimConfig};
use adm_core::spectral::sobolev_norm;
use adm_core::{snapshot, AdmError, FilterSpec, SpectralField, WaveLattice};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidFilter = 3,
    Domain = 4,
    Io = 5,
    BlowUp = 6,
    Config = 7,
    Panic = 8,
}

/// Filter family selector for [`AdmFilter`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmFilterKind {
    Helmholtz = 0,
    Gaussian = 1,
    GaussianApprox = 2,
    HelmholtzPower = 3,
}

/// Filter description. `alpha` and `p` are used by Helmholtz, `alpha` by
/// both Gaussian kinds, `mu` by Helmholtz powers and `m` by the
/// approximant and powers.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct AdmFilter {
    pub kind: AdmFilterKind,
    pub alpha: f64,
    pub p: f64,
    pub mu: f64,
    pub m: u32,
}

/// Opaque velocity field in spectral form.
pub struct AdmField {
    inner: SpectralField,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &AdmError) -> AdmStatus {
    match e {
        AdmError::InvalidLattice(_) | AdmError::LatticeMismatch { .. } | AdmError::EmptyGrid => {
            AdmStatus::InvalidArgument
        }
        AdmError::InvalidFilter(_) | AdmError::NonInvertibleFilter(_) | AdmError::NotHelmholtz(_) => {
            AdmStatus::InvalidFilter
        }
        AdmError::Domain(_) | AdmError::UnknownInequality(_) => AdmStatus::Domain,
        AdmError::Io { .. } | AdmError::Snapshot { .. } => AdmStatus::Io,
        AdmError::BlowUp { .. } | AdmError::Cfl { .. } => AdmStatus::BlowUp,
        AdmError::Config(_) | AdmError::Json(_) => AdmStatus::Config,
    }
}

struct Fail(AdmStatus, String);

impl From<AdmError> for Fail {
    fn from(e: AdmError) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn fail<T>(status: AdmStatus, msg: &str) -> Result<T, Fail> {
    Err(Fail(status, msg.to_string()))
}

/// Runs `f`, records any error or panic and converts it to a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> AdmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AdmStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            AdmStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().map_or_else(|| fail(AdmStatus::NullPointer, "null output pointer"), Ok)
}

unsafe fn field<'a>(p: *const AdmField) -> Result<&'a SpectralField, Fail> {
    p.as_ref()
        .map(|f| &f.inner)
        .map_or_else(|| fail(AdmStatus::NullPointer, "null field handle"), Ok)
}

unsafe fn c_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return fail(AdmStatus::NullPointer, "null string");
    }
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| fail(AdmStatus::InvalidArgument, "string is not UTF-8"))
}

unsafe fn spec_of(p: *const AdmFilter) -> Result<FilterSpec, Fail> {
    let f = p
        .as_ref()
        .map_or_else(|| fail(AdmStatus::NullPointer, "null filter"), Ok)?;
    let spec = match f.kind {
        AdmFilterKind::Helmholtz => FilterSpec::Helmholtz { alpha: f.alpha, p: f.p },
        AdmFilterKind::Gaussian => FilterSpec::Gaussian { alpha: f.alpha },
        AdmFilterKind::GaussianApprox => FilterSpec::GaussianApprox { alpha: f.alpha, m: f.m },
        AdmFilterKind::HelmholtzPower => FilterSpec::HelmholtzPower { mu: f.mu, m: f.m },
    };
    spec.validate()?;
    Ok(spec)
}

fn boxed(f: SpectralField) -> *mut AdmField {
    Box::into_raw(Box::new(AdmField { inner: f }))
}

/// Library version, a static nul-terminated string.
#[no_mangle]
pub extern "C" fn adm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last error message of this thread into `buf` (truncated,
/// always nul-terminated when `len > 0`) and returns its full length in
/// bytes, or 0 when no error was recorded.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn adm_last_error(buf: *mut c_char, len: libc::size_t) -> libc::size_t {
    LAST_ERROR.with(|e| match &*e.borrow() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len - 1);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
                *buf.add(n) = 0;
            }
            bytes.len()
        }
    })
}

/// Filter symbol Ĝ at `k2 = |k|²`.
///
/// # Safety
/// `filter` and `result` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn adm_filter_symbol(filter: *const AdmFilter, k2: f64, result: *mut f64) -> AdmStatus {
    guard(|| {
        let spec = spec_of(filter)?;
        if !(k2 >= 0.0) {
            return fail(AdmStatus::Domain, "k2 must be >= 0");
        }
        *out(result)? = spec.symbol(k2);
        Ok(())
    })
}

/// Deconvolution symbol D̂_N at `k2`.
///
/// # Safety
/// `filter` and `result` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn adm_deconv_symbol(
    filter: *const AdmFilter,
    order: u32,
    k2: f64,
    result: *mut f64,
) -> AdmStatus {
    guard(|| {
        let spec = spec_of(filter)?;
        if !(k2 >= 0.0) {
            return fail(AdmStatus::Domain, "k2 must be >= 0");
        }
        *out(result)? = DeconvOp::new(spec, order).symbol(k2);
        Ok(())
    })
}

/// Evaluates one scalar inequality (`inq_tech2`, `inq_tech3`, `inq_tech1`
/// or `transf_est`). Unused parameters are ignored. `passes` receives 1 or 0
/// and `margin` receives `rhs − lhs`; either may be null.
///
/// # Safety
/// `name` must be a nul-terminated string; outputs must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn adm_check_inequality(
    name: *const c_char,
    x: f64,
    a: f64,
    m: f64,
    n: u32,
    passes: *mut i32,
    margin: *mut f64,
) -> AdmStatus {
    guard(|| {
        let which: Inequality = c_str(name)?.parse()?;
        let case = match which {
            Inequality::InqTech2 => check_inq_tech2(x, a, m)?,
            Inequality::InqTech3 => check_inq_tech3(x, a, m)?,
            Inequality::InqTech1 => check_inq_tech1(x, a)?,
            Inequality::TransfEst => check_transf_est(x, n)?,
        };
        if let Some(p) = passes.as_mut() {
            *p = case.passes() as i32;
        }
        if let Some(g) = margin.as_mut() {
            *g = case.margin;
        }
        Ok(())
    })
}

/// `log₁₀ κ` for `κ = u⁴/ν · exp(u⁴/ν³)`.
///
/// # Safety
/// `result` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adm_kappa_log10(u_l4h1: f64, nu: f64, result: *mut f64) -> AdmStatus {
    guard(|| {
        if !(u_l4h1 >= 0.0 && nu > 0.0) {
            return fail(AdmStatus::Domain, "need u >= 0 and nu > 0");
        }
        *out(result)? = kappa_log10(u_l4h1, nu);
        Ok(())
    })
}

/// `log₁₀` of the main Helmholtz error bound.
///
/// # Safety
/// `result` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adm_bound_main_log10(
    u_l4h1: f64,
    nu: f64,
    c: f64,
    alpha: f64,
    p: f64,
    order: u32,
    result: *mut f64,
) -> AdmStatus {
    guard(|| {
        if !(u_l4h1 >= 0.0 && nu > 0.0 && c > 0.0 && alpha > 0.0 && p > 0.0) {
            return fail(AdmStatus::Domain, "need u >= 0 and positive nu, C, alpha, p");
        }
        *out(result)? = bound_main(u_l4h1, nu, c, alpha, p, order).log10;
        Ok(())
    })
}

/// Taylor-Green vortex on an `n³` grid of a box of side `box_size`.
///
/// # Safety
/// `handle` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adm_field_taylor_green(
    n: usize,
    box_size: f64,
    amplitude: f64,
    handle: *mut *mut AdmField,
) -> AdmStatus {
    guard(|| {
        let slot = out(handle)?;
        let lat = WaveLattice::new(n, box_size)?;
        *slot = boxed(SpectralField::taylor_green(lat, amplitude, false)?);
        Ok(())
    })
}

/// Seeded divergence-free random field with `|û_k| ∝ |k|^{−decay/2}` and
/// `||u||₀² = energy`.
///
/// # Safety
/// `handle` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adm_field_random(
    n: usize,
    box_size: f64,
    decay: f64,
    energy: f64,
    seed: u64,
    handle: *mut *mut AdmField,
) -> AdmStatus {
    guard(|| {
        let slot = out(handle)?;
        let lat = WaveLattice::new(n, box_size)?;
        *slot = boxed(SpectralField::random(lat, decay, energy, seed));
        Ok(())
    })
}

/// Reads an ADMF snapshot.
///
/// # Safety
/// `path` must be a nul-terminated string and `handle` valid.
#[no_mangle]
pub unsafe extern "C" fn adm_field_read(path: *const c_char, handle: *mut *mut AdmField) -> AdmStatus {
    guard(|| {
        let slot = out(handle)?;
        let path = PathBuf::from(c_str(path)?);
        *slot = boxed(snapshot::read(&path)?);
        Ok(())
    })
}

/// Writes an ADMF snapshot.
///
/// # Safety
/// `f` must be a live handle and `path` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn adm_field_write(f: *const AdmField, path: *const c_char) -> AdmStatus {
    guard(|| {
        let u = field(f)?;
        snapshot::write(&PathBuf::from(c_str(path)?), u)?;
        Ok(())
    })
}

/// Releases a field. Null is ignored.
///
/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn adm_field_free(f: *mut AdmField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Grid points per axis, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn adm_field_n(f: *const AdmField) -> usize {
    f.as_ref().map_or(0, |f| f.inner.lattice().n())
}

/// `||u||_s`.
///
/// # Safety
/// `f` must be a live handle and `result` valid.
#[no_mangle]
pub unsafe extern "C" fn adm_field_sobolev_norm(f: *const AdmField, s: f64, result: *mut f64) -> AdmStatus {
    guard(|| {
        *out(result)? = sobolev_norm(field(f)?, s);
        Ok(())
    })
}

/// New field `G u`.
///
/// # Safety
/// `f`, `filter` and `handle` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adm_field_filter(
    f: *const AdmField,
    filter: *const AdmFilter,
    handle: *mut *mut AdmField,
) -> AdmStatus {
    guard(|| {
        let spec = spec_of(filter)?;
        let u = field(f)?;
        *out(handle)? = boxed(spec.apply(u));
        Ok(())
    })
}

/// New field `D_N u`.
///
/// # Safety
/// `f`, `filter` and `handle` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adm_field_deconvolve(
    f: *const AdmField,
    filter: *const AdmFilter,
    order: u32,
    handle: *mut *mut AdmField,
) -> AdmStatus {
    guard(|| {
        let spec = spec_of(filter)?;
        let u = field(f)?;
        *out(handle)? = boxed(DeconvOp::new(spec, order).apply(u));
        Ok(())
    })
}

/// `||u⊗u − D_N ū ⊗ D_N ū||₀`.
///
/// # Safety
/// `f`, `filter` and `result` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adm_residual_stress_norm(
    f: *const AdmField,
    filter: *const AdmFilter,
    order: u32,
    result: *mut f64,
) -> AdmStatus {
    guard(|| {
        let spec = spec_of(filter)?;
        *out(result)? = residual_stress_norm(field(f)?, &spec, order)?;
        Ok(())
    })
}

/// Runs the experiment described by a JSON configuration and returns the
/// error report (per-order summary, fitted rate, constants) as a JSON
/// string in `report`, to be released with [`adm_string_free`].
///
/// # Safety
/// `config_json` must be a nul-terminated string and `report` valid.
#[no_mangle]
pub unsafe extern "C" fn adm_run_experiment(config_json: *const c_char, report: *mut *mut c_char) -> AdmStatus {
    guard(|| {
        let slot = out(report)?;
        let cfg = SimConfig::from_json(c_str(config_json)?)?;
        cfg.validate()?;
        let output = run_experiment(&cfg)?;
        let r = error_report(&output)?;
        let text = serde_json::json!({
            "config_sha256": cfg.hash(),
            "summary": r.summary,
            "beta": r.beta,
            "constants": r.constants,
        })
        .to_string();
        *slot = CString::new(text).expect("json has no nul").into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn adm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
