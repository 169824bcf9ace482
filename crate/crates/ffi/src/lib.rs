//! C ABI over the core library: opaque handles, integer status codes, and
//! plain-double getters, so other languages can drive the moment pipeline,
//! both expansion fits, and the closed-form references.
//!
//! Conventions: constructors return a status and write the handle through an
//! out-parameter; every handle has a matching `_free`; getters either return
//! a plain value or a status plus out-parameters. On any failing call a
//! thread-local message is set, readable via `cmx_last_error_message` until
//! the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use prony_cmx::cmx::{
    cmx_from_connected, correlation_squared, eval_en, eval_un, zn_from_moments, CmxApproximant,
    CmxError, ZnApproximant,
};
use prony_cmx::moments::{connected_moments, ConnectedMoments, MomentSequence};
use prony_cmx::prony::{solve_linear_prony, solve_secular, PronyError, PronyProblem, PronySolution};
use prony_cmx::reference::{exact_c2_ho, exact_e_ho};
use prony_cmx::state::{GaussianPolyState, PolynomialHamiltonian};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CmxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownModel = 3,
    Degenerate = 4,
    RepeatedRoots = 5,
    IllConditioned = 6,
    InsufficientData = 7,
    Pole = 8,
    Internal = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn prony_status(e: &PronyError) -> CmxStatus {
    match e {
        PronyError::DegenerateProblem { .. } => CmxStatus::Degenerate,
        PronyError::RepeatedRoots { .. } => CmxStatus::RepeatedRoots,
        PronyError::IllConditionedVandermonde { .. } => CmxStatus::IllConditioned,
    }
}

fn cmx_status(e: &CmxError) -> CmxStatus {
    match e {
        CmxError::Prony(p) => prony_status(p),
        CmxError::InsufficientMoments { .. } => CmxStatus::InsufficientData,
        CmxError::PoleEncountered { .. } => CmxStatus::Pole,
    }
}

fn guard<F: FnOnce() -> CmxStatus>(f: F) -> CmxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            CmxStatus::Internal
        }
    }
}

/// Model/trial pair from the built-in catalog.
pub struct CmxSystem {
    hamiltonian: PolynomialHamiltonian,
    trial: GaussianPolyState,
}

/// Exact moment and connected-moment sequences (doubles at this boundary).
pub struct CmxMoments {
    moments: MomentSequence,
    connected: ConnectedMoments,
}

/// Ground-energy expansion at fixed order.
pub struct CmxEnergyFit {
    fit: CmxApproximant,
}

/// Exponential fit of the generating function at fixed order.
pub struct CmxZFit {
    fit: ZnApproximant,
}

/// Raw exponential-sum solution for caller-supplied data.
pub struct CmxPronyFit {
    sol: PronySolution,
}

/// Open a catalog entry by name (`ho`, `ho_gauss`, `quartic`, `coupled2d`,
/// `double_well`).
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `out` must be a valid
/// pointer. On success the handle must be released with `cmx_system_free`.
#[no_mangle]
pub unsafe extern "C" fn cmx_system_open(
    name: *const c_char,
    out: *mut *mut CmxSystem,
) -> CmxStatus {
    guard(|| {
        if name.is_null() || out.is_null() {
            set_error("null pointer argument");
            return CmxStatus::NullPointer;
        }
        let name = match unsafe { CStr::from_ptr(name) }.to_str() {
            Ok(s) => s,
            Err(_) => {
                set_error("model name is not valid UTF-8");
                return CmxStatus::InvalidArgument;
            }
        };
        match prony_cmx::catalog::find(name) {
            Some(e) => {
                let sys = Box::new(CmxSystem {
                    hamiltonian: e.hamiltonian,
                    trial: e.trial,
                });
                unsafe { *out = Box::into_raw(sys) };
                CmxStatus::Ok
            }
            None => {
                set_error(&format!("unknown catalog model `{name}`"));
                CmxStatus::UnknownModel
            }
        }
    })
}

/// # Safety
/// `sys` must come from `cmx_system_open` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cmx_system_free(sys: *mut CmxSystem) {
    if !sys.is_null() {
        drop(unsafe { Box::from_raw(sys) });
    }
}

/// Compute μ_0..μ_J and I_1..I_J for the system.
///
/// # Safety
/// `sys` must be a live handle; `out` must be valid. Release the result with
/// `cmx_moments_free`.
#[no_mangle]
pub unsafe extern "C" fn cmx_moments_compute(
    sys: *const CmxSystem,
    j_max: u32,
    out: *mut *mut CmxMoments,
) -> CmxStatus {
    guard(|| {
        if sys.is_null() || out.is_null() {
            set_error("null pointer argument");
            return CmxStatus::NullPointer;
        }
        if j_max < 1 || j_max > 64 {
            set_error("j_max must be in 1..=64");
            return CmxStatus::InvalidArgument;
        }
        let sys = unsafe { &*sys };
        match MomentSequence::compute(&sys.hamiltonian, &sys.trial, j_max as usize) {
            Ok(m) => {
                let connected = connected_moments(&m);
                unsafe {
                    *out = Box::into_raw(Box::new(CmxMoments {
                        moments: m,
                        connected,
                    }))
                };
                CmxStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                CmxStatus::InvalidArgument
            }
        }
    })
}

/// # Safety
/// `m` must come from `cmx_moments_compute` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cmx_moments_free(m: *mut CmxMoments) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Highest available moment order J.
///
/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cmx_moments_order(m: *const CmxMoments) -> u32 {
    if m.is_null() {
        return 0;
    }
    unsafe { &*m }.moments.j_max() as u32
}

/// μ_j as a double.
///
/// # Safety
/// `m` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cmx_moments_mu(
    m: *const CmxMoments,
    j: u32,
    out: *mut f64,
) -> CmxStatus {
    if m.is_null() || out.is_null() {
        set_error("null pointer argument");
        return CmxStatus::NullPointer;
    }
    let mm = unsafe { &*m };
    if j as usize > mm.moments.j_max() {
        set_error("moment index out of range");
        return CmxStatus::InvalidArgument;
    }
    unsafe { *out = mm.moments.mu_f64()[j as usize] };
    CmxStatus::Ok
}

/// Connected moment I_k, k = 1..J.
///
/// # Safety
/// `m` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cmx_moments_connected(
    m: *const CmxMoments,
    k: u32,
    out: *mut f64,
) -> CmxStatus {
    if m.is_null() || out.is_null() {
        set_error("null pointer argument");
        return CmxStatus::NullPointer;
    }
    let mm = unsafe { &*m };
    if k < 1 || k as usize > mm.connected.j_max() {
        set_error("connected-moment index out of range");
        return CmxStatus::InvalidArgument;
    }
    unsafe { *out = prony_cmx::scalar::ratio_to_f64(mm.connected.get(k as usize)) };
    CmxStatus::Ok
}

/// Solve F_k = Σ A_n b_n^(k+s) for caller-supplied data (len = 2N values
/// F_1..F_2N). `use_pencil` nonzero selects the Hankel-pencil route,
/// otherwise the polynomial route.
///
/// # Safety
/// `values` must point to `len` doubles; `out` must be valid. Release with
/// `cmx_prony_free`.
#[no_mangle]
pub unsafe extern "C" fn cmx_prony_solve(
    values: *const f64,
    len: usize,
    shift: i32,
    use_pencil: i32,
    out: *mut *mut CmxPronyFit,
) -> CmxStatus {
    guard(|| {
        if values.is_null() || out.is_null() {
            set_error("null pointer argument");
            return CmxStatus::NullPointer;
        }
        if len == 0 || len % 2 != 0 || shift < -1 {
            set_error("need an even, positive number of values and shift >= -1");
            return CmxStatus::InvalidArgument;
        }
        let f = unsafe { std::slice::from_raw_parts(values, len) }.to_vec();
        let p = PronyProblem::new(f, shift);
        let solved = if use_pencil != 0 {
            solve_secular(&p)
        } else {
            solve_linear_prony(&p)
        };
        match solved {
            Ok(sol) => {
                unsafe { *out = Box::into_raw(Box::new(CmxPronyFit { sol })) };
                CmxStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                prony_status(&e)
            }
        }
    })
}

/// # Safety
/// `p` must come from `cmx_prony_solve` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cmx_prony_free(p: *mut CmxPronyFit) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cmx_prony_order(p: *const CmxPronyFit) -> u32 {
    if p.is_null() {
        return 0;
    }
    unsafe { &*p }.sol.exponents.len() as u32
}

/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cmx_prony_residual(p: *const CmxPronyFit) -> f64 {
    if p.is_null() {
        return f64::NAN;
    }
    unsafe { &*p }.sol.residual
}

unsafe fn complex_getter(
    z: Option<num_complex::Complex64>,
    re: *mut f64,
    im: *mut f64,
) -> CmxStatus {
    if re.is_null() || im.is_null() {
        set_error("null pointer argument");
        return CmxStatus::NullPointer;
    }
    match z {
        Some(z) => {
            unsafe {
                *re = z.re;
                *im = z.im;
            }
            CmxStatus::Ok
        }
        None => {
            set_error("index out of range");
            CmxStatus::InvalidArgument
        }
    }
}

/// Exponent b_idx (sorted by ascending real part).
///
/// # Safety
/// `p` must be a live handle; `re`/`im` valid.
#[no_mangle]
pub unsafe extern "C" fn cmx_prony_exponent(
    p: *const CmxPronyFit,
    idx: u32,
    re: *mut f64,
    im: *mut f64,
) -> CmxStatus {
    if p.is_null() {
        set_error("null pointer argument");
        return CmxStatus::NullPointer;
    }
    let sol = &unsafe { &*p }.sol;
    unsafe { complex_getter(sol.exponents.get(idx as usize).copied(), re, im) }
}

/// Amplitude A_idx, ordered with the exponents.
///
/// # Safety
/// `p` must be a live handle; `re`/`im` valid.
#[no_mangle]
pub unsafe extern "C" fn cmx_prony_amplitude(
    p: *const CmxPronyFit,
    idx: u32,
    re: *mut f64,
    im: *mut f64,
) -> CmxStatus {
    if p.is_null() {
        set_error("null pointer argument");
        return CmxStatus::NullPointer;
    }
    let sol = &unsafe { &*p }.sol;
    unsafe { complex_getter(sol.amplitudes.get(idx as usize).copied(), re, im) }
}

/// Build the ground-energy expansion at the given order from a moment handle.
///
/// # Safety
/// `m` must be a live handle; `out` valid. Release with
/// `cmx_energy_fit_free`.
#[no_mangle]
pub unsafe extern "C" fn cmx_energy_fit(
    m: *const CmxMoments,
    order: u32,
    out: *mut *mut CmxEnergyFit,
) -> CmxStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            set_error("null pointer argument");
            return CmxStatus::NullPointer;
        }
        if order < 1 {
            set_error("order must be >= 1");
            return CmxStatus::InvalidArgument;
        }
        let mm = unsafe { &*m };
        match cmx_from_connected(&mm.connected, order as usize) {
            Ok(fit) => {
                unsafe { *out = Box::into_raw(Box::new(CmxEnergyFit { fit })) };
                CmxStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                cmx_status(&e)
            }
        }
    })
}

/// # Safety
/// `f` must come from `cmx_energy_fit` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cmx_energy_fit_free(f: *mut CmxEnergyFit) {
    if !f.is_null() {
        drop(unsafe { Box::from_raw(f) });
    }
}

/// The ground-energy estimate A_0.
///
/// # Safety
/// `f` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cmx_energy_estimate(f: *const CmxEnergyFit) -> f64 {
    if f.is_null() {
        return f64::NAN;
    }
    unsafe { &*f }.fit.a0
}

/// E^(N)(t).
///
/// # Safety
/// `f` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cmx_energy_eval(
    f: *const CmxEnergyFit,
    t: f64,
    out: *mut f64,
) -> CmxStatus {
    guard(|| {
        if f.is_null() || out.is_null() {
            set_error("null pointer argument");
            return CmxStatus::NullPointer;
        }
        unsafe { *out = eval_en(&(*f).fit, t) };
        CmxStatus::Ok
    })
}

/// 1 when every recovered root has positive real part.
///
/// # Safety
/// `f` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cmx_energy_all_roots_positive(f: *const CmxEnergyFit) -> i32 {
    if f.is_null() {
        return 0;
    }
    unsafe { &*f }.fit.diagnostics.all_positive as i32
}

/// Number of negative real roots.
///
/// # Safety
/// `f` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cmx_energy_negative_root_count(f: *const CmxEnergyFit) -> u32 {
    if f.is_null() {
        return 0;
    }
    unsafe { &*f }.fit.diagnostics.negative_real_roots.len() as u32
}

/// Root b_idx of the expansion.
///
/// # Safety
/// `f` must be a live handle; `re`/`im` valid.
#[no_mangle]
pub unsafe extern "C" fn cmx_energy_root(
    f: *const CmxEnergyFit,
    idx: u32,
    re: *mut f64,
    im: *mut f64,
) -> CmxStatus {
    if f.is_null() {
        set_error("null pointer argument");
        return CmxStatus::NullPointer;
    }
    let fit = &unsafe { &*f }.fit;
    unsafe { complex_getter(fit.exponents.get(idx as usize).copied(), re, im) }
}

/// Build the generating-function fit at the given order.
///
/// # Safety
/// `m` must be a live handle; `out` valid. Release with `cmx_zfit_free`.
#[no_mangle]
pub unsafe extern "C" fn cmx_zfit(
    m: *const CmxMoments,
    order: u32,
    out: *mut *mut CmxZFit,
) -> CmxStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            set_error("null pointer argument");
            return CmxStatus::NullPointer;
        }
        if order < 1 {
            set_error("order must be >= 1");
            return CmxStatus::InvalidArgument;
        }
        let mm = unsafe { &*m };
        match zn_from_moments(&mm.moments, order as usize) {
            Ok(fit) => {
                unsafe { *out = Box::into_raw(Box::new(CmxZFit { fit })) };
                CmxStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                cmx_status(&e)
            }
        }
    })
}

/// # Safety
/// `f` must come from `cmx_zfit` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cmx_zfit_free(f: *mut CmxZFit) {
    if !f.is_null() {
        drop(unsafe { Box::from_raw(f) });
    }
}

/// Amplitude/exponent pair (ascending exponents).
///
/// # Safety
/// `f` must be a live handle; `amplitude`/`exponent` valid.
#[no_mangle]
pub unsafe extern "C" fn cmx_zfit_param(
    f: *const CmxZFit,
    idx: u32,
    amplitude: *mut f64,
    exponent: *mut f64,
) -> CmxStatus {
    if f.is_null() || amplitude.is_null() || exponent.is_null() {
        set_error("null pointer argument");
        return CmxStatus::NullPointer;
    }
    let fit = &unsafe { &*f }.fit;
    let i = idx as usize;
    if i >= fit.order {
        set_error("index out of range");
        return CmxStatus::InvalidArgument;
    }
    unsafe {
        *amplitude = fit.amplitudes[i];
        *exponent = fit.exponents[i];
    }
    CmxStatus::Ok
}

/// U^(N)(t) = −Z_N′(t)/Z_N(t); fails with `Pole` where Z_N vanishes.
///
/// # Safety
/// `f` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cmx_zfit_eval_u(
    f: *const CmxZFit,
    t: f64,
    out: *mut f64,
) -> CmxStatus {
    guard(|| {
        if f.is_null() || out.is_null() {
            set_error("null pointer argument");
            return CmxStatus::NullPointer;
        }
        match eval_un(&unsafe { &*f }.fit, t) {
            Ok(v) => {
                unsafe { *out = v };
                CmxStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                CmxStatus::Pole
            }
        }
    })
}

/// |Z_N(iτ)|².
///
/// # Safety
/// `f` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cmx_zfit_correlation_sq(f: *const CmxZFit, tau: f64) -> f64 {
    if f.is_null() {
        return f64::NAN;
    }
    correlation_squared(&unsafe { &*f }.fit, tau)
}

/// Exact E(t) for the oscillator with the widened quadratic trial.
#[no_mangle]
pub extern "C" fn cmx_exact_e_ho(t: f64) -> f64 {
    exact_e_ho(t)
}

/// Exact |C(τ)|² for the oscillator with the width-1 Gaussian trial.
#[no_mangle]
pub extern "C" fn cmx_exact_c2_ho(tau: f64) -> f64 {
    exact_c2_ho(tau)
}

/// Static name for a status code.
#[no_mangle]
pub extern "C" fn cmx_status_name(status: CmxStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        CmxStatus::Ok => b"ok\0",
        CmxStatus::NullPointer => b"null pointer\0",
        CmxStatus::InvalidArgument => b"invalid argument\0",
        CmxStatus::UnknownModel => b"unknown model\0",
        CmxStatus::Degenerate => b"degenerate problem\0",
        CmxStatus::RepeatedRoots => b"repeated roots\0",
        CmxStatus::IllConditioned => b"ill-conditioned system\0",
        CmxStatus::InsufficientData => b"insufficient data\0",
        CmxStatus::Pole => b"pole encountered\0",
        CmxStatus::Internal => b"internal error\0",
    };
    s.as_ptr() as *const c_char
}

/// Detail message for the most recent failure on this thread. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cmx_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
