//! C ABI over the core toolkit: opaque handles, status codes, and string
//! outputs allocated on the Rust side. The generated header lands in
//! `include/mgf.h`.
//!
//! Every entry point catches panics and maps library errors onto
//! [`MgfStatus`]; pointers returned through out-parameters must be released
//! with the matching `mgf_*_free` function.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mgf_core::exact::{rat_string, GraphIndex};
use mgf_core::laurent::{LaurentPolynomial, RenderFormat, Variable};
use mgf_core::num::{
    constant_mode_num, eisenstein_num, phi_sm, verify_identity, IdentityCheck, ModulusPoint,
    PrecisionReal,
};
use mgf_core::{decomp, theorem1, Error};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgfStatus {
    /// Success.
    Ok = 0,
    /// Arguments outside an operation's domain.
    InvalidArgument = 2,
    /// A formula assembled a divergent zeta(1) with nonzero coefficient.
    ZetaOneGuard = 3,
    /// Numerics could not certify the requested tolerance.
    Unconverged = 4,
    /// A conjectured identity failed exactly.
    ConjectureViolation = 5,
    /// A required pointer argument was null.
    NullPointer = 6,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 7,
    /// An internal panic was caught at the boundary.
    Internal = 8,
}

fn status_of(e: &Error) -> MgfStatus {
    match e {
        Error::Domain(_) => MgfStatus::InvalidArgument,
        Error::ZetaOneGuard(_) => MgfStatus::ZetaOneGuard,
        Error::Unconverged(_) => MgfStatus::Unconverged,
        Error::ConjectureViolation(_) => MgfStatus::ConjectureViolation,
    }
}

fn guarded<F: FnOnce() -> MgfStatus>(f: F) -> MgfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => MgfStatus::Internal,
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> MgfStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            MgfStatus::Ok
        }
        Err(_) => MgfStatus::Internal,
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, MgfStatus> {
    if p.is_null() {
        return Err(MgfStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| MgfStatus::InvalidUtf8)
}

/// Opaque exact Laurent polynomial of a constant Fourier mode.
pub struct MgfLaurent(LaurentPolynomial);

/// Opaque odd-pair decomposition of the bottom Laurent coefficient.
pub struct MgfGamma(decomp::OddPairDecomposition);

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn mgf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through an out-parameter of
/// this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mgf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Computes the exact Laurent polynomial of the constant mode of
/// `C_{a1,a2,a3}` (in the variable `u = 4 pi tau2`).
///
/// # Safety
/// `out` must be a valid pointer; on `Ok` it receives a handle to release
/// with [`mgf_laurent_free`].
#[no_mangle]
pub unsafe extern "C" fn mgf_laurent_compute(
    a1: u32,
    a2: u32,
    a3: u32,
    out: *mut *mut MgfLaurent,
) -> MgfStatus {
    if out.is_null() {
        return MgfStatus::NullPointer;
    }
    guarded(|| {
        let index = match GraphIndex::triple(a1, a2, a3) {
            Ok(i) => i,
            Err(e) => return status_of(&e),
        };
        match theorem1::laurent(&index) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(MgfLaurent(p)));
                MgfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Renders a Laurent polynomial. `variable` is one of `"u"`, `"y"`,
/// `"tau2"`; `format` one of `"text"`, `"latex"`, `"json"`.
///
/// # Safety
/// `poly` must be a live handle from [`mgf_laurent_compute`]; `out`
/// receives a string to release with [`mgf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mgf_laurent_render(
    poly: *const MgfLaurent,
    variable: *const c_char,
    format: *const c_char,
    out: *mut *mut c_char,
) -> MgfStatus {
    if poly.is_null() || out.is_null() {
        return MgfStatus::NullPointer;
    }
    let variable = match read_str(variable) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let format = match read_str(format) {
        Ok(s) => s,
        Err(st) => return st,
    };
    guarded(|| {
        let var = match Variable::parse(variable) {
            Ok(v) => v,
            Err(e) => return status_of(&e),
        };
        let fmt = match RenderFormat::parse(format) {
            Ok(f) => f,
            Err(e) => return status_of(&e),
        };
        let rendered = (*poly).0.convert_variable(var).render(fmt);
        write_string(out, rendered)
    })
}

/// Weight `w` of the underlying graph function.
///
/// # Safety
/// `poly` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mgf_laurent_weight(poly: *const MgfLaurent) -> u32 {
    if poly.is_null() {
        return 0;
    }
    (*poly).0.weight()
}

/// # Safety
/// `poly` must come from [`mgf_laurent_compute`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mgf_laurent_free(poly: *mut MgfLaurent) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Computes the odd-pair decomposition coefficients `gamma_k` of
/// `c_{2-w}`, cross-checked internally against the depth-two reduction.
///
/// # Safety
/// `out` must be valid; release the handle with [`mgf_gamma_free`].
#[no_mangle]
pub unsafe extern "C" fn mgf_gamma_compute(
    a1: u32,
    a2: u32,
    a3: u32,
    out: *mut *mut MgfGamma,
) -> MgfStatus {
    if out.is_null() {
        return MgfStatus::NullPointer;
    }
    guarded(|| {
        let index = match GraphIndex::triple(a1, a2, a3) {
            Ok(i) => i,
            Err(e) => return status_of(&e),
        };
        let gamma = match decomp::gamma_coeffs(&index) {
            Ok(g) => g,
            Err(e) => return status_of(&e),
        };
        match decomp::c_bottom_reduced(&index) {
            Ok(r) if r.folded() == gamma.folded() => {
                *out = Box::into_raw(Box::new(MgfGamma(gamma)));
                MgfStatus::Ok
            }
            Ok(_) => MgfStatus::ConjectureViolation,
            Err(e) => status_of(&e),
        }
    })
}

/// Number of raw coefficients (`w - 2`).
///
/// # Safety
/// `gamma` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mgf_gamma_len(gamma: *const MgfGamma) -> usize {
    if gamma.is_null() {
        return 0;
    }
    (*gamma).0.raw().len()
}

/// The raw coefficient `gamma_k` (1-based `k`) as a rational string.
///
/// # Safety
/// `gamma` must be live; `out` receives a string for [`mgf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mgf_gamma_raw(
    gamma: *const MgfGamma,
    k: usize,
    out: *mut *mut c_char,
) -> MgfStatus {
    if gamma.is_null() || out.is_null() {
        return MgfStatus::NullPointer;
    }
    let raw = (*gamma).0.raw();
    if k == 0 || k > raw.len() {
        return MgfStatus::InvalidArgument;
    }
    write_string(out, rat_string(&raw[k - 1]))
}

/// True when every `gamma_k` is an integer.
///
/// # Safety
/// `gamma` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mgf_gamma_all_integral(gamma: *const MgfGamma) -> bool {
    if gamma.is_null() {
        return false;
    }
    (*gamma).0.all_integral()
}

/// # Safety
/// `gamma` must come from [`mgf_gamma_compute`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mgf_gamma_free(gamma: *mut MgfGamma) {
    if !gamma.is_null() {
        drop(Box::from_raw(gamma));
    }
}

/// Evaluates the vanishing sum `X_n(a1,a2,a3)` exactly; writes the value
/// as a rational string (conjecturally always `"0"`).
///
/// # Safety
/// `out` receives a string for [`mgf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mgf_x_value(
    n: i64,
    a1: i64,
    a2: i64,
    a3: i64,
    out: *mut *mut c_char,
) -> MgfStatus {
    if out.is_null() {
        return MgfStatus::NullPointer;
    }
    guarded(|| match decomp::x_value(n, a1, a2, a3) {
        Ok(v) => write_string(out, rat_string(&v)),
        Err(e) => status_of(&e),
    })
}

/// Numeric constant Fourier mode of `C_{a1,a2,a3}` at `tau2`, by the
/// tail-corrected lattice sum; writes the value and an error bound.
///
/// # Safety
/// `value_out` and `error_out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mgf_constant_mode(
    a1: u32,
    a2: u32,
    a3: u32,
    tau2: f64,
    cutoff: u64,
    prec: u32,
    value_out: *mut f64,
    error_out: *mut f64,
) -> MgfStatus {
    if value_out.is_null() || error_out.is_null() {
        return MgfStatus::NullPointer;
    }
    guarded(|| {
        let index = match GraphIndex::triple(a1, a2, a3) {
            Ok(i) => i,
            Err(e) => return status_of(&e),
        };
        let t = PrecisionReal::from_f64(tau2, prec as usize);
        match constant_mode_num(&index, &t, cutoff, prec as usize) {
            Ok(v) => {
                *value_out = v.value.to_f64();
                *error_out = v.error.to_f64();
                MgfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Verifies one of the identities `id1 | id2a | id2b | id2c | id3` at
/// `tau = tau1 + i tau2`; writes `|LHS - RHS|` and returns `Ok` when it is
/// within `tol`, `Unconverged` otherwise.
///
/// # Safety
/// `name` must be a C string; `difference_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mgf_verify_identity(
    name: *const c_char,
    tau1: f64,
    tau2: f64,
    cutoff: u64,
    prec: u32,
    tol: f64,
    difference_out: *mut f64,
) -> MgfStatus {
    if difference_out.is_null() {
        return MgfStatus::NullPointer;
    }
    let name = match read_str(name) {
        Ok(s) => s,
        Err(st) => return st,
    };
    guarded(|| {
        let check = match IdentityCheck::parse(name) {
            Ok(c) => c,
            Err(e) => return status_of(&e),
        };
        let tau = match ModulusPoint::from_f64(tau1, tau2, prec as usize) {
            Ok(t) => t,
            Err(e) => return status_of(&e),
        };
        match verify_identity(check, &tau, cutoff, prec as usize) {
            Ok(rep) => {
                *difference_out = rep.difference;
                if rep.passes(tol) {
                    MgfStatus::Ok
                } else {
                    MgfStatus::Unconverged
                }
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Eisenstein series `E_w(tau)` by its Fourier expansion.
///
/// # Safety
/// `value_out` and `error_out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mgf_eisenstein(
    w: u32,
    tau1: f64,
    tau2: f64,
    terms: u64,
    prec: u32,
    value_out: *mut f64,
    error_out: *mut f64,
) -> MgfStatus {
    if value_out.is_null() || error_out.is_null() {
        return MgfStatus::NullPointer;
    }
    guarded(|| {
        let tau = match ModulusPoint::from_f64(tau1, tau2, prec as usize) {
            Ok(t) => t,
            Err(e) => return status_of(&e),
        };
        match eisenstein_num(w, &tau, terms, prec as usize) {
            Ok(v) => {
                *value_out = v.value.to_f64();
                *error_out = v.error.to_f64();
                MgfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Decaying particular solution `phi_{s,m}(y)`.
///
/// # Safety
/// `value_out` and `error_out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mgf_phi_sm(
    s: i64,
    m: i64,
    y: f64,
    prec: u32,
    value_out: *mut f64,
    error_out: *mut f64,
) -> MgfStatus {
    if value_out.is_null() || error_out.is_null() {
        return MgfStatus::NullPointer;
    }
    guarded(|| {
        let yv = PrecisionReal::from_f64(y, prec as usize);
        match phi_sm(s, m, &yv, prec as usize) {
            Ok(v) => {
                *value_out = v.value.to_f64();
                *error_out = v.error.to_f64();
                MgfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}
