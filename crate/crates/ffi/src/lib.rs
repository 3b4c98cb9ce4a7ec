//! C ABI for the invariant library: opaque handles, integer status codes,
//! and a per-thread last-error message. The header is generated into
//! `include/luinv.h` by the build script.
//!
//! Ownership rules: every `*_new`/`*_build`/`*_parse` output must be
//! released with the matching `*_free`; strings returned by
//! `luinv_last_error_message` are borrowed and valid until the next
//! failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use num_traits::ToPrimitive;

use luinv::builder::{build_highest_weight_basis, SubspaceBasis};
use luinv::embed::embed_distinguishable;
use luinv::exterior::FermionState;
use luinv::invariants::{
    antisymmetric_family, closed_form_i1111, closed_form_i16, closed_form_i22,
    eval_projection_invariant, normalize_exact,
};
use luinv::io;
use luinv::scalar::GaussianRational;

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LuinvStatus {
    /// Success.
    LuinvOk = 0,
    /// A pointer argument was null.
    LuinvNullPointer = 1,
    /// Input text failed to parse; see `luinv_last_error_message`.
    LuinvParseError = 2,
    /// The computation rejected its inputs or failed to certify.
    LuinvComputeError = 3,
    /// An argument was out of range for the requested operation.
    LuinvInvalidArgument = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

fn fail(e: &luinv::Error) -> LuinvStatus {
    set_error(&e.to_string());
    match e {
        luinv::Error::Parse { .. } => LuinvStatus::LuinvParseError,
        _ => LuinvStatus::LuinvComputeError,
    }
}

/// Message describing the most recent failure on this thread. Borrowed;
/// overwritten by the next failing call.
#[no_mangle]
pub extern "C" fn luinv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Opaque handle to an orthogonal family basis of the highest-weight
/// subspace.
pub struct LuinvBasis(SubspaceBasis);

/// Opaque handle to an exact-rational k-fermion state.
pub struct LuinvState {
    psi: FermionState<GaussianRational>,
}

/// Builds the basis for k-fermion states, symmetric power m, n modes.
/// On success stores a new handle in `out`.
/// # Safety
/// `out` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn luinv_basis_build(
    k: u8,
    m: u32,
    n: u8,
    out: *mut *mut LuinvBasis,
) -> LuinvStatus {
    if out.is_null() {
        return LuinvStatus::LuinvNullPointer;
    }
    match build_highest_weight_basis(k, m, n) {
        Ok(basis) => {
            unsafe { *out = Box::into_raw(Box::new(LuinvBasis(basis))) };
            LuinvStatus::LuinvOk
        }
        Err(e) => fail(&e),
    }
}

/// Total dimension of the subspace spanned by the basis, or 0 for null.
/// # Safety
/// `basis` must be null or a live handle from `luinv_basis_build`.
#[no_mangle]
pub unsafe extern "C" fn luinv_basis_dimension(basis: *const LuinvBasis) -> u64 {
    if basis.is_null() {
        return 0;
    }
    unsafe { &*basis }.0.total_dimension
}

/// Number of orthogonal families in the basis, or 0 for null.
/// # Safety
/// `basis` must be null or a live handle from `luinv_basis_build`.
#[no_mangle]
pub unsafe extern "C" fn luinv_basis_family_count(basis: *const LuinvBasis) -> u64 {
    if basis.is_null() {
        return 0;
    }
    unsafe { &*basis }.0.families.len() as u64
}

/// # Safety
/// `basis` must be null or a handle not freed before; it is consumed.
#[no_mangle]
pub unsafe extern "C" fn luinv_basis_free(basis: *mut LuinvBasis) {
    if !basis.is_null() {
        drop(unsafe { Box::from_raw(basis) });
    }
}

/// Parses a state from text in either the `fermion` or the
/// `distinguishable` file format; distinguishable states are embedded into
/// the fermionic space. On success stores a new handle in `out`.
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn luinv_state_parse(
    text: *const c_char,
    out: *mut *mut LuinvState,
) -> LuinvStatus {
    if text.is_null() || out.is_null() {
        return LuinvStatus::LuinvNullPointer;
    }
    let text = match unsafe { CStr::from_ptr(text) }.to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("state text is not valid UTF-8");
            return LuinvStatus::LuinvParseError;
        }
    };
    let first_word = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    let parsed = match first_word {
        "fermion" => io::parse_fermion_state(text, "<memory>"),
        "distinguishable" => {
            io::parse_distinguishable_state(text, "<memory>").map(|phi| embed_distinguishable(&phi))
        }
        other => {
            set_error(&format!(
                "unknown state format {other:?}; expected a 'fermion' or 'distinguishable' header"
            ));
            return LuinvStatus::LuinvParseError;
        }
    };
    match parsed {
        Ok(psi) => {
            unsafe { *out = Box::into_raw(Box::new(LuinvState { psi })) };
            LuinvStatus::LuinvOk
        }
        Err(e) => fail(&e),
    }
}

/// Number of single-particle modes of the state, or 0 for null.
/// # Safety
/// `state` must be null or a live handle from `luinv_state_parse`.
#[no_mangle]
pub unsafe extern "C" fn luinv_state_modes(state: *const LuinvState) -> u8 {
    if state.is_null() {
        return 0;
    }
    unsafe { &*state }.psi.n()
}

/// Number of particles of the state, or 0 for null.
/// # Safety
/// `state` must be null or a live handle from `luinv_state_parse`.
#[no_mangle]
pub unsafe extern "C" fn luinv_state_particles(state: *const LuinvState) -> u8 {
    if state.is_null() {
        return 0;
    }
    unsafe { &*state }.psi.k()
}

/// # Safety
/// `state` must be null or a handle not freed before; it is consumed.
#[no_mangle]
pub unsafe extern "C" fn luinv_state_free(state: *mut LuinvState) {
    if !state.is_null() {
        drop(unsafe { Box::from_raw(state) });
    }
}

fn finish(
    raw: Result<GaussianRational, luinv::Error>,
    psi: &FermionState<GaussianRational>,
    m: u32,
    out: *mut f64,
) -> LuinvStatus {
    let raw = match raw {
        Ok(v) => v,
        Err(e) => return fail(&e),
    };
    match normalize_exact(&raw, psi, m) {
        Ok(exact) => {
            unsafe { *out = exact.to_f64().unwrap_or(f64::NAN) };
            LuinvStatus::LuinvOk
        }
        Err(e) => fail(&e),
    }
}

/// Evaluates the basis projection invariant of the normalized state and
/// stores it in `out`. The state may live on fewer modes than the basis;
/// more modes re-expand the basis internally.
/// # Safety
/// `basis` and `state` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn luinv_eval_projection(
    basis: *const LuinvBasis,
    state: *const LuinvState,
    out: *mut f64,
) -> LuinvStatus {
    if basis.is_null() || state.is_null() || out.is_null() {
        return LuinvStatus::LuinvNullPointer;
    }
    let basis = &unsafe { &*basis }.0;
    let psi = &unsafe { &*state }.psi;
    let raw = if psi.n() > basis.n {
        basis
            .reexpand(psi.n())
            .and_then(|b| eval_projection_invariant(&b, psi))
    } else {
        eval_projection_invariant(basis, psi)
    };
    finish(raw, psi, basis.m, out)
}

/// Named closed forms, selectable without constructing a basis.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LuinvClosedForm {
    /// Two-fermion pairing invariant (degree 4).
    LuinvI22 = 0,
    /// Two-fermion quartic complement invariant (degree 4).
    LuinvI1111 = 1,
    /// Two-fermion sextic determinant-type invariant (degree 6).
    LuinvI16 = 2,
}

/// Evaluates a named closed-form invariant of the normalized state.
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn luinv_eval_closed_form(
    which: LuinvClosedForm,
    state: *const LuinvState,
    out: *mut f64,
) -> LuinvStatus {
    if state.is_null() || out.is_null() {
        return LuinvStatus::LuinvNullPointer;
    }
    let psi = &unsafe { &*state }.psi;
    let (raw, m) = match which {
        LuinvClosedForm::LuinvI22 => (closed_form_i22(psi), 2),
        LuinvClosedForm::LuinvI1111 => (closed_form_i1111(psi), 2),
        LuinvClosedForm::LuinvI16 => (closed_form_i16(psi), 3),
    };
    finish(raw, psi, m, out)
}

/// Evaluates the fully antisymmetric family invariant over `base_n`-mode
/// windows (base_n must be a multiple of the particle number).
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn luinv_eval_antisymmetric_family(
    state: *const LuinvState,
    base_n: u8,
    out: *mut f64,
) -> LuinvStatus {
    if state.is_null() || out.is_null() {
        return LuinvStatus::LuinvNullPointer;
    }
    let psi = &unsafe { &*state }.psi;
    if psi.k() == 0 || base_n == 0 {
        set_error("base_n and the particle number must be positive");
        return LuinvStatus::LuinvInvalidArgument;
    }
    let m = base_n as u32 / psi.k() as u32;
    finish(antisymmetric_family(psi, base_n), psi, m, out)
}

/// Writes the exact normalized projection invariant as a `p/q` string into
/// `buf` (NUL-terminated, truncated to `cap` bytes). Returns the required
/// length excluding the NUL, or -1 on error.
/// # Safety
/// `basis` and `state` must be live handles; `buf` must point to at
/// least `cap` writable bytes (or be null with cap 0).
#[no_mangle]
pub unsafe extern "C" fn luinv_eval_projection_exact(
    basis: *const LuinvBasis,
    state: *const LuinvState,
    buf: *mut c_char,
    cap: usize,
) -> isize {
    if basis.is_null() || state.is_null() {
        return -1;
    }
    let b = &unsafe { &*basis }.0;
    let psi = &unsafe { &*state }.psi;
    let raw = if psi.n() > b.n {
        match b
            .reexpand(psi.n())
            .and_then(|x| eval_projection_invariant(&x, psi))
        {
            Ok(v) => v,
            Err(e) => {
                fail(&e);
                return -1;
            }
        }
    } else {
        match eval_projection_invariant(b, psi) {
            Ok(v) => v,
            Err(e) => {
                fail(&e);
                return -1;
            }
        }
    };
    let exact = match normalize_exact(&raw, psi, b.m) {
        Ok(v) => v,
        Err(e) => {
            fail(&e);
            return -1;
        }
    };
    let rendered = io::format_rational(&exact);
    let bytes = rendered.as_bytes();
    if !buf.is_null() && cap > 0 {
        let n = bytes.len().min(cap - 1);
        unsafe {
            ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast(), n);
            *buf.add(n) = 0;
        }
    }
    bytes.len() as isize
}
#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    unsafe fn parse(text: &str) -> *mut LuinvState {
        let c = CString::new(text).unwrap();
        let mut handle: *mut LuinvState = ptr::null_mut();
        assert_eq!(
            luinv_state_parse(c.as_ptr(), &mut handle),
            LuinvStatus::LuinvOk
        );
        handle
    }

    #[test]
    fn basis_build_and_projection() {
        unsafe {
            let mut basis: *mut LuinvBasis = ptr::null_mut();
            assert_eq!(luinv_basis_build(2, 2, 4, &mut basis), LuinvStatus::LuinvOk);
            assert_eq!(luinv_basis_dimension(basis), 20);
            assert_eq!(luinv_basis_family_count(basis), 4);

            let state = parse("fermion n=4 k=2\n1,2\t1 0\n3,4\t1 0\n");
            let mut value = 0.0f64;
            assert_eq!(
                luinv_eval_projection(basis, state, &mut value),
                LuinvStatus::LuinvOk
            );
            assert!((value - 5.0 / 6.0).abs() < 1e-14);

            let mut buf = [0 as c_char; 32];
            let len = luinv_eval_projection_exact(basis, state, buf.as_mut_ptr(), buf.len());
            assert!(len > 0);
            let s = CStr::from_ptr(buf.as_ptr()).to_str().unwrap();
            assert_eq!(s, "5/6");

            luinv_state_free(state);
            luinv_basis_free(basis);
        }
    }

    #[test]
    fn closed_forms_and_embedding() {
        unsafe {
            let state = parse("distinguishable dims=2,2,2\n0 0 0\t1 0\n1 1 1\t1 0\n");
            assert_eq!(luinv_state_modes(state), 6);
            assert_eq!(luinv_state_particles(state), 3);

            let mut basis: *mut LuinvBasis = ptr::null_mut();
            assert_eq!(luinv_basis_build(3, 2, 6, &mut basis), LuinvStatus::LuinvOk);
            let mut value = 0.0f64;
            assert_eq!(
                luinv_eval_projection(basis, state, &mut value),
                LuinvStatus::LuinvOk
            );
            assert!((value - 0.75).abs() < 1e-14);
            luinv_basis_free(basis);
            luinv_state_free(state);

            let pair = parse("fermion n=4 k=2\n1,2\t1 0\n3,4\t1 0\n");
            let mut v = 0.0f64;
            assert_eq!(
                luinv_eval_closed_form(LuinvClosedForm::LuinvI1111, pair, &mut v),
                LuinvStatus::LuinvOk
            );
            assert!((v - 1.0 / 6.0).abs() < 1e-14);
            assert_eq!(
                luinv_eval_antisymmetric_family(pair, 4, &mut v),
                LuinvStatus::LuinvOk
            );
            assert!((v - 1.0 / 6.0).abs() < 1e-14);
            luinv_state_free(pair);
        }
    }

    #[test]
    fn errors_set_message_and_code() {
        unsafe {
            let c = CString::new("fermion n=4 k=2\n2,1\t1 0\n").unwrap();
            let mut handle: *mut LuinvState = ptr::null_mut();
            assert_eq!(
                luinv_state_parse(c.as_ptr(), &mut handle),
                LuinvStatus::LuinvParseError
            );
            let msg = CStr::from_ptr(luinv_last_error_message()).to_str().unwrap();
            assert!(msg.contains("strictly increasing"), "{msg}");

            // wrong particle number for a two-fermion closed form
            let state = parse("fermion n=6 k=3\n1,2,3\t1 0\n");
            let mut v = 0.0;
            assert_eq!(
                luinv_eval_closed_form(LuinvClosedForm::LuinvI22, state, &mut v),
                LuinvStatus::LuinvComputeError
            );
            luinv_state_free(state);

            assert_eq!(
                luinv_basis_build(2, 2, 4, ptr::null_mut()),
                LuinvStatus::LuinvNullPointer
            );
            assert_eq!(luinv_basis_dimension(ptr::null()), 0);
            luinv_state_free(ptr::null_mut());
            luinv_basis_free(ptr::null_mut());
        }
    }
}
