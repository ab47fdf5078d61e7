//! C interface to `qaffine`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Strings returned through out-parameters are
//! NUL-terminated, heap-allocated, and released with [`qa_string_free`].
//! Every fallible call returns a [`QaStatus`]; out-parameters are written only
//! on [`QaStatus::Ok`]. Details of the most recent failure on the calling
//! thread are available from [`qa_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};

use qaffine::cartan::{build_cartan, check_invertibility_condition, quantized_cartan, CartanData};
use qaffine::monomial::{Monomial, SpectralParam};
use qaffine::qchar_engine::{classical_dimension, fm_expand, QcharError};
use qaffine::screening::{kernel_solve, QCharacter, ScreeningError};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidCartan = 3,
    NotApplicable = 4,
    NotDominant = 5,
    Underdetermined = 6,
    Inconsistent = 7,
    Panic = 8,
}

/// A validated, symmetrized generalized Cartan matrix.
pub struct QaCartan {
    inner: CartanData,
}

/// A truncated q-character.
pub struct QaCharacter {
    inner: QCharacter,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: QaStatus, msg: impl Into<String>) -> QaStatus {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
    status
}

fn guard(f: impl FnOnce() -> QaStatus + UnwindSafe) -> QaStatus {
    catch_unwind(f).unwrap_or_else(|_| fail(QaStatus::Panic, "internal panic"))
}

fn qchar_status(e: QcharError) -> QaStatus {
    let status = match &e {
        QcharError::NotApplicable(_) => QaStatus::NotApplicable,
        QcharError::NotDominant(_) => QaStatus::NotDominant,
        QcharError::Screening(s) => return screening_status(s.clone()),
        _ => QaStatus::Inconsistent,
    };
    fail(status, e.to_string())
}

fn screening_status(e: ScreeningError) -> QaStatus {
    let status = match &e {
        ScreeningError::Underdetermined(_) => QaStatus::Underdetermined,
        ScreeningError::DepthTooShallow { .. } => QaStatus::InvalidArgument,
        ScreeningError::Cartan(_) => QaStatus::NotApplicable,
        ScreeningError::NoSolution(_) => QaStatus::Inconsistent,
    };
    fail(status, e.to_string())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> QaStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            QaStatus::Ok
        }
        Err(_) => fail(QaStatus::Inconsistent, "output contains a NUL byte"),
    }
}

/// Builds a Cartan datum from a row-major `n × n` matrix.
///
/// `r` may be null, in which case the minimal symmetrizer is chosen;
/// otherwise it must point to `n` entries.
///
/// # Safety
/// `entries` must point to `n * n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qa_cartan_new(
    entries: *const i64,
    n: usize,
    r: *const i64,
    out: *mut *mut QaCartan,
) -> QaStatus {
    guard(|| {
        if entries.is_null() || out.is_null() {
            return fail(QaStatus::NullPointer, "entries and out must be non-null");
        }
        if n == 0 || n > 64 {
            return fail(QaStatus::InvalidArgument, format!("rank {n} outside 1..=64"));
        }
        let flat = std::slice::from_raw_parts(entries, n * n);
        let rows: Vec<Vec<i64>> = flat.chunks(n).map(<[i64]>::to_vec).collect();
        let sym = (!r.is_null()).then(|| std::slice::from_raw_parts(r, n).to_vec());
        match build_cartan(&rows, sym.as_deref()) {
            Ok(cd) => {
                *out = Box::into_raw(Box::new(QaCartan { inner: cd }));
                QaStatus::Ok
            }
            Err(e) => fail(QaStatus::InvalidCartan, e.to_string()),
        }
    })
}

/// Releases a Cartan handle. Null is accepted.
///
/// # Safety
/// `cd` must come from [`qa_cartan_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qa_cartan_free(cd: *mut QaCartan) {
    if !cd.is_null() {
        drop(Box::from_raw(cd));
    }
}

/// Writes the rank.
///
/// # Safety
/// `cd` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qa_cartan_rank(cd: *const QaCartan, out: *mut usize) -> QaStatus {
    if cd.is_null() || out.is_null() {
        return fail(QaStatus::NullPointer, "cd and out must be non-null");
    }
    *out = (*cd).inner.n;
    QaStatus::Ok
}

/// Writes the symmetrizer `r` into `out`, which must hold `rank` entries.
///
/// # Safety
/// `cd` must be a live handle and `out` must have room for `rank` values.
#[no_mangle]
pub unsafe extern "C" fn qa_cartan_symmetrizer(cd: *const QaCartan, out: *mut i64) -> QaStatus {
    if cd.is_null() || out.is_null() {
        return fail(QaStatus::NullPointer, "cd and out must be non-null");
    }
    let r = &(*cd).inner.r;
    std::ptr::copy_nonoverlapping(r.as_ptr(), out, r.len());
    QaStatus::Ok
}

/// Renders `det C(z)` as a Laurent polynomial in `z`.
///
/// # Safety
/// `cd` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qa_cartan_det(cd: *const QaCartan, out: *mut *mut c_char) -> QaStatus {
    guard(|| {
        if cd.is_null() || out.is_null() {
            return fail(QaStatus::NullPointer, "cd and out must be non-null");
        }
        write_string(out, quantized_cartan(&(*cd).inner).det.to_string())
    })
}

/// Writes 1 if the q-character expansion is defined for this datum, else 0.
///
/// # Safety
/// `cd` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qa_cartan_invertible(cd: *const QaCartan, out: *mut i32) -> QaStatus {
    guard(|| {
        if cd.is_null() || out.is_null() {
            return fail(QaStatus::NullPointer, "cd and out must be non-null");
        }
        *out = i32::from(check_invertibility_condition(&(*cd).inner));
        QaStatus::Ok
    })
}

/// Which algorithm produces a character.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QaMethod {
    FrenkelMukhin = 0,
    KernelSolve = 1,
}

/// Computes the q-character of the fundamental module `Y_{node, q^qexp}`
/// truncated at `depth`. Nodes are counted from 1.
///
/// # Safety
/// `cd` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qa_qchar_fundamental(
    cd: *const QaCartan,
    node: usize,
    qexp: i64,
    depth: i64,
    method: QaMethod,
    out: *mut *mut QaCharacter,
) -> QaStatus {
    guard(|| {
        if cd.is_null() || out.is_null() {
            return fail(QaStatus::NullPointer, "cd and out must be non-null");
        }
        let cd = &(*cd).inner;
        if node == 0 || node > cd.n {
            return fail(QaStatus::InvalidArgument, format!("node {node} outside 1..={}", cd.n));
        }
        if depth < 0 {
            return fail(QaStatus::InvalidArgument, format!("negative depth {depth}"));
        }
        let seed = Monomial::y(cd.n, node - 1, SpectralParam::q(qexp), 1);
        let chi = match method {
            QaMethod::FrenkelMukhin => fm_expand(&seed, depth, cd).map_err(qchar_status),
            QaMethod::KernelSolve => kernel_solve(&seed, depth, cd).map_err(screening_status),
        };
        match chi {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(QaCharacter { inner }));
                QaStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Releases a character handle. Null is accepted.
///
/// # Safety
/// `chi` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qa_character_free(chi: *mut QaCharacter) {
    if !chi.is_null() {
        drop(Box::from_raw(chi));
    }
}

/// Writes the number of monomials.
///
/// # Safety
/// `chi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qa_character_len(chi: *const QaCharacter, out: *mut usize) -> QaStatus {
    if chi.is_null() || out.is_null() {
        return fail(QaStatus::NullPointer, "chi and out must be non-null");
    }
    *out = (*chi).inner.len();
    QaStatus::Ok
}

/// Writes the classical dimension when it fits in 64 bits.
///
/// # Safety
/// `chi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qa_character_dimension(chi: *const QaCharacter, out: *mut u64) -> QaStatus {
    guard(|| {
        if chi.is_null() || out.is_null() {
            return fail(QaStatus::NullPointer, "chi and out must be non-null");
        }
        match u64::try_from(classical_dimension(&(*chi).inner)) {
            Ok(d) => {
                *out = d;
                QaStatus::Ok
            }
            Err(_) => fail(QaStatus::InvalidArgument, "dimension does not fit in 64 bits"),
        }
    })
}

/// Writes 1 if two characters have the same terms, else 0.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qa_character_equal(
    a: *const QaCharacter,
    b: *const QaCharacter,
    out: *mut i32,
) -> QaStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return fail(QaStatus::NullPointer, "a, b and out must be non-null");
    }
    *out = i32::from((*a).inner.normalized() == (*b).inner.normalized());
    QaStatus::Ok
}

/// Renders one `coefficient<TAB>monomial` line per term.
///
/// # Safety
/// `chi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qa_character_render(
    chi: *const QaCharacter,
    show_k: i32,
    out: *mut *mut c_char,
) -> QaStatus {
    guard(|| {
        if chi.is_null() || out.is_null() {
            return fail(QaStatus::NullPointer, "chi and out must be non-null");
        }
        let mut s = (*chi).inner.render_lines(show_k != 0).join("\n");
        s.push('\n');
        write_string(out, s)
    })
}

/// Releases a string returned by this library. Null is accepted.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread, or an empty string.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn qa_status_str(status: QaStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        QaStatus::Ok => b"ok\0",
        QaStatus::NullPointer => b"null pointer\0",
        QaStatus::InvalidArgument => b"invalid argument\0",
        QaStatus::InvalidCartan => b"invalid Cartan datum\0",
        QaStatus::NotApplicable => b"not applicable\0",
        QaStatus::NotDominant => b"seed not dominant\0",
        QaStatus::Underdetermined => b"underdetermined\0",
        QaStatus::Inconsistent => b"inconsistent\0",
        QaStatus::Panic => b"panic\0",
    };
    s.as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    #[test]
    fn status_strings_are_terminated() {
        for s in [QaStatus::Ok, QaStatus::Panic, QaStatus::InvalidCartan] {
            let c = unsafe { CStr::from_ptr(qa_status_str(s)) };
            assert!(!c.to_str().unwrap().is_empty());
        }
    }

    #[test]
    fn failures_record_a_message() {
        let mut out = ptr::null_mut();
        let st = unsafe { qa_cartan_new(ptr::null(), 1, ptr::null(), &mut out) };
        assert_eq!(st, QaStatus::NullPointer);
        let msg = unsafe { CStr::from_ptr(qa_last_error()) };
        assert!(msg.to_str().unwrap().contains("non-null"));
    }
}
