use std::ffi::{c_char, CStr};
use std::ptr;

use qaffine_ffi::*;

unsafe fn take_string(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    qa_string_free(s);
    out
}

fn cartan(entries: &[i64], n: usize, r: Option<&[i64]>) -> Result<*mut QaCartan, QaStatus> {
    let mut h = ptr::null_mut();
    let st = unsafe { qa_cartan_new(entries.as_ptr(), n, r.map_or(ptr::null(), <[i64]>::as_ptr), &mut h) };
    if st == QaStatus::Ok {
        Ok(h)
    } else {
        Err(st)
    }
}

#[test]
fn determinant_and_symmetrizer() {
    let h = cartan(&[2, -1, -2, 2], 2, None).unwrap();
    unsafe {
        let mut n = 0;
        assert_eq!(qa_cartan_rank(h, &mut n), QaStatus::Ok);
        assert_eq!(n, 2);
        let mut r = [0i64; 2];
        assert_eq!(qa_cartan_symmetrizer(h, r.as_mut_ptr()), QaStatus::Ok);
        assert_eq!(r, [2, 1]);
        let mut s = ptr::null_mut();
        assert_eq!(qa_cartan_det(h, &mut s), QaStatus::Ok);
        assert_eq!(take_string(s), "z^3 + z^-3");
        qa_cartan_free(h);
    }
    let h = cartan(&[2, -2, -2, 2], 2, Some(&[2, 2])).unwrap();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qa_cartan_det(h, &mut s), QaStatus::Ok);
        assert_eq!(take_string(s), "z^4 - z^2 - z^-2 + z^-4");
        qa_cartan_free(h);
    }
}

#[test]
fn characters_through_both_methods() {
    let h = cartan(&[2, -1, -1, 2], 2, None).unwrap();
    unsafe {
        let (mut fm, mut ks) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(qa_qchar_fundamental(h, 1, 0, 4, QaMethod::FrenkelMukhin, &mut fm), QaStatus::Ok);
        assert_eq!(qa_qchar_fundamental(h, 1, 0, 4, QaMethod::KernelSolve, &mut ks), QaStatus::Ok);
        let mut eq = 0;
        assert_eq!(qa_character_equal(fm, ks, &mut eq), QaStatus::Ok);
        assert_eq!(eq, 1);
        let (mut len, mut dim) = (0, 0);
        assert_eq!(qa_character_len(fm, &mut len), QaStatus::Ok);
        assert_eq!(qa_character_dimension(fm, &mut dim), QaStatus::Ok);
        assert_eq!((len, dim), (3, 3));
        let mut s = ptr::null_mut();
        assert_eq!(qa_character_render(fm, 0, &mut s), QaStatus::Ok);
        assert_eq!(take_string(s), "1\tY{1,q^0}\n1\tY{1,q^2}^-1 Y{2,q^1}\n1\tY{2,q^3}^-1\n");
        qa_character_free(fm);
        qa_character_free(ks);
        qa_cartan_free(h);
    }
}

#[test]
fn error_codes() {
    assert_eq!(cartan(&[2, 1, -1, 2], 2, None).unwrap_err(), QaStatus::InvalidCartan);
    let msg = unsafe { CStr::from_ptr(qa_last_error()) }.to_str().unwrap().to_owned();
    assert!(!msg.is_empty());
    assert_eq!(cartan(&[2], 0, None).unwrap_err(), QaStatus::InvalidArgument);

    let h = cartan(&[2, -2, -2, 2], 2, Some(&[1, 1])).unwrap();
    unsafe {
        let mut inv = 1;
        assert_eq!(qa_cartan_invertible(h, &mut inv), QaStatus::Ok);
        assert_eq!(inv, 0);
        let mut out = ptr::null_mut();
        let st = qa_qchar_fundamental(h, 1, 0, 3, QaMethod::FrenkelMukhin, &mut out);
        assert_eq!(st, QaStatus::NotApplicable);
        assert!(out.is_null());
        assert_eq!(qa_qchar_fundamental(h, 3, 0, 3, QaMethod::FrenkelMukhin, &mut out), QaStatus::InvalidArgument);
        assert_eq!(qa_qchar_fundamental(ptr::null(), 1, 0, 3, QaMethod::FrenkelMukhin, &mut out), QaStatus::NullPointer);
        qa_cartan_free(h);
        qa_cartan_free(ptr::null_mut());
        qa_character_free(ptr::null_mut());
        qa_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/qaffine.h");
    let src = include_str!("../src/lib.rs");
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.trim().strip_prefix("pub unsafe extern \"C\" fn ").or_else(|| l.trim().strip_prefix("pub extern \"C\" fn ")))
        .map(|l| l.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 14);
    for f in exports {
        assert!(header.contains(&format!("{f}(")), "{f} missing from the header");
    }
}
