use std::ffi::CStr;
use std::ptr;

use homperc_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(hp_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn cubical(d: usize, m: usize, seed: u64) -> *mut HpComplex {
    let mut c = ptr::null_mut();
    assert_eq!(
        unsafe { hp_gen_cubical(d, m, seed, &mut c) },
        HpStatus::HpOk
    );
    assert!(!c.is_null());
    c
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(hp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn cubical_counts_and_euler() {
    let c = cubical(2, 6, 7);
    let (mut len, mut v, mut e, mut f) = (0, 0, 0, 0);
    unsafe {
        assert_eq!(hp_complex_len(c, &mut len), HpStatus::HpOk);
        assert_eq!(hp_complex_count_dim(c, 0, &mut v), HpStatus::HpOk);
        assert_eq!(hp_complex_count_dim(c, 1, &mut e), HpStatus::HpOk);
        assert_eq!(hp_complex_count_dim(c, 2, &mut f), HpStatus::HpOk);
    }
    assert_eq!((v, e, f), (36, 72, 36));
    assert_eq!(len, v + e + f);
    let mut chi = 1;
    unsafe {
        assert_eq!(hp_complex_euler_at(c, -1.0, &mut chi), HpStatus::HpOk);
        assert_eq!(chi, 0);
        assert_eq!(hp_complex_euler_at(c, 2.0, &mut chi), HpStatus::HpOk);
        hp_complex_free(c);
    }
    assert_eq!(chi, 0, "full torus");
}

#[test]
fn barcode_buffers() {
    let c = cubical(2, 8, 3);
    let mut b = ptr::null_mut();
    unsafe {
        assert_eq!(hp_persistence(c, 2, &mut b), HpStatus::HpOk);
        hp_complex_free(c);
    }

    let mut len = 0;
    let mut one = [0.0; 1];
    let status = unsafe { hp_essential_births(b, 1, one.as_mut_ptr(), 1, &mut len) };
    assert_eq!(status, HpStatus::HpBufferTooSmall);
    assert_eq!(len, 2);
    assert!(last_error().contains("too small"));

    let mut births = [0.0; 2];
    unsafe {
        assert_eq!(
            hp_essential_births(b, 1, births.as_mut_ptr(), 2, &mut len),
            HpStatus::HpOk
        );
    }
    assert!(births[0] <= births[1] && births[1] <= 1.0);

    // Length query with an empty buffer.
    let status =
        unsafe { hp_barcode_intervals(b, 1, ptr::null_mut(), ptr::null_mut(), 0, &mut len) };
    assert_eq!(status, HpStatus::HpBufferTooSmall);
    let n = len;
    let (mut bs, mut ds) = (vec![0.0; n], vec![0.0; n]);
    unsafe {
        assert_eq!(
            hp_barcode_intervals(b, 1, bs.as_mut_ptr(), ds.as_mut_ptr(), n, &mut len),
            HpStatus::HpOk
        );
        hp_barcode_free(b);
    }
    assert_eq!(ds.iter().filter(|x| x.is_infinite()).count(), 2);
    assert!(bs.iter().zip(&ds).all(|(b, d)| b < d));
}

#[test]
fn errors_map_to_statuses() {
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(
            hp_gen_cubical(7, 4, 0, &mut c),
            HpStatus::HpUnsupportedDimension
        );
        assert!(c.is_null());
        assert_eq!(
            hp_gen_perm(2, 3, 0, &mut c),
            HpStatus::HpCliqueCountMismatch
        );
        assert_eq!(
            hp_gen_boolean(50.0, 2, 0, 0.3, &mut c),
            HpStatus::HpRadiusTooLarge
        );
        assert_eq!(hp_gen_grf(2, 8, 5.0, 0, &mut c), HpStatus::HpSpectrumNotPsd);
    }
    assert!(!last_error().is_empty());

    let mut zeros = [0.0; 4];
    let mut len = 0;
    let status = unsafe { hp_ec_zeros(HpModel::HpBoolean, 4, zeros.as_mut_ptr(), 4, &mut len) };
    assert_eq!(status, HpStatus::HpUnsupportedDimension);
}

#[test]
fn null_pointers() {
    unsafe {
        assert_eq!(
            hp_gen_cubical(2, 4, 0, ptr::null_mut()),
            HpStatus::HpNullPointer
        );
        let mut len = 0;
        assert_eq!(
            hp_complex_len(ptr::null(), &mut len),
            HpStatus::HpNullPointer
        );
        let c = cubical(2, 4, 0);
        assert_eq!(hp_complex_len(c, ptr::null_mut()), HpStatus::HpNullPointer);
        hp_complex_free(c);
        hp_complex_free(ptr::null_mut());
        hp_barcode_free(ptr::null_mut());
    }
    assert!(last_error().contains("null"));
}

#[test]
fn closed_form_values() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(
            hp_expected_ec(HpModel::HpGrf, 3, 1.0, 1.0, &mut v),
            HpStatus::HpOk
        );
    }
    assert!(v.abs() < 1e-12);

    let mut zeros = [0.0; 2];
    let mut len = 0;
    unsafe {
        assert_eq!(
            hp_ec_zeros(HpModel::HpPerm, 3, zeros.as_mut_ptr(), 2, &mut len),
            HpStatus::HpOk
        );
    }
    assert_eq!(len, 2);
    assert!((zeros[0] + zeros[1] - 1.0).abs() < 1e-9);
}

#[test]
fn boolean_and_grf_handles() {
    let mut c = ptr::null_mut();
    let mut len = 0;
    unsafe {
        assert_eq!(hp_gen_boolean(40.0, 2, 1, 0.1, &mut c), HpStatus::HpOk);
        assert_eq!(hp_complex_len(c, &mut len), HpStatus::HpOk);
        hp_complex_free(c);
    }
    assert!(len > 0);
    unsafe {
        assert_eq!(hp_gen_grf(2, 16, 1e-3, 1, &mut c), HpStatus::HpOk);
        assert_eq!(hp_complex_len(c, &mut len), HpStatus::HpOk);
        hp_complex_free(c);
    }
    assert_eq!(len, 4 * 256);
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/homperc.h");
    for f in [
        "hp_version",
        "hp_last_error_message",
        "hp_gen_cubical",
        "hp_gen_perm",
        "hp_gen_boolean",
        "hp_gen_grf",
        "hp_complex_free",
        "hp_complex_len",
        "hp_complex_count_dim",
        "hp_complex_euler_at",
        "hp_persistence",
        "hp_barcode_free",
        "hp_barcode_intervals",
        "hp_essential_births",
        "hp_expected_ec",
        "hp_ec_zeros",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("HP_BUFFER_TOO_SMALL = 13"));
}
