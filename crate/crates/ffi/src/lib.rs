//! C ABI over `homperc`.
//!
//! Objects cross the boundary as opaque handles (`HpComplex`, `HpBarcode`)
//! that must be released with their `*_free` function. Every fallible call
//! returns an [`HpStatus`]; on failure, [`hp_last_error_message`] describes
//! the error on the calling thread. Array outputs follow one convention: the
//! caller passes a buffer and its capacity, the required length is always
//! written to `*len`, and `HP_BUFFER_TOO_SMALL` is returned if it does not
//! fit.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use homperc::analysis::{ec_zero_set, expected_ec};
use homperc::continuum::{
    cech_filtration_periodic, sample_grf_torus, sample_poisson_torus, sublevel_cubical_filtration,
};
use homperc::curves::{essential_births, euler_curve_from_counts};
use homperc::persistence::compute_persistence;
use homperc::site::{gen_cubical_complex, gen_perm_complex};
use homperc::{Barcode, Error, FilteredComplex, Model};

/// Opaque filtered complex.
pub struct HpComplex(FilteredComplex);

/// Opaque persistence barcode.
pub struct HpBarcode(Barcode);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HpStatus {
    HpOk = 0,
    HpNullPointer = 1,
    HpInvalidArgument = 2,
    HpUnsupportedDimension = 3,
    HpSizeTooSmall = 4,
    HpCliqueCountMismatch = 5,
    HpNonMonotoneFiltration = 6,
    HpDanglingBoundary = 7,
    HpEssentialCountMismatch = 8,
    HpRadiusTooLarge = 9,
    HpSpectrumNotPsd = 10,
    HpZeroCountMismatch = 11,
    HpNoBracketsFound = 12,
    HpBufferTooSmall = 13,
    HpInternal = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HpModel {
    HpCubical = 0,
    HpPerm = 1,
    HpBoolean = 2,
    HpGrf = 3,
}

impl From<HpModel> for Model {
    fn from(m: HpModel) -> Self {
        match m {
            HpModel::HpCubical => Model::Cubical,
            HpModel::HpPerm => Model::Perm,
            HpModel::HpBoolean => Model::Boolean,
            HpModel::HpGrf => Model::Grf,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HpStatus {
    match e {
        Error::NonMonotoneFiltration { .. } => HpStatus::HpNonMonotoneFiltration,
        Error::DanglingBoundary { .. } => HpStatus::HpDanglingBoundary,
        Error::EssentialCountMismatch { .. } => HpStatus::HpEssentialCountMismatch,
        Error::SizeTooSmall { .. } => HpStatus::HpSizeTooSmall,
        Error::UnsupportedDimension(_) => HpStatus::HpUnsupportedDimension,
        Error::CliqueCountMismatch { .. } => HpStatus::HpCliqueCountMismatch,
        Error::RadiusTooLarge(_) => HpStatus::HpRadiusTooLarge,
        Error::SpectrumNotPsd { .. } => HpStatus::HpSpectrumNotPsd,
        Error::NoBracketsFound { .. } => HpStatus::HpNoBracketsFound,
        Error::ZeroCountMismatch { .. } => HpStatus::HpZeroCountMismatch,
        Error::InvalidArgument(_) | Error::Config(_) => HpStatus::HpInvalidArgument,
        _ => HpStatus::HpInternal,
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), HpError>) -> HpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HpStatus::HpOk,
        Ok(Err(HpError::Lib(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(HpError::Status(s, msg))) => {
            set_last_error(msg);
            s
        }
        Err(_) => {
            set_last_error("internal panic");
            HpStatus::HpInternal
        }
    }
}

enum HpError {
    Lib(Error),
    Status(HpStatus, &'static str),
}

impl From<Error> for HpError {
    fn from(e: Error) -> Self {
        HpError::Lib(e)
    }
}

const NULL: HpError = HpError::Status(HpStatus::HpNullPointer, "null pointer argument");

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, HpError> {
    p.as_ref().ok_or(NULL)
}

unsafe fn write<T>(p: *mut T, value: T) -> Result<(), HpError> {
    if p.is_null() {
        return Err(NULL);
    }
    p.write(value);
    Ok(())
}

/// Copies `values` into `buf` if it fits; always reports the length.
unsafe fn fill(values: &[f64], buf: *mut f64, cap: usize, len: *mut usize) -> Result<(), HpError> {
    write(len, values.len())?;
    if values.len() > cap {
        return Err(HpError::Status(
            HpStatus::HpBufferTooSmall,
            "output buffer too small",
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(NULL);
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

unsafe fn put_complex(out: *mut *mut HpComplex, c: FilteredComplex) -> Result<(), HpError> {
    write(out, Box::into_raw(Box::new(HpComplex(c))))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn hp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Random cubical complex on an `m^d` torus.
///
/// # Safety
/// `out` must be a valid pointer to write a handle into.
#[no_mangle]
pub unsafe extern "C" fn hp_gen_cubical(
    d: usize,
    m: usize,
    seed: u64,
    out: *mut *mut HpComplex,
) -> HpStatus {
    guard(|| put_complex(out, gen_cubical_complex(d, m, seed)?))
}

/// Permutahedral nerve complex on `m^d` sites.
///
/// # Safety
/// `out` must be a valid pointer to write a handle into.
#[no_mangle]
pub unsafe extern "C" fn hp_gen_perm(
    d: usize,
    m: usize,
    seed: u64,
    out: *mut *mut HpComplex,
) -> HpStatus {
    guard(|| put_complex(out, gen_perm_complex(d, m, seed)?))
}

/// Periodic Čech filtration (in `r`, up to dimension `d + 1`) of a Poisson
/// process of intensity `n`, truncated at `r_max < 0.25`.
///
/// # Safety
/// `out` must be a valid pointer to write a handle into.
#[no_mangle]
pub unsafe extern "C" fn hp_gen_boolean(
    n: f64,
    d: usize,
    seed: u64,
    r_max: f64,
    out: *mut *mut HpComplex,
) -> HpStatus {
    guard(|| {
        let pts = sample_poisson_torus(n, d, seed)?;
        put_complex(out, cech_filtration_periodic(&pts, d + 1, r_max)?)
    })
}

/// Lower-star cubical filtration of a Gaussian field on a `g^d` grid.
///
/// # Safety
/// `out` must be a valid pointer to write a handle into.
#[no_mangle]
pub unsafe extern "C" fn hp_gen_grf(
    d: usize,
    g: usize,
    sigma2: f64,
    seed: u64,
    out: *mut *mut HpComplex,
) -> HpStatus {
    guard(|| {
        put_complex(
            out,
            sublevel_cubical_filtration(&sample_grf_torus(d, g, sigma2, seed)?)?,
        )
    })
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hp_complex_free(c: *mut HpComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Total number of cells.
///
/// # Safety
/// `c` must be a live handle and `len` writable.
#[no_mangle]
pub unsafe extern "C" fn hp_complex_len(c: *const HpComplex, len: *mut usize) -> HpStatus {
    guard(|| write(len, deref(c)?.0.len()))
}

/// Number of cells of dimension `k`.
///
/// # Safety
/// `c` must be a live handle and `count` writable.
#[no_mangle]
pub unsafe extern "C" fn hp_complex_count_dim(
    c: *const HpComplex,
    k: usize,
    count: *mut usize,
) -> HpStatus {
    guard(|| {
        write(
            count,
            deref(c)?.0.counts_by_dim().get(k).copied().unwrap_or(0),
        )
    })
}

/// Euler characteristic of the sublevel complex at `t`.
///
/// # Safety
/// `c` must be a live handle and `chi` writable.
#[no_mangle]
pub unsafe extern "C" fn hp_complex_euler_at(
    c: *const HpComplex,
    t: f64,
    chi: *mut i64,
) -> HpStatus {
    guard(|| write(chi, euler_curve_from_counts(&deref(c)?.0).eval(t) as i64))
}

/// Persistence over GF(2) in degrees `0..=max_degree`.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hp_persistence(
    c: *const HpComplex,
    max_degree: usize,
    out: *mut *mut HpBarcode,
) -> HpStatus {
    guard(|| {
        let b = compute_persistence(&deref(c)?.0, max_degree)?;
        write(out, Box::into_raw(Box::new(HpBarcode(b))))
    })
}

/// # Safety
/// `b` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hp_barcode_free(b: *mut HpBarcode) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Births and deaths of the degree-`k` intervals (death is `+inf` for
/// essential classes), sorted by birth.
///
/// # Safety
/// `b` must be a live handle; `births`/`deaths` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn hp_barcode_intervals(
    b: *const HpBarcode,
    k: usize,
    births: *mut f64,
    deaths: *mut f64,
    cap: usize,
    len: *mut usize,
) -> HpStatus {
    guard(|| {
        let bars = deref(b)?.0.degree(k);
        let bs: Vec<f64> = bars.iter().map(|i| i.birth).collect();
        let ds: Vec<f64> = bars.iter().map(|i| i.death).collect();
        fill(&bs, births, cap, len)?;
        fill(&ds, deaths, cap, len)
    })
}

/// Sorted births of essential degree-`k` classes; fails with
/// `HP_ESSENTIAL_COUNT_MISMATCH` unless there are `C(d, k)` of them.
///
/// # Safety
/// `b` must be a live handle; `out` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn hp_essential_births(
    b: *const HpBarcode,
    k: usize,
    out: *mut f64,
    cap: usize,
    len: *mut usize,
) -> HpStatus {
    guard(|| fill(&essential_births(&deref(b)?.0, k)?, out, cap, len))
}

/// Expected EC of a model at parameter `t` (`p`, `λ` or `α`) with `n`
/// sites, points or grid vertices.
///
/// # Safety
/// `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_expected_ec(
    model: HpModel,
    d: usize,
    n: f64,
    t: f64,
    value: *mut f64,
) -> HpStatus {
    guard(|| write(value, expected_ec(model.into(), d, n, t)?))
}

/// Interior zeros of the closed-form expected EC curve (`d - 1` of them).
///
/// # Safety
/// `out` must hold `cap` values and `len` be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_ec_zeros(
    model: HpModel,
    d: usize,
    out: *mut f64,
    cap: usize,
    len: *mut usize,
) -> HpStatus {
    guard(|| fill(&ec_zero_set(model.into(), d)?.zeros, out, cap, len))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses() {
        assert_eq!(
            status_of(&Error::UnsupportedDimension(9)),
            HpStatus::HpUnsupportedDimension
        );
        assert_eq!(
            status_of(&Error::Config("x".into())),
            HpStatus::HpInvalidArgument
        );
        assert_eq!(HpStatus::HpInternal as i32, 99);
    }

    #[test]
    fn fill_reports_length() {
        let mut len = 0;
        let mut buf = [0.0; 3];
        unsafe {
            assert!(fill(&[1.0, 2.0], buf.as_mut_ptr(), 3, &mut len).is_ok());
            assert_eq!((len, buf[1]), (2, 2.0));
            assert!(fill(&[1.0; 4], buf.as_mut_ptr(), 3, &mut len).is_err());
            assert_eq!(len, 4);
            assert!(fill(&[], ptr::null_mut(), 0, &mut len).is_ok());
        }
    }

    #[test]
    fn panics_become_internal() {
        assert_eq!(guard(|| panic!("boom")), HpStatus::HpInternal);
    }
}
