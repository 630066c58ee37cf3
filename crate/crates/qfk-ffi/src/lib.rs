//! C ABI for `qfk`.
//!
//! Every fallible call returns a [`QfkStatus`]; on failure the message is kept per
//! thread and read back with [`qfk_last_error_message`]. Banks and pyramids are
//! opaque handles released with their `_free` functions.

use qfk::analysis::{report, sum_rules, tight_residual, vanishing_moments};
use qfk::construct::{daubechies_tensor_bank, double_canonical_from_uv, six_multiple_bank, thm22_bank, FilterBank};
use qfk::filters1d::{complex_symmetric_pair, interpolatory};
use qfk::io::{load_bank, save_bank};
use qfk::smoothness::transition_sm;
use qfk::transform::{analyze, synthesize, CoeffPyramid, ImageGrid};
use qfk::{Error, C64};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QfkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    Parse = 3,
    Construction = 4,
    Dimension = 5,
    Io = 6,
    BufferTooSmall = 7,
    OutOfRange = 8,
    Panic = 9,
}

/// Opaque filter bank.
pub struct QfkBank {
    inner: FilterBank<C64>,
}

/// Opaque coefficient pyramid.
pub struct QfkPyramid {
    inner: CoeffPyramid,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn status_of(e: &Error) -> QfkStatus {
    match e {
        Error::InvalidParameter(_) => QfkStatus::InvalidParameter,
        Error::Parse(_) => QfkStatus::Parse,
        Error::Io(_) => QfkStatus::Io,
        Error::BadDimensions(_) | Error::MetadataMismatch(_) | Error::DimensionMismatch(_) => QfkStatus::Dimension,
        _ => QfkStatus::Construction,
    }
}

fn fail(status: QfkStatus, msg: impl Into<String>) -> QfkStatus {
    set_error(msg);
    status
}

fn guard<F: FnOnce() -> Result<(), QfkStatus>>(f: F) -> QfkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QfkStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(QfkStatus::Panic, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, QfkStatus>;
}

impl<T> OrStatus<T> for qfk::Result<T> {
    fn or_status(self) -> Result<T, QfkStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn bank_ref<'a>(b: *const QfkBank) -> Result<&'a FilterBank<C64>, QfkStatus> {
    b.as_ref().map(|b| &b.inner).ok_or_else(|| fail(QfkStatus::NullPointer, "null bank handle"))
}

unsafe fn pyr_ref<'a>(p: *const QfkPyramid) -> Result<&'a CoeffPyramid, QfkStatus> {
    p.as_ref().map(|p| &p.inner).ok_or_else(|| fail(QfkStatus::NullPointer, "null pyramid handle"))
}

unsafe fn out_ptr<'a, T>(p: *mut T) -> Result<&'a mut T, QfkStatus> {
    p.as_mut().ok_or_else(|| fail(QfkStatus::NullPointer, "null output pointer"))
}

unsafe fn path_arg(p: *const c_char) -> Result<PathBuf, QfkStatus> {
    if p.is_null() {
        return Err(fail(QfkStatus::NullPointer, "null path"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(PathBuf::from)
        .map_err(|_| fail(QfkStatus::InvalidParameter, "path is not UTF-8"))
}

unsafe fn emit_bank(out: *mut *mut QfkBank, bank: qfk::Result<FilterBank<C64>>) -> Result<(), QfkStatus> {
    let slot = out_ptr(out)?;
    *slot = std::ptr::null_mut();
    let bank = bank.or_status()?;
    *slot = Box::into_raw(Box::new(QfkBank { inner: bank }));
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn qfk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qfk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `out` must be a valid pointer to a `QfkBank *`.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_thm22(n: u32, out: *mut *mut QfkBank) -> QfkStatus {
    guard(|| emit_bank(out, thm22_bank(n as usize)))
}

/// # Safety
/// `out` must be a valid pointer to a `QfkBank *`.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_complex_dc(n: u32, out: *mut *mut QfkBank) -> QfkStatus {
    guard(|| {
        let bank = complex_symmetric_pair(n as usize).and_then(|(u, v)| double_canonical_from_uv(&u, &v));
        emit_bank(out, bank)
    })
}

/// # Safety
/// `out` must be a valid pointer to a `QfkBank *`.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_tensor(n: u32, m: u32, out: *mut *mut QfkBank) -> QfkStatus {
    guard(|| emit_bank(out, daubechies_tensor_bank(n as usize, m as usize)))
}

/// Six-multiple bank from the interpolatory low-pass of order `k`.
///
/// # Safety
/// `out` must be a valid pointer to a `QfkBank *`.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_six_multiple_interp(k: u32, out: *mut *mut QfkBank) -> QfkStatus {
    guard(|| {
        if k == 0 {
            return Err(fail(QfkStatus::InvalidParameter, "k must be positive"));
        }
        emit_bank(out, six_multiple_bank(&interpolatory(k as usize)))
    })
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` a valid pointer to a `QfkBank *`.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_load(path: *const c_char, out: *mut *mut QfkBank) -> QfkStatus {
    guard(|| {
        let p = path_arg(path)?;
        emit_bank(out, load_bank(&p))
    })
}

/// # Safety
/// `bank` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_save(bank: *const QfkBank, path: *const c_char) -> QfkStatus {
    guard(|| {
        let b = bank_ref(bank)?;
        let p = path_arg(path)?;
        let rep = if b.highpass.is_empty() { None } else { report(b).ok() };
        save_bank(&p, b, rep.as_ref()).or_status()
    })
}

/// # Safety
/// `bank` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_free(bank: *mut QfkBank) {
    if !bank.is_null() {
        drop(Box::from_raw(bank));
    }
}

/// Number of filters (low-pass first); 0 for a NULL handle.
///
/// # Safety
/// `bank` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_filter_count(bank: *const QfkBank) -> usize {
    bank.as_ref().map_or(0, |b| b.inner.len())
}

/// Support box of filter `i`: coefficient (min[0] + r, min[1] + c) is entry r·shape[1] + c.
///
/// # Safety
/// `bank` must be a live handle; `min` and `shape` must point to two writable elements each.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_filter_shape(
    bank: *const QfkBank,
    i: usize,
    min: *mut i64,
    shape: *mut usize,
) -> QfkStatus {
    guard(|| {
        let b = bank_ref(bank)?;
        let f = b.filter(i).ok_or_else(|| fail(QfkStatus::OutOfRange, format!("filter {i} out of range")))?;
        if min.is_null() || shape.is_null() {
            return Err(fail(QfkStatus::NullPointer, "null output pointer"));
        }
        let m = f.support_min();
        let s = f.shape();
        std::ptr::copy_nonoverlapping(m.as_ptr(), min, 2);
        std::ptr::copy_nonoverlapping(s.as_ptr(), shape, 2);
        Ok(())
    })
}

/// Copies filter `i` into `re` and `im` (either may be NULL), each of length `len`.
///
/// # Safety
/// Non-NULL `re`/`im` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_filter_coeffs(
    bank: *const QfkBank,
    i: usize,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> QfkStatus {
    guard(|| {
        let b = bank_ref(bank)?;
        let f = b.filter(i).ok_or_else(|| fail(QfkStatus::OutOfRange, format!("filter {i} out of range")))?;
        write_complex(f.data(), re, im, len)
    })
}

unsafe fn write_complex(data: &[C64], re: *mut f64, im: *mut f64, len: usize) -> Result<(), QfkStatus> {
    if len < data.len() {
        return Err(fail(QfkStatus::BufferTooSmall, format!("need {} values, got {len}", data.len())));
    }
    for (k, v) in data.iter().enumerate() {
        if !re.is_null() {
            *re.add(k) = v.re;
        }
        if !im.is_null() {
            *im.add(k) = v.im;
        }
    }
    Ok(())
}

/// # Safety
/// `bank` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_tight_residual(bank: *const QfkBank, out: *mut f64) -> QfkStatus {
    guard(|| {
        let b = bank_ref(bank)?;
        let o = out_ptr(out)?;
        *o = tight_residual(&b.filters(), &b.dilation).or_status()?;
        Ok(())
    })
}

/// Sum-rule order of the low-pass filter.
///
/// # Safety
/// `bank` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_sum_rules(bank: *const QfkBank, out: *mut usize) -> QfkStatus {
    guard(|| {
        let b = bank_ref(bank)?;
        let o = out_ptr(out)?;
        *o = sum_rules(&b.lowpass, &b.dilation).or_status()?;
        Ok(())
    })
}

/// Vanishing-moment order of filter `i`; `SIZE_MAX` for a zero filter.
///
/// # Safety
/// `bank` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_vanishing_moments(bank: *const QfkBank, i: usize, out: *mut usize) -> QfkStatus {
    guard(|| {
        let b = bank_ref(bank)?;
        let f = b.filter(i).ok_or_else(|| fail(QfkStatus::OutOfRange, format!("filter {i} out of range")))?;
        *out_ptr(out)? = vanishing_moments(f);
        Ok(())
    })
}

/// L₂ smoothness exponent of the low-pass filter from the transition operator.
///
/// # Safety
/// `bank` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qfk_bank_smoothness(bank: *const QfkBank, out: *mut f64) -> QfkStatus {
    guard(|| {
        let b = bank_ref(bank)?;
        let o = out_ptr(out)?;
        *o = transition_sm(&b.lowpass, &b.dilation).or_status()?.sm2;
        Ok(())
    })
}

/// Analyzes a real row-major `width`×`height` image.
///
/// # Safety
/// `samples` must point to `width*height` doubles; `out` to a `QfkPyramid *`.
#[no_mangle]
pub unsafe extern "C" fn qfk_analyze(
    bank: *const QfkBank,
    samples: *const f64,
    width: usize,
    height: usize,
    levels: usize,
    out: *mut *mut QfkPyramid,
) -> QfkStatus {
    guard(|| {
        let b = bank_ref(bank)?;
        let slot = out_ptr(out)?;
        *slot = std::ptr::null_mut();
        if samples.is_null() {
            return Err(fail(QfkStatus::NullPointer, "null samples"));
        }
        let n = width.checked_mul(height).ok_or_else(|| fail(QfkStatus::Dimension, "image too large"))?;
        let img = ImageGrid::from_real(width, height, std::slice::from_raw_parts(samples, n)).or_status()?;
        let pyr = analyze(b, &img, levels).or_status()?;
        *slot = Box::into_raw(Box::new(QfkPyramid { inner: pyr }));
        Ok(())
    })
}

/// Reconstructs into `re`/`im` (either may be NULL), each of length `len`.
///
/// # Safety
/// Non-NULL `re`/`im` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qfk_synthesize(
    bank: *const QfkBank,
    pyr: *const QfkPyramid,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> QfkStatus {
    guard(|| {
        let b = bank_ref(bank)?;
        let p = pyr_ref(pyr)?;
        let img = synthesize(b, p).or_status()?;
        write_complex(&img.samples, re, im, len)
    })
}

/// # Safety
/// `pyr` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qfk_pyramid_free(pyr: *mut QfkPyramid) {
    if !pyr.is_null() {
        drop(Box::from_raw(pyr));
    }
}

/// Number of levels; 0 for a NULL handle.
///
/// # Safety
/// `pyr` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qfk_pyramid_levels(pyr: *const QfkPyramid) -> usize {
    pyr.as_ref().map_or(0, |p| p.inner.depth())
}

unsafe fn band<'a>(p: &'a CoeffPyramid, level: usize, band: usize) -> Result<&'a [C64], QfkStatus> {
    let depth = p.depth();
    if level == 0 || level > depth {
        return Err(fail(QfkStatus::OutOfRange, format!("level {level} not in 1..={depth}")));
    }
    if band == 0 {
        if level != depth {
            return Err(fail(QfkStatus::OutOfRange, "the low-pass band exists only at the deepest level"));
        }
        return Ok(&p.lowpass);
    }
    p.levels[level - 1]
        .get(band - 1)
        .map(|b| b.as_slice())
        .ok_or_else(|| fail(QfkStatus::OutOfRange, format!("band {band} out of range")))
}

/// Length of band `band` at `level` (1-based); band 0 is the low-pass at the deepest level.
///
/// # Safety
/// `pyr` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qfk_pyramid_band_len(
    pyr: *const QfkPyramid,
    level: usize,
    band_index: usize,
    out: *mut usize,
) -> QfkStatus {
    guard(|| {
        let p = pyr_ref(pyr)?;
        let o = out_ptr(out)?;
        *o = band(p, level, band_index)?.len();
        Ok(())
    })
}

/// Copies a band, indexed as in [`qfk_pyramid_band_len`].
///
/// # Safety
/// Non-NULL `re`/`im` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qfk_pyramid_band(
    pyr: *const QfkPyramid,
    level: usize,
    band_index: usize,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> QfkStatus {
    guard(|| {
        let p = pyr_ref(pyr)?;
        write_complex(band(p, level, band_index)?, re, im, len)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::Parse("x".into())), QfkStatus::Parse);
        assert_eq!(status_of(&Error::BadDimensions("x".into())), QfkStatus::Dimension);
        assert_eq!(status_of(&Error::SingularSystem), QfkStatus::Construction);
    }

    #[test]
    fn panics_are_contained() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, QfkStatus::Panic);
        assert!(!qfk_last_error_message().is_null());
    }

    #[test]
    fn error_is_cleared_on_success() {
        let _ = guard(|| Err(fail(QfkStatus::Io, "x")));
        assert!(!qfk_last_error_message().is_null());
        let _ = guard(|| Ok(()));
        assert!(qfk_last_error_message().is_null());
    }
}
