//! C ABI over `imgcipher`.
//!
//! Images and keystreams are opaque handles created and freed by this
//! library. Every fallible call returns an [`ImgcipherStatus`]; on failure
//! [`imgcipher_last_error_message`] holds a description for the calling
//! thread. Panics never cross the boundary.
//!
//! The generated header lives at `include/imgcipher.h`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use imgcipher::analysis::{analyze, position_entropy};
use imgcipher::permutations::as_permutation;
use imgcipher::{
    BlockGrid, Channels, CipherConfig, CipherKeys, Direction, Error, Image, Keystream, Level, Stage,
};

/// Result of every fallible call. Values 3, 4 and 5 match the CLI exit
/// statuses for the same conditions.
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImgcipherStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    KeyRange = 3,
    Codec = 4,
    Dimensions = 5,
    Io = 6,
    Failure = 7,
    Panic = 8,
}

/// Values accepted in [`ImgcipherConfig::level`].
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImgcipherLevel {
    Full = 0,
    /// Row shift and additive keystream only.
    Basic = 1,
}

/// Values accepted by [`imgcipher_position_entropy`].
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImgcipherStage {
    Identity = 0,
    RowShift = 1,
    ColShift = 2,
    Arnold = 3,
    Distribute = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct ImgcipherConfig {
    pub block: u32,
    pub arnold_iterations: u32,
    /// An [`ImgcipherLevel`] value.
    pub level: u32,
}

/// Per-channel statistics. `has_corr_*` is false when the coefficient is
/// undefined (constant image); the matching `corr_*` is then 0.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct ImgcipherReport {
    pub entropy_bits: f64,
    pub corr_horizontal: f64,
    pub corr_vertical: f64,
    pub has_corr_horizontal: bool,
    pub has_corr_vertical: bool,
    pub chi_square: f64,
    pub histogram: [u64; 256],
}

pub struct ImgcipherImage(Image);

pub struct ImgcipherKeystream(Keystream);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn status_of(error: &Error) -> ImgcipherStatus {
    match error {
        Error::KeyRange { .. } => ImgcipherStatus::KeyRange,
        Error::Codec(_) => ImgcipherStatus::Codec,
        Error::Io { .. } => ImgcipherStatus::Io,
        Error::NotDivisible { .. } => ImgcipherStatus::Dimensions,
        Error::KeyParse { .. }
        | Error::InvalidConfig(_)
        | Error::InvalidImage(_)
        | Error::NotSingleChannel(_)
        | Error::SizeMismatch { .. } => ImgcipherStatus::InvalidArgument,
        _ => ImgcipherStatus::Failure,
    }
}

struct Failure(ImgcipherStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ImgcipherStatus::NullPointer, format!("{what} is null"))
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure(ImgcipherStatus::InvalidArgument, message.into())
}

/// Runs `body`, translating errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ImgcipherStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            ImgcipherStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            ImgcipherStatus::Panic
        }
    }
}

unsafe fn image_ref<'a>(image: *const ImgcipherImage) -> Result<&'a Image, Failure> {
    image.as_ref().map(|h| &h.0).ok_or_else(|| null("image"))
}

unsafe fn path_arg<'a>(path: *const c_char) -> Result<&'a str, Failure> {
    if path.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(path).to_str().map_err(|_| invalid("path is not UTF-8"))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn config_from(config: Option<&ImgcipherConfig>) -> Result<CipherConfig, Failure> {
    let Some(c) = config else {
        return Ok(CipherConfig::default());
    };
    let level = match c.level {
        0 => Level::Full,
        1 => Level::Basic,
        other => return Err(invalid(format!("unknown level {other}"))),
    };
    Ok(CipherConfig {
        block: c.block as usize,
        arnold_iterations: c.arnold_iterations,
        level,
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn imgcipher_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn imgcipher_status_message(status: ImgcipherStatus) -> *const c_char {
    let text: &'static CStr = match status {
        ImgcipherStatus::Ok => c"ok",
        ImgcipherStatus::NullPointer => c"null pointer argument",
        ImgcipherStatus::InvalidArgument => c"invalid argument",
        ImgcipherStatus::KeyRange => c"key outside its valid range",
        ImgcipherStatus::Codec => c"malformed image file",
        ImgcipherStatus::Dimensions => c"image dimensions not divisible by block size",
        ImgcipherStatus::Io => c"I/O error",
        ImgcipherStatus::Failure => c"operation failed",
        ImgcipherStatus::Panic => c"internal panic",
    };
    text.as_ptr()
}

/// Message for the most recent failed call on this thread, or NULL after a
/// successful call. Valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn imgcipher_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Default configuration: 16x16 blocks, one Arnold iteration, full level.
#[no_mangle]
pub extern "C" fn imgcipher_config_default() -> ImgcipherConfig {
    let d = CipherConfig::default();
    ImgcipherConfig {
        block: d.block as u32,
        arnold_iterations: d.arnold_iterations,
        level: ImgcipherLevel::Full as u32,
    }
}

/// Copies `len` row-major interleaved samples into a new image.
/// `channels` must be 1 or 3.
///
/// # Safety
/// `samples` must point to `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_image_new(
    width: usize,
    height: usize,
    channels: usize,
    samples: *const u8,
    len: usize,
    out: *mut *mut ImgcipherImage,
) -> ImgcipherStatus {
    guard(|| {
        if samples.is_null() {
            return Err(null("samples"));
        }
        let data = std::slice::from_raw_parts(samples, len).to_vec();
        let image = Image::new(width, height, Channels::from_count(channels)?, data)?;
        write_out(out, ImgcipherImage(image))
    })
}

/// Loads a binary PGM (P5) or PPM (P6) file with max value 255.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_image_load(
    path: *const c_char,
    out: *mut *mut ImgcipherImage,
) -> ImgcipherStatus {
    guard(|| {
        let image = imgcipher::load_image(path_arg(path)?)?;
        write_out(out, ImgcipherImage(image))
    })
}

/// # Safety
/// `image` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_image_save(
    image: *const ImgcipherImage,
    path: *const c_char,
) -> ImgcipherStatus {
    guard(|| {
        imgcipher::save_image(image_ref(image)?, path_arg(path)?)?;
        Ok(())
    })
}

/// # Safety
/// `image` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_image_width(image: *const ImgcipherImage) -> usize {
    image.as_ref().map_or(0, |h| h.0.width())
}

/// # Safety
/// `image` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_image_height(image: *const ImgcipherImage) -> usize {
    image.as_ref().map_or(0, |h| h.0.height())
}

/// # Safety
/// `image` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_image_channels(image: *const ImgcipherImage) -> usize {
    image.as_ref().map_or(0, |h| h.0.channels().count())
}

/// Borrowed pointer to the samples, valid while the handle lives. Writes
/// the sample count to `len` when it is non-NULL.
///
/// # Safety
/// `image` must be NULL or a live handle; `len` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_image_samples(
    image: *const ImgcipherImage,
    len: *mut usize,
) -> *const u8 {
    let (data, n) = image
        .as_ref()
        .map_or((ptr::null(), 0), |h| (h.0.samples().as_ptr(), h.0.samples().len()));
    if !len.is_null() {
        *len = n;
    }
    data
}

/// # Safety
/// `image` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_image_free(image: *mut ImgcipherImage) {
    if !image.is_null() {
        drop(Box::from_raw(image));
    }
}

unsafe fn transform(
    image: *const ImgcipherImage,
    a: f64,
    k: f64,
    config: *const ImgcipherConfig,
    out: *mut *mut ImgcipherImage,
    f: fn(&Image, &CipherKeys, &CipherConfig) -> imgcipher::Result<Image>,
) -> ImgcipherStatus {
    guard(|| {
        let image = image_ref(image)?;
        let keys = CipherKeys::new(a, k)?;
        let config = config_from(config.as_ref())?;
        write_out(out, ImgcipherImage(f(image, &keys, &config)?))
    })
}

/// Encrypts into a new image. A NULL `config` means the defaults.
///
/// # Safety
/// `image` must be a live handle, `config` NULL or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_encrypt(
    image: *const ImgcipherImage,
    key_a: f64,
    key_k: f64,
    config: *const ImgcipherConfig,
    out: *mut *mut ImgcipherImage,
) -> ImgcipherStatus {
    transform(image, key_a, key_k, config, out, imgcipher::encrypt)
}

/// Decrypts into a new image. A NULL `config` means the defaults.
///
/// # Safety
/// Same as [`imgcipher_encrypt`].
#[no_mangle]
pub unsafe extern "C" fn imgcipher_decrypt(
    image: *const ImgcipherImage,
    key_a: f64,
    key_k: f64,
    config: *const ImgcipherConfig,
    out: *mut *mut ImgcipherImage,
) -> ImgcipherStatus {
    transform(image, key_a, key_k, config, out, imgcipher::decrypt)
}

fn channel_plane(image: &Image, channel: u32) -> Result<Image, Failure> {
    image
        .split_channels()
        .into_iter()
        .nth(channel as usize)
        .ok_or_else(|| invalid(format!("channel {channel} out of range")))
}

/// Statistics of one channel.
///
/// # Safety
/// `image` must be a live handle; `report` writable.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_analyze(
    image: *const ImgcipherImage,
    channel: u32,
    report: *mut ImgcipherReport,
) -> ImgcipherStatus {
    guard(|| {
        let plane = channel_plane(image_ref(image)?, channel)?;
        let report = report.as_mut().ok_or_else(|| null("report"))?;
        let r = analyze(&plane, None)?;
        let mut histogram = [0u64; 256];
        histogram.copy_from_slice(&r.histogram);
        *report = ImgcipherReport {
            entropy_bits: r.entropy_bits,
            corr_horizontal: r.corr_horizontal.unwrap_or(0.0),
            corr_vertical: r.corr_vertical.unwrap_or(0.0),
            has_corr_horizontal: r.corr_horizontal.is_some(),
            has_corr_vertical: r.corr_vertical.is_some(),
            chi_square: r.chi_square,
            histogram,
        };
        Ok(())
    })
}

/// Block position entropy, in bits, of the forward shuffle `stage` (an
/// [`ImgcipherStage`] value) applied to one channel on a `block` grid.
/// `iterations` is used only by the Arnold stage.
///
/// # Safety
/// `image` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_position_entropy(
    image: *const ImgcipherImage,
    channel: u32,
    stage: u32,
    block: u32,
    iterations: u32,
    out: *mut f64,
) -> ImgcipherStatus {
    guard(|| {
        let plane = channel_plane(image_ref(image)?, channel)?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        let (block, direction) = (block as usize, Direction::Forward);
        let stage = match stage {
            0 => Stage::Identity,
            1 => Stage::RowShift(direction),
            2 => Stage::ColShift(direction),
            3 => Stage::Arnold { block, iterations, direction },
            4 => Stage::Distribute { block, direction },
            other => return Err(invalid(format!("unknown stage {other}"))),
        };
        let grid = BlockGrid::for_image(&plane, block)?;
        *out = position_entropy(&as_permutation(&stage, &plane)?, &grid)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_keystream_new(
    key_a: f64,
    key_k: f64,
    out: *mut *mut ImgcipherKeystream,
) -> ImgcipherStatus {
    guard(|| {
        let keys = CipherKeys::new(key_a, key_k)?;
        write_out(out, ImgcipherKeystream(Keystream::new(keys)))
    })
}

/// Writes the next `len` keystream bytes to `buf`.
///
/// # Safety
/// `stream` must be a live handle; `buf` must hold `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_keystream_fill(
    stream: *mut ImgcipherKeystream,
    buf: *mut u8,
    len: usize,
) -> ImgcipherStatus {
    guard(|| {
        let stream = stream.as_mut().ok_or_else(|| null("stream"))?;
        if buf.is_null() {
            return Err(null("buffer"));
        }
        stream.0.fill(std::slice::from_raw_parts_mut(buf, len));
        Ok(())
    })
}

/// Advances the stream as if `n` bytes were drawn.
///
/// # Safety
/// `stream` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_keystream_skip(
    stream: *mut ImgcipherKeystream,
    n: u64,
) -> ImgcipherStatus {
    guard(|| {
        stream.as_mut().ok_or_else(|| null("stream"))?.0.skip(n);
        Ok(())
    })
}

/// # Safety
/// `stream` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn imgcipher_keystream_free(stream: *mut ImgcipherKeystream) {
    if !stream.is_null() {
        drop(Box::from_raw(stream));
    }
}
