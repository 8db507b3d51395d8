//! Binary Netpbm codec: P5 (graymap) and P6 (pixmap), max value 255.
//!
//! Header comments are skipped on read and never written.

use std::fs;
use std::path::Path;

use crate::error::{CodecError, Error, Result};
use crate::image::{Channels, Image};

pub fn load_image(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&bytes)
}

pub fn save_image(image: &Image, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode(image)).map_err(|e| Error::io(path, e))
}

pub fn encode(image: &Image) -> Vec<u8> {
    let magic = match image.channels() {
        Channels::Gray => "P5",
        Channels::Rgb => "P6",
    };
    let header = format!("{magic}\n{} {}\n255\n", image.width(), image.height());
    let mut out = Vec::with_capacity(header.len() + image.samples().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(image.samples());
    out
}

pub fn decode(bytes: &[u8]) -> Result<Image> {
    let channels = match bytes.get(..2) {
        Some(b"P5") => Channels::Gray,
        Some(b"P6") => Channels::Rgb,
        Some(other) => {
            return Err(CodecError::UnsupportedMagic(String::from_utf8_lossy(other).into()).into())
        }
        None => return Err(CodecError::MalformedHeader("file shorter than magic number".into()).into()),
    };

    let mut header = HeaderReader { bytes, pos: 2 };
    if !header.at_separator() {
        return Err(CodecError::MalformedHeader("missing whitespace after magic number".into()).into());
    }
    let width = header.field("width")?;
    let height = header.field("height")?;
    let max = header.field("max value")?;
    if width == 0 || height == 0 {
        return Err(CodecError::MalformedHeader(format!("zero dimension {width}x{height}")).into());
    }
    if max != 255 {
        return Err(CodecError::MaxValue(max).into());
    }
    // Exactly one whitespace byte separates the header from the raster.
    match bytes.get(header.pos) {
        Some(b) if b.is_ascii_whitespace() => header.pos += 1,
        _ => {
            return Err(CodecError::MalformedHeader("missing whitespace after max value".into()).into())
        }
    }

    let expected = (width as usize)
        .checked_mul(height as usize)
        .and_then(|n| n.checked_mul(channels.count()))
        .ok_or_else(|| CodecError::MalformedHeader("dimensions overflow".into()))?;
    let payload = &bytes[header.pos..];
    if payload.len() < expected {
        return Err(CodecError::TruncatedPayload {
            expected,
            found: payload.len(),
        }
        .into());
    }
    Image::new(
        width as usize,
        height as usize,
        channels,
        payload[..expected].to_vec(),
    )
}

struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderReader<'_> {
    fn at_separator(&self) -> bool {
        matches!(self.bytes.get(self.pos), Some(b) if b.is_ascii_whitespace() || *b == b'#')
    }

    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn field(&mut self, name: &str) -> Result<u32> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while matches!(self.bytes.get(self.pos), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(CodecError::MalformedHeader(format!("expected {name}")).into());
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        text.parse()
            .map_err(|_| CodecError::MalformedHeader(format!("{name} {text} out of range")).into())
    }
}
