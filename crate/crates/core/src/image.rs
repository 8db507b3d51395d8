//! Raster type shared by every stage of the pipeline.
//!
//! Samples are stored row-major, interleaved by channel, top-left origin.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channels {
    Gray = 1,
    Rgb = 3,
}

impl Channels {
    pub fn count(self) -> usize {
        self as usize
    }

    pub fn from_count(count: usize) -> Result<Self> {
        match count {
            1 => Ok(Channels::Gray),
            3 => Ok(Channels::Rgb),
            n => Err(Error::InvalidImage(format!(
                "channel count must be 1 or 3, got {n}"
            ))),
        }
    }
}

/// Position of a pixel; `row < height`, `col < width`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PixelCoord {
    pub row: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Image {
    width: usize,
    height: usize,
    channels: Channels,
    samples: Vec<u8>,
}

impl Image {
    pub fn new(width: usize, height: usize, channels: Channels, samples: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        let expected = width
            .checked_mul(height)
            .and_then(|n| n.checked_mul(channels.count()))
            .ok_or_else(|| Error::InvalidImage("dimensions overflow".into()))?;
        if samples.len() != expected {
            return Err(Error::InvalidImage(format!(
                "{width}x{height}x{} needs {expected} samples, got {}",
                channels.count(),
                samples.len()
            )));
        }
        Ok(Image {
            width,
            height,
            channels,
            samples,
        })
    }

    pub fn gray(width: usize, height: usize, samples: Vec<u8>) -> Result<Self> {
        Self::new(width, height, Channels::Gray, samples)
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::gray(width, height, vec![value; width * height])
    }

    /// Same shape and channel layout as `self`, different samples. Only for
    /// stage outputs, which are always the same length as their input.
    pub(crate) fn with_samples(&self, samples: Vec<u8>) -> Self {
        debug_assert_eq!(samples.len(), self.samples.len());
        Image {
            width: self.width,
            height: self.height,
            channels: self.channels,
            samples,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> Channels {
        self.channels
    }

    /// Pixels per channel.
    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<u8> {
        self.samples
    }

    pub fn is_single_channel(&self) -> bool {
        self.channels == Channels::Gray
    }

    pub(crate) fn require_single_channel(&self) -> Result<()> {
        if self.is_single_channel() {
            Ok(())
        } else {
            Err(Error::NotSingleChannel(self.channels.count()))
        }
    }

    /// Sample of a single-channel image.
    pub fn get(&self, at: PixelCoord) -> u8 {
        debug_assert!(self.is_single_channel());
        self.samples[at.row * self.width + at.col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        debug_assert!(self.is_single_channel());
        &self.samples[row * self.width..(row + 1) * self.width]
    }

    /// Splits into one grayscale image per channel.
    pub fn split_channels(&self) -> Vec<Image> {
        let n = self.channels.count();
        (0..n)
            .map(|c| {
                let samples = self.samples.iter().skip(c).step_by(n).copied().collect();
                Image {
                    width: self.width,
                    height: self.height,
                    channels: Channels::Gray,
                    samples,
                }
            })
            .collect()
    }

    /// Inverse of [`Image::split_channels`]. Accepts one or three grayscale
    /// planes of identical size.
    pub fn merge_channels(planes: &[Image]) -> Result<Image> {
        let channels = Channels::from_count(planes.len())?;
        let first = &planes[0];
        for plane in planes {
            plane.require_single_channel()?;
            if plane.width != first.width || plane.height != first.height {
                return Err(Error::InvalidImage(format!(
                    "plane sizes differ: {}x{} vs {}x{}",
                    first.width, first.height, plane.width, plane.height
                )));
            }
        }
        let mut samples = Vec::with_capacity(first.samples.len() * planes.len());
        for i in 0..first.samples.len() {
            samples.extend(planes.iter().map(|p| p.samples[i]));
        }
        Image::new(first.width, first.height, channels, samples)
    }
}
