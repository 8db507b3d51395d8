//! Multilevel image encryption.
//!
//! Grayscale and RGB rasters are encrypted channel by channel with a
//! six-stage pipeline that alternates keyless position shuffles with two
//! passes of a logistic-map keystream:
//!
//! ```text
//! row shift -> + keystream -> Arnold Cat per block -> cross-block distribution
//!           -> ^ keystream -> column shift
//! ```
//!
//! [`analysis`] provides the statistics used to judge a cipher image.
//!
//! ```
//! use imgcipher::{decrypt, encrypt, CipherConfig, CipherKeys, Image};
//!
//! let plain = Image::gray(32, 32, (0..1024).map(|i| (i % 256) as u8).collect())?;
//! let keys = CipherKeys::parse("0.3905", "3.9886")?;
//! let config = CipherConfig::default();
//! let cipher = encrypt(&plain, &keys, &config)?;
//! assert_eq!(decrypt(&cipher, &keys, &config)?, plain);
//! # Ok::<(), imgcipher::Error>(())
//! ```

pub mod analysis;
pub mod cipher;
pub mod cli;
mod error;
pub mod image;
pub mod keystream;
pub mod permutations;
pub mod pnm;

pub use analysis::{analyze, AnalysisReport};
pub use cipher::{decrypt, encrypt, CipherConfig, Level};
pub use error::{CodecError, Error, Result};
pub use image::{Channels, Image, PixelCoord};
pub use keystream::{CipherKeys, Keystream};
pub use permutations::{BlockGrid, Direction, Permutation, Stage};
pub use pnm::{load_image, save_image};
