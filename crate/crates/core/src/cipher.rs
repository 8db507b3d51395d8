//! The six-stage pipeline and its exact reverse.
//!
//! Per channel, encryption runs:
//!
//! 1. row shift
//! 2. add keystream bytes `1..=W*H` mod 256
//! 3. Arnold Cat map inside each block
//! 4. cross-block distribution
//! 5. XOR with keystream bytes `W*H+1..=2*W*H`
//! 6. column shift
//!
//! [`Level::Basic`] stops after step 2. Every channel restarts the keystream
//! from the seed, and keystream bytes pair with pixels in raster order.

use crate::error::{Error, Result};
use crate::image::Image;
use crate::keystream::{CipherKeys, Keystream};
use crate::permutations::{
    arnold_block, block_distribute, col_shift, row_shift, BlockGrid, Direction,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Level {
    #[default]
    Full,
    /// Row shift and additive keystream only.
    Basic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CipherConfig {
    pub block: usize,
    pub arnold_iterations: u32,
    pub level: Level,
}

impl Default for CipherConfig {
    fn default() -> Self {
        CipherConfig {
            block: 16,
            arnold_iterations: 1,
            level: Level::Full,
        }
    }
}

impl CipherConfig {
    pub fn basic() -> Self {
        CipherConfig {
            level: Level::Basic,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.block < 2 {
            return Err(Error::InvalidConfig(format!(
                "block size must be at least 2, got {}",
                self.block
            )));
        }
        if self.arnold_iterations < 1 {
            return Err(Error::InvalidConfig("arnold iterations must be at least 1".into()));
        }
        Ok(())
    }

    /// Block grid for a channel, or `None` at the basic level.
    fn grid(&self, image: &Image) -> Result<Option<BlockGrid>> {
        match self.level {
            Level::Full => BlockGrid::for_image(image, self.block).map(Some),
            Level::Basic => Ok(None),
        }
    }
}

pub fn encrypt(image: &Image, keys: &CipherKeys, config: &CipherConfig) -> Result<Image> {
    per_channel(image, config, |plane, grid| encrypt_plane(plane, keys, config, grid))
}

pub fn decrypt(image: &Image, keys: &CipherKeys, config: &CipherConfig) -> Result<Image> {
    per_channel(image, config, |plane, grid| decrypt_plane(plane, keys, config, grid))
}

fn per_channel(
    image: &Image,
    config: &CipherConfig,
    mut f: impl FnMut(&Image, Option<&BlockGrid>) -> Result<Image>,
) -> Result<Image> {
    config.validate()?;
    let grid = config.grid(image)?;
    if image.is_single_channel() {
        return f(image, grid.as_ref());
    }
    let planes = image
        .split_channels()
        .iter()
        .map(|plane| f(plane, grid.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    Image::merge_channels(&planes)
}

fn add_keystream(image: &Image, ks: &mut Keystream) -> Image {
    image.with_samples(image.samples().iter().map(|&v| v.wrapping_add(ks.next_byte())).collect())
}

fn sub_keystream(image: &Image, ks: &mut Keystream) -> Image {
    image.with_samples(image.samples().iter().map(|&v| v.wrapping_sub(ks.next_byte())).collect())
}

fn xor_keystream(image: &Image, ks: &mut Keystream) -> Image {
    image.with_samples(image.samples().iter().map(|&v| v ^ ks.next_byte()).collect())
}

fn encrypt_plane(
    plane: &Image,
    keys: &CipherKeys,
    config: &CipherConfig,
    grid: Option<&BlockGrid>,
) -> Result<Image> {
    let mut ks = Keystream::new(*keys);
    let shuffled = row_shift(plane, Direction::Forward)?;
    let added = add_keystream(&shuffled, &mut ks);
    let Some(grid) = grid else {
        return Ok(added);
    };
    let arnold = arnold_block(&added, grid, config.arnold_iterations, Direction::Forward)?;
    let scrambled = block_distribute(&arnold, grid, Direction::Forward)?;
    let xored = xor_keystream(&scrambled, &mut ks);
    col_shift(&xored, Direction::Forward)
}

fn decrypt_plane(
    plane: &Image,
    keys: &CipherKeys,
    config: &CipherConfig,
    grid: Option<&BlockGrid>,
) -> Result<Image> {
    let mut first = Keystream::new(*keys);
    let added = match grid {
        None => plane.clone(),
        Some(grid) => {
            let mut second = Keystream::new(*keys);
            second.skip(plane.pixel_count() as u64);
            let xored = col_shift(plane, Direction::Inverse)?;
            let scrambled = xor_keystream(&xored, &mut second);
            let arnold = block_distribute(&scrambled, grid, Direction::Inverse)?;
            arnold_block(&arnold, grid, config.arnold_iterations, Direction::Inverse)?
        }
    };
    let shuffled = sub_keystream(&added, &mut first);
    row_shift(&shuffled, Direction::Inverse)
}
