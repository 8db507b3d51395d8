//! Independent oracles and fixtures shared by the integration tests.
//!
//! Nothing here calls into the library's stage functions; each oracle is a
//! direct re-derivation from the algorithm's definition.

#![allow(dead_code)]

use std::path::PathBuf;

use imgcipher::{load_image, Image};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const REFERENCE_A: &str = "0.3905";
pub const REFERENCE_K: &str = "3.9886";

/// First 32 keystream bytes for (0.3905, 3.9886), produced by
/// [`exact_keystream`] and cross-checked with a separate exact-fraction
/// script outside this crate.
pub const REFERENCE_KEYSTREAM_32: [u8; 32] = [
    7, 150, 152, 94, 188, 233, 6, 87, 143, 119, 108, 69, 10, 165, 179, 221, 173, 108, 118, 21, 54,
    249, 246, 71, 67, 3, 145, 254, 126, 204, 161, 193,
];

pub fn fixture(name: &str) -> Image {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    load_image(&path).unwrap_or_else(|e| panic!("loading {}: {e}", path.display()))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_gray(rng: &mut impl Rng, width: usize, height: usize) -> Image {
    let mut samples = vec![0u8; width * height];
    rng.fill(&mut samples[..]);
    Image::gray(width, height, samples).unwrap()
}

pub fn random_rgb(rng: &mut impl Rng, width: usize, height: usize) -> Image {
    let mut samples = vec![0u8; width * height * 3];
    rng.fill(&mut samples[..]);
    Image::new(width, height, imgcipher::Channels::Rgb, samples).unwrap()
}

/// Smooth, strongly correlated synthetic scene: random gradient plus a few
/// low-frequency waves and mild noise.
pub fn random_smooth(rng: &mut impl Rng, width: usize, height: usize) -> Image {
    let (gx, gy): (f64, f64) = (rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
    let waves: Vec<(f64, f64, f64, f64)> = (0..3)
        .map(|_| {
            (
                rng.gen_range(10.0..40.0),
                rng.gen_range(0.005..0.05),
                rng.gen_range(0.005..0.05),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect();
    let base = rng.gen_range(60.0..190.0);
    let mut samples = Vec::with_capacity(width * height);
    for r in 0..height {
        for c in 0..width {
            let (x, y) = (c as f64, r as f64);
            let mut v = base + gx * (x - width as f64 / 2.0) + gy * (y - height as f64 / 2.0);
            for &(amp, fx, fy, phase) in &waves {
                v += amp * (fx * x + fy * y + phase).sin();
            }
            v += rng.gen_range(-2.0..2.0);
            samples.push(v.round().clamp(0.0, 255.0) as u8);
        }
    }
    Image::gray(width, height, samples).unwrap()
}

// ---------------------------------------------------------------------------
// Exact-rational emulation of binary64 arithmetic.

fn pow2(e: i64) -> BigRational {
    let two = BigInt::from(2);
    if e >= 0 {
        BigRational::from_integer(two.pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), two.pow((-e) as u32))
    }
}

/// Rounds a positive rational in the normal binary64 range to the nearest
/// double, ties to even, without touching floating-point hardware until the
/// final exact power-of-two scaling.
pub fn round_to_binary64(q: &BigRational) -> f64 {
    assert!(q.is_positive(), "oracle only handles positive values");
    // floor(log2 q), from bit lengths then corrected.
    let mut e = q.numer().bits() as i64 - q.denom().bits() as i64;
    while pow2(e) > *q {
        e -= 1;
    }
    while pow2(e + 1) <= *q {
        e += 1;
    }
    let mut shift = e - 52;
    let scaled = q / pow2(shift);
    let mut mantissa = scaled.floor().to_integer();
    let rem = &scaled - BigRational::from_integer(mantissa.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let odd = (&mantissa % BigInt::from(2)) == BigInt::one();
    if rem > half || (rem == half && odd) {
        mantissa += 1;
    }
    if mantissa == BigInt::from(2).pow(53) {
        mantissa = BigInt::from(2).pow(52);
        shift += 1;
    }
    let m = mantissa.to_u64().unwrap() as f64; // < 2^53, exact
    m * 2f64.powi(shift as i32)
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

fn parse_decimal(text: &str) -> BigRational {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let digits: BigInt = format!("{int}{frac}").parse().unwrap();
    BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32))
}

/// Keystream bytes computed with every binary64 operation carried out
/// exactly and then rounded: `a <- fl(fl(k * a) * fl(1 - a))`, byte =
/// `floor(fl(1e14 * a)) mod 256`.
pub fn exact_keystream(a_text: &str, k_text: &str, count: usize) -> Vec<u8> {
    exact_keystream_with_crossings(a_text, k_text, count).0
}

/// As [`exact_keystream`], also counting bytes where rounding the scaled
/// product moved it across an integer (so `floor` of the exact product
/// would give a different byte).
pub fn exact_keystream_with_crossings(a_text: &str, k_text: &str, count: usize) -> (Vec<u8>, usize) {
    let mut a = round_to_binary64(&parse_decimal(a_text));
    let k = round_to_binary64(&parse_decimal(k_text));
    let scale = round_to_binary64(&parse_decimal("100000000000000"));
    let one = BigRational::one();
    let mut out = Vec::with_capacity(count);
    let mut crossings = 0;
    for _ in 0..count {
        let ka = round_to_binary64(&(exact(k) * exact(a)));
        let one_minus = round_to_binary64(&(&one - exact(a)));
        a = round_to_binary64(&(exact(ka) * exact(one_minus)));
        let exact_product = exact(scale) * exact(a);
        let rounded = exact(round_to_binary64(&exact_product));
        let byte = |q: &BigRational| (q.floor().to_integer() % BigInt::from(256)).to_u8().unwrap();
        if byte(&rounded) != byte(&exact_product) {
            crossings += 1;
        }
        out.push(byte(&rounded));
        assert!(!a.is_zero());
    }
    (out, crossings)
}

// ---------------------------------------------------------------------------
// Straight-line cipher over a plain 2-D grid.

type Grid = Vec<Vec<u8>>;

fn to_grid(image: &Image) -> Grid {
    image.samples().chunks(image.width()).map(<[u8]>::to_vec).collect()
}

fn float_keystream(a: f64, k: f64, count: usize) -> Vec<u8> {
    let mut x = a;
    (0..count)
        .map(|_| {
            x = k * x * (1.0 - x);
            ((x * 100_000_000_000_000.0).trunc() as u64 % 256) as u8
        })
        .collect()
}

/// Six-step encryption of one grayscale plane, written directly from the
/// step definitions. `keystream` must hold `2 * W * H` bytes.
pub fn straight_line_encrypt(plain: &Image, keystream: &[u8], block: usize) -> Image {
    let (w, h) = (plain.width(), plain.height());
    assert_eq!(keystream.len(), 2 * w * h);
    let mut g = to_grid(plain);

    // i: rotate row r left by its sum.
    for row in g.iter_mut() {
        let s = row.iter().map(|&v| v as usize).sum::<usize>() % w;
        let old = row.clone();
        for c in 0..w {
            row[c] = old[(c + s) % w];
        }
    }
    // ii: add first keystream segment in raster order.
    for r in 0..h {
        for c in 0..w {
            g[r][c] = ((g[r][c] as u16 + keystream[r * w + c] as u16) % 256) as u8;
        }
    }
    // iii: cat map within each block.
    let old = g.clone();
    for by in (0..h).step_by(block) {
        for bx in (0..w).step_by(block) {
            for x in 0..block {
                for y in 0..block {
                    let (nx, ny) = ((x + y) % block, (x + 2 * y) % block);
                    g[by + nx][bx + ny] = old[by + x][bx + y];
                }
            }
        }
    }
    // iv: pixel p of block b goes to block-linear slot p * n + b.
    let (nbx, nby) = (w / block, h / block);
    let n = nbx * nby;
    let per = block * block;
    let coords = |b: usize, p: usize| ((b / nbx) * block + p / block, (b % nbx) * block + p % block);
    let old = g.clone();
    for b in 0..n {
        for p in 0..per {
            let dest = p * n + b;
            let (sr, sc) = coords(b, p);
            let (dr, dc) = coords(dest / per, dest % per);
            g[dr][dc] = old[sr][sc];
        }
    }
    // v: XOR with the second segment.
    for r in 0..h {
        for c in 0..w {
            g[r][c] ^= keystream[w * h + r * w + c];
        }
    }
    // vi: rotate column c up by its sum.
    let old = g.clone();
    for c in 0..w {
        let s = (0..h).map(|r| old[r][c] as usize).sum::<usize>() % h;
        for r in 0..h {
            g[r][c] = old[(r + s) % h][c];
        }
    }
    Image::gray(w, h, g.concat()).unwrap()
}

pub fn straight_line_encrypt_f64(plain: &Image, a: f64, k: f64, block: usize) -> Image {
    let ks = float_keystream(a, k, 2 * plain.width() * plain.height());
    straight_line_encrypt(plain, &ks, block)
}

// ---------------------------------------------------------------------------

/// Smallest p >= 1 with the cat map's p-th power equal to the identity on
/// the `block x block` lattice, by iterating every point.
pub fn arnold_period(block: usize) -> usize {
    let mut points: Vec<(usize, usize)> =
        (0..block).flat_map(|x| (0..block).map(move |y| (x, y))).collect();
    let start = points.clone();
    for p in 1.. {
        for pt in points.iter_mut() {
            *pt = ((pt.0 + pt.1) % block, (pt.0 + 2 * pt.1) % block);
        }
        if points == start {
            return p;
        }
    }
    unreachable!()
}
