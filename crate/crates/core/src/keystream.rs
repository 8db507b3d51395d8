//! Logistic-map byte generator.
//!
//! The map `a <- (k * a) * (1 - a)` is evaluated in IEEE-754 binary64 with
//! exactly that operation order; Rust never contracts it into a fused
//! multiply-add, so the stream is bit-identical on every platform. Each step
//! emits `trunc(1e14 * a) mod 256`.
//!
//! # Key space
//!
//! A key is a pair of binary64 values, `a` in (0, 1) and `k` in (3.5, 4).
//! There are about 2^62 doubles in (0, 1) and 2^50 in (3.5, 4), so the
//! realizable key space is below 2^112. Decimal key strings that parse to
//! the same double are the same key.

use crate::error::{Error, Result};

const SCALE: f64 = 1e14;

/// Seed `a` and control parameter `k` of the logistic map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CipherKeys {
    a: f64,
    k: f64,
}

impl CipherKeys {
    pub const A_RANGE: (f64, f64) = (0.0, 1.0);
    pub const K_RANGE: (f64, f64) = (3.5, 4.0);

    pub fn new(a: f64, k: f64) -> Result<Self> {
        check_open("A", a, Self::A_RANGE)?;
        check_open("K", k, Self::K_RANGE)?;
        Ok(CipherKeys { a, k })
    }

    /// Parses decimal strings such as `"0.3905"`. The nearest binary64 is
    /// the effective key.
    pub fn parse(a: &str, k: &str) -> Result<Self> {
        let parse = |name, text: &str| {
            text.trim().parse::<f64>().map_err(|_| Error::KeyParse {
                name,
                text: text.to_string(),
            })
        };
        Self::new(parse("A", a)?, parse("K", k)?)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

fn check_open(name: &'static str, value: f64, (low, high): (f64, f64)) -> Result<()> {
    // NaN fails both comparisons.
    if value > low && value < high {
        Ok(())
    } else {
        Err(Error::KeyRange {
            name,
            value,
            low,
            high,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Keystream {
    current: f64,
    k: f64,
    count: u64,
}

impl Keystream {
    pub fn new(keys: CipherKeys) -> Self {
        Keystream {
            current: keys.a,
            k: keys.k,
            count: 0,
        }
    }

    /// Current map value.
    pub fn current(&self) -> f64 {
        self.current
    }

    /// Bytes emitted so far.
    pub fn count(&self) -> u64 {
        self.count
    }

    #[inline]
    fn step(&mut self) {
        self.current = (self.k * self.current) * (1.0 - self.current);
        self.count += 1;
    }

    #[inline]
    pub fn next_byte(&mut self) -> u8 {
        self.step();
        ((SCALE * self.current) as u64 % 256) as u8
    }

    /// Advances as if `n` bytes were drawn and discarded.
    pub fn skip(&mut self, n: u64) {
        for _ in 0..n {
            self.step();
        }
    }

    pub fn fill(&mut self, buf: &mut [u8]) {
        for b in buf {
            *b = self.next_byte();
        }
    }

    /// Endless byte iterator borrowing the state.
    pub fn bytes(&mut self) -> impl Iterator<Item = u8> + '_ {
        std::iter::from_fn(move || Some(self.next_byte()))
    }

    pub fn take_bytes(&mut self, n: usize) -> Vec<u8> {
        let mut buf = vec![0; n];
        self.fill(&mut buf);
        buf
    }
}
