//! Statistics used to judge a cipher image: gray-level histogram and
//! entropy, adjacent-pixel correlation, histogram chi-square, and the
//! block position entropy of a shuffle.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::image::Image;
use crate::permutations::{BlockGrid, Permutation};

pub type Histogram = [u64; 256];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Adjacency {
    /// Each pixel paired with its right neighbor.
    Horizontal,
    /// Each pixel paired with the one below it.
    Vertical,
}

pub fn histogram(image: &Image) -> Result<Histogram> {
    image.require_single_channel()?;
    let mut counts = [0u64; 256];
    for &v in image.samples() {
        counts[v as usize] += 1;
    }
    Ok(counts)
}

/// Shannon entropy in bits of a 256-bin histogram. Empty bins contribute 0.
pub fn histogram_entropy(counts: &Histogram) -> f64 {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    let h: f64 = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum();
    // A single occupied bin yields -0.0.
    h.max(0.0)
}

pub fn shannon_entropy(image: &Image) -> Result<f64> {
    histogram(image).map(|h| histogram_entropy(&h))
}

/// Pearson coefficient over every adjacent pair, population moments.
pub fn adjacent_correlation(image: &Image, adjacency: Adjacency) -> Result<f64> {
    image.require_single_channel()?;
    let (width, height) = (image.width(), image.height());
    let s = image.samples();
    let pairs: Vec<(f64, f64)> = match adjacency {
        Adjacency::Horizontal => {
            if width < 2 {
                return Err(Error::InvalidImage("horizontal correlation needs 2 columns".into()));
            }
            s.chunks_exact(width)
                .flat_map(|row| row.windows(2).map(|w| (f64::from(w[0]), f64::from(w[1]))))
                .collect()
        }
        Adjacency::Vertical => {
            if height < 2 {
                return Err(Error::InvalidImage("vertical correlation needs 2 rows".into()));
            }
            s[..s.len() - width]
                .iter()
                .zip(&s[width..])
                .map(|(&p, &q)| (f64::from(p), f64::from(q)))
                .collect()
        }
    };
    pearson(&pairs)
}

/// Pearson coefficient between co-located samples of two equal-size
/// single-channel images.
pub fn pixel_correlation(a: &Image, b: &Image) -> Result<f64> {
    a.require_single_channel()?;
    b.require_single_channel()?;
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::InvalidImage("images differ in size".into()));
    }
    let pairs: Vec<(f64, f64)> = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(&p, &q)| (f64::from(p), f64::from(q)))
        .collect();
    pearson(&pairs)
}

fn pearson(pairs: &[(f64, f64)]) -> Result<f64> {
    let n = pairs.len() as f64;
    let (sp, sq) = pairs.iter().fold((0.0, 0.0), |(a, b), &(p, q)| (a + p, b + q));
    let (mp, mq) = (sp / n, sq / n);
    let (mut cov, mut vp, mut vq) = (0.0, 0.0, 0.0);
    for &(p, q) in pairs {
        let (dp, dq) = (p - mp, q - mq);
        cov += dp * dq;
        vp += dp * dp;
        vq += dq * dq;
    }
    if vp == 0.0 {
        return Err(Error::ZeroVariance("first pixel of each pair is constant"));
    }
    if vq == 0.0 {
        return Err(Error::ZeroVariance("second pixel of each pair is constant"));
    }
    Ok((cov / (vp.sqrt() * vq.sqrt())).clamp(-1.0, 1.0))
}

/// `sum((observed - expected)^2 / expected)` against a flat histogram.
pub fn chi_square_uniformity(counts: &Histogram) -> f64 {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let expected = total as f64 / 256.0;
    counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}

/// Sum over destination blocks of the entropy (bits) of where that block's
/// pixels came from, counted by source block. Order within a block is
/// ignored.
pub fn position_entropy(perm: &Permutation, grid: &BlockGrid) -> Result<f64> {
    if perm.size() != grid.pixel_count() {
        return Err(Error::SizeMismatch {
            perm: perm.size(),
            grid: grid.pixel_count(),
        });
    }
    let mut pairs: Vec<(usize, usize)> = perm
        .forward()
        .iter()
        .enumerate()
        .map(|(src, &dst)| (grid.block_of(dst), grid.block_of(src)))
        .collect();
    pairs.sort_unstable();

    let per_block = grid.pixels_per_block() as f64;
    let mut total = 0.0;
    let mut i = 0;
    while i < pairs.len() {
        let mut j = i;
        while j < pairs.len() && pairs[j] == pairs[i] {
            j += 1;
        }
        let p = (j - i) as f64 / per_block;
        total -= p * p.log2();
        i = j;
    }
    Ok(total.max(0.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub entropy_bits: f64,
    /// `None` when undefined (a constant marginal).
    pub corr_horizontal: Option<f64>,
    pub corr_vertical: Option<f64>,
    pub histogram: Vec<u64>,
    pub chi_square: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position_entropy_bits: Option<f64>,
}

/// All metrics for one channel. A correlation that is undefined because of
/// zero variance is reported as `None`; other errors propagate.
pub fn analyze(image: &Image, shuffle: Option<(&Permutation, &BlockGrid)>) -> Result<AnalysisReport> {
    let counts = histogram(image)?;
    let corr = |adjacency| match adjacent_correlation(image, adjacency) {
        Ok(r) => Ok(Some(r)),
        Err(Error::ZeroVariance(_)) => Ok(None),
        Err(e) => Err(e),
    };
    Ok(AnalysisReport {
        entropy_bits: histogram_entropy(&counts),
        corr_horizontal: corr(Adjacency::Horizontal)?,
        corr_vertical: corr(Adjacency::Vertical)?,
        histogram: counts.to_vec(),
        chi_square: chi_square_uniformity(&counts),
        position_entropy_bits: shuffle
            .map(|(perm, grid)| position_entropy(perm, grid))
            .transpose()?,
    })
}

impl AnalysisReport {
    /// One `key=value` line per field; undefined correlations print as
    /// `undefined`, the histogram as space-separated counts.
    pub fn to_text(&self) -> String {
        let corr = |c: Option<f64>| c.map_or_else(|| "undefined".to_string(), |r| format!("{r:.6}"));
        let mut out = String::new();
        writeln!(out, "entropy_bits={:.6}", self.entropy_bits).unwrap();
        writeln!(out, "corr_horizontal={}", corr(self.corr_horizontal)).unwrap();
        writeln!(out, "corr_vertical={}", corr(self.corr_vertical)).unwrap();
        writeln!(out, "chi_square={:.6}", self.chi_square).unwrap();
        if let Some(h) = self.position_entropy_bits {
            writeln!(out, "position_entropy_bits={h:.6}").unwrap();
        }
        let counts: Vec<String> = self.histogram.iter().map(u64::to_string).collect();
        writeln!(out, "histogram={}", counts.join(" ")).unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
