//! Variable-pixel G-neighbor filtering.
//!
//! For every pixel a `w x w` window is taken from the padded image. Window
//! members whose distance to the center intensity is at most the threshold
//! form the G-neighbor mask, and the output pixel aggregates only those
//! members. With the mask forced to all-true this reduces to the ordinary
//! square mean/median filter used as the baseline.

use rayon::prelude::*;
use thiserror::Error;

use crate::imaging::{pad, GrayImage, PaddingMode};

#[derive(Debug, Error, PartialEq)]
pub enum FilterError {
    #[error("window size must be odd and at least 3, got {0}")]
    InvalidWindow(usize),
    #[error("threshold must lie in [0, 255], got {0}")]
    InvalidThreshold(i64),
    #[error("normalized threshold must lie in [0, 1], got {0}")]
    InvalidNormThreshold(f64),
}

/// How the distance between two 8-bit intensities is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceMode {
    /// `|a - b|`
    #[default]
    Abs,
    /// Bitwise `a ^ b` read as an unsigned byte; what the XOR gate stage computes.
    Xor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregator {
    #[default]
    Mean,
    Median,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterConfig {
    pub window: usize,
    pub threshold: u8,
    pub aggregator: Aggregator,
    pub distance: DistanceMode,
    pub padding: PaddingMode,
    pub adaptive: bool,
}

impl FilterConfig {
    /// Threshold found best on salt-and-pepper corrupted images, 0.0507 on the unit scale.
    pub const DEFAULT_THRESHOLD: u8 = 13;

    /// Adaptive mean filter with absolute distance and zero padding.
    pub fn new(window: usize, threshold: u8) -> Result<Self, FilterError> {
        let cfg = Self {
            window,
            threshold,
            aggregator: Aggregator::Mean,
            distance: DistanceMode::Abs,
            padding: PaddingMode::Zero,
            adaptive: true,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Conventional full-window filter.
    pub fn square(window: usize, aggregator: Aggregator, padding: PaddingMode) -> Result<Self, FilterError> {
        Ok(Self::new(window, 255)?
            .with_aggregator(aggregator)
            .with_padding(padding)
            .with_adaptive(false))
    }

    pub fn with_aggregator(mut self, aggregator: Aggregator) -> Self {
        self.aggregator = aggregator;
        self
    }

    pub fn with_distance(mut self, distance: DistanceMode) -> Self {
        self.distance = distance;
        self
    }

    pub fn with_padding(mut self, padding: PaddingMode) -> Self {
        self.padding = padding;
        self
    }

    pub fn with_adaptive(mut self, adaptive: bool) -> Self {
        self.adaptive = adaptive;
        self
    }

    pub fn validate(&self) -> Result<(), FilterError> {
        if self.window < 3 || self.window.is_multiple_of(2) {
            return Err(FilterError::InvalidWindow(self.window));
        }
        Ok(())
    }

    pub fn radius(&self) -> usize {
        self.window / 2
    }
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self::new(3, Self::DEFAULT_THRESHOLD).expect("3 is a valid window")
    }
}

/// Accepts a threshold on the 0-255 scale from any integer type.
pub fn threshold_from_int(value: i64) -> Result<u8, FilterError> {
    u8::try_from(value).map_err(|_| FilterError::InvalidThreshold(value))
}

/// Maps a unit-scale threshold onto the 0-255 grid with `round(t * 255)`.
pub fn threshold_from_norm(value: f64) -> Result<u8, FilterError> {
    if !(0.0..=1.0).contains(&value) {
        return Err(FilterError::InvalidNormThreshold(value));
    }
    Ok((value * 255.0).round() as u8)
}

#[inline]
pub fn pixel_distance(a: u8, b: u8, mode: DistanceMode) -> u8 {
    match mode {
        DistanceMode::Abs => a.abs_diff(b),
        DistanceMode::Xor => a ^ b,
    }
}

/// G-neighbor membership over a square window, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborMask {
    size: usize,
    bits: Vec<bool>,
    count: usize,
}

impl NeighborMask {
    pub fn full(size: usize) -> Self {
        Self {
            size,
            bits: vec![true; size * size],
            count: size * size,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.size + col]
    }

    pub fn center(&self) -> bool {
        self.get(self.size / 2, self.size / 2)
    }
}

/// Builds the mask for a `size x size` window given row-major.
///
/// Panics if `window.len() != size * size` or `size` is even.
pub fn gneighbor_mask(window: &[u8], size: usize, threshold: u8, mode: DistanceMode) -> NeighborMask {
    assert!(size % 2 == 1, "window size must be odd");
    assert_eq!(window.len(), size * size, "window buffer does not match size");
    let center = window[window.len() / 2];
    let bits: Vec<bool> = window
        .iter()
        .map(|&v| pixel_distance(center, v, mode) <= threshold)
        .collect();
    let count = bits.iter().filter(|&&b| b).count();
    NeighborMask { size, bits, count }
}

/// Mean or median of the masked window members, rounded half-up.
pub fn aggregate(window: &[u8], mask: &NeighborMask, agg: Aggregator) -> u8 {
    assert!(mask.count >= 1, "G-neighbor mask is empty");
    let mut scratch = Vec::with_capacity(mask.count);
    aggregate_into(window, &mask.bits, mask.count, agg, &mut scratch)
}

fn aggregate_into(window: &[u8], bits: &[bool], count: usize, agg: Aggregator, scratch: &mut Vec<u8>) -> u8 {
    let selected = window.iter().zip(bits).filter(|(_, &b)| b).map(|(&v, _)| v);
    match agg {
        Aggregator::Mean => {
            let sum: u32 = selected.map(u32::from).sum();
            let n = count as u32;
            // floor(sum / n + 1/2)
            ((2 * sum + n) / (2 * n)) as u8
        }
        Aggregator::Median => {
            scratch.clear();
            scratch.extend(selected);
            scratch.sort_unstable();
            let mid = scratch.len() / 2;
            if scratch.len() % 2 == 1 {
                scratch[mid]
            } else {
                (scratch[mid - 1] as u16 + scratch[mid] as u16).div_ceil(2) as u8
            }
        }
    }
}

/// Applies the configured filter. Rows are processed in parallel.
pub fn filter_image(img: &GrayImage, cfg: &FilterConfig) -> GrayImage {
    cfg.validate().expect("invalid filter configuration");
    let (w, h) = (img.width(), img.height());
    let size = cfg.window;
    let r = cfg.radius();
    let padded = pad(img, r, cfg.padding);
    let pw = padded.width();
    let src = padded.pixels();

    let mut out = vec![0u8; w * h];
    out.par_chunks_mut(w).enumerate().for_each(|(y, row)| {
        let mut window = vec![0u8; size * size];
        let mut bits = vec![true; size * size];
        let mut scratch = Vec::with_capacity(size * size);
        for (x, dst) in row.iter_mut().enumerate() {
            for dy in 0..size {
                let start = (y + dy) * pw + x;
                window[dy * size..(dy + 1) * size].copy_from_slice(&src[start..start + size]);
            }
            let count = if cfg.adaptive {
                let center = window[size * size / 2];
                let mut count = 0;
                for (b, &v) in bits.iter_mut().zip(&window) {
                    *b = pixel_distance(center, v, cfg.distance) <= cfg.threshold;
                    count += *b as usize;
                }
                count
            } else {
                size * size
            };
            *dst = aggregate_into(&window, &bits, count, cfg.aggregator, &mut scratch);
        }
    });
    GrayImage::new(w, h, out).expect("dimensions carried over from a valid image")
}

/// Conventional square-window filter.
pub fn square_filter(img: &GrayImage, window: usize, agg: Aggregator, padding: PaddingMode) -> Result<GrayImage, FilterError> {
    let cfg = FilterConfig::square(window, agg, padding)?;
    Ok(filter_image(img, &cfg))
}
