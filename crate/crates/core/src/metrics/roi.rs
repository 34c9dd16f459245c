use std::fmt;

use serde::{Deserialize, Serialize};

use super::MetricsError;

/// Region of interest for reduced-reference evaluation.
///
/// Coordinates are zero-based; `x` is the column and `y` the row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum RoiSpec {
    Circle {
        center_x: i64,
        center_y: i64,
        radius: u64,
    },
    /// Inclusive index bounds, clamped to the image.
    Rectangle {
        row_lo: usize,
        row_hi: usize,
        col_lo: usize,
        col_hi: usize,
    },
}

impl fmt::Display for RoiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RoiSpec::Circle {
                center_x,
                center_y,
                radius,
            } => write!(f, "circle({center_x},{center_y},{radius})"),
            RoiSpec::Rectangle {
                row_lo,
                row_hi,
                col_lo,
                col_hi,
            } => write!(f, "rect({row_lo}..={row_hi},{col_lo}..={col_hi})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoiMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
    count: usize,
}

impl RoiMask {
    pub fn full(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            bits: vec![true; width * height],
            count: width * height,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }
}

pub fn roi_mask(spec: &RoiSpec, width: usize, height: usize) -> Result<RoiMask, MetricsError> {
    let mut bits = vec![false; width * height];
    match *spec {
        RoiSpec::Circle {
            center_x,
            center_y,
            radius,
        } => {
            let r2 = (radius as i128) * (radius as i128);
            for y in 0..height {
                let dy = y as i128 - center_y as i128;
                for x in 0..width {
                    let dx = x as i128 - center_x as i128;
                    bits[y * width + x] = dx * dx + dy * dy <= r2;
                }
            }
        }
        RoiSpec::Rectangle {
            row_lo,
            row_hi,
            col_lo,
            col_hi,
        } => {
            if row_lo <= row_hi && col_lo <= col_hi && row_lo < height && col_lo < width {
                for y in row_lo..=row_hi.min(height - 1) {
                    for x in col_lo..=col_hi.min(width - 1) {
                        bits[y * width + x] = true;
                    }
                }
            }
        }
    }
    let count = bits.iter().filter(|&&b| b).count();
    if count == 0 {
        return Err(MetricsError::EmptyRoi(*spec));
    }
    Ok(RoiMask {
        width,
        height,
        bits,
        count,
    })
}
