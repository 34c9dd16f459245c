use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GrayImage, ImageError};

/// Salt-and-pepper corruption parameters.
///
/// The generator is ChaCha8 seeded through `seed_from_u64`. Pixels are
/// visited row-major; each draws a uniform `f64` and, when it falls below
/// `density`, a fair coin picks 255 (salt) or 0 (pepper).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    density: f64,
    seed: u64,
}

impl NoiseSpec {
    pub const DEFAULT_DENSITY: f64 = 0.05;

    pub fn new(density: f64, seed: u64) -> Result<Self, ImageError> {
        if !(0.0..=1.0).contains(&density) {
            return Err(ImageError::InvalidDensity(density));
        }
        Ok(Self { density, seed })
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self {
            density: Self::DEFAULT_DENSITY,
            seed: 0,
        }
    }
}

pub fn add_salt_pepper(img: &GrayImage, spec: NoiseSpec) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = img.clone();
    for p in out.pixels.iter_mut() {
        if rng.random::<f64>() < spec.density {
            *p = if rng.random::<bool>() { 255 } else { 0 };
        }
    }
    out
}
