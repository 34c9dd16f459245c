use super::GrayImage;

/// Border extension used when a window reaches past the image edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PaddingMode {
    /// Out-of-image samples read as 0.
    #[default]
    Zero,
    /// Out-of-image samples copy the nearest edge pixel.
    Replicate,
}

/// Grows `img` by `radius` pixels on every side.
pub fn pad(img: &GrayImage, radius: usize, mode: PaddingMode) -> GrayImage {
    if radius == 0 {
        return img.clone();
    }
    let (w, h) = (img.width(), img.height());
    let pw = w + 2 * radius;
    let ph = h + 2 * radius;
    let mut pixels = vec![0u8; pw * ph];
    match mode {
        PaddingMode::Zero => {
            for y in 0..h {
                let dst = (y + radius) * pw + radius;
                pixels[dst..dst + w].copy_from_slice(img.row(y));
            }
        }
        PaddingMode::Replicate => {
            for py in 0..ph {
                let sy = py.saturating_sub(radius).min(h - 1);
                for px in 0..pw {
                    let sx = px.saturating_sub(radius).min(w - 1);
                    pixels[py * pw + px] = img.get(sx, sy);
                }
            }
        }
    }
    GrayImage {
        width: pw,
        height: ph,
        pixels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pixel() {
        let img = GrayImage::new(1, 1, vec![9]).unwrap();
        let z = pad(&img, 1, PaddingMode::Zero);
        assert_eq!(z.pixels(), &[0, 0, 0, 0, 9, 0, 0, 0, 0]);
        let r = pad(&img, 1, PaddingMode::Replicate);
        assert_eq!(r.pixels(), &[9; 9]);
    }

    #[test]
    fn radius_zero_is_identity() {
        let img = GrayImage::new(2, 3, vec![1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(pad(&img, 0, PaddingMode::Zero), img);
        assert_eq!(pad(&img, 0, PaddingMode::Replicate), img);
    }

    #[test]
    fn interior_preserved() {
        let img = GrayImage::new(3, 2, vec![1, 2, 3, 4, 5, 6]).unwrap();
        for mode in [PaddingMode::Zero, PaddingMode::Replicate] {
            let p = pad(&img, 2, mode);
            assert_eq!((p.width(), p.height()), (7, 6));
            for y in 0..2 {
                for x in 0..3 {
                    assert_eq!(p.get(x + 2, y + 2), img.get(x, y));
                }
            }
        }
        let r = pad(&img, 2, PaddingMode::Replicate);
        assert_eq!(r.get(0, 0), 1);
        assert_eq!(r.get(6, 5), 6);
        assert_eq!(r.get(6, 0), 3);
    }
}
