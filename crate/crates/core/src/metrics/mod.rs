//! Full- and reduced-reference image quality: MSE, PSNR and global SSIM.
//!
//! All statistics are taken over normalized (`[0, 1]`) intensities. A region
//! of interest restricts every sum to the pixels inside it; pixels outside
//! the region do not contribute at all. Reductions run sequentially in
//! row-major order so repeated evaluations are bit-identical.

pub(crate) mod report;
mod roi;

pub use report::{write_reports_csv, QualityReport, CSV_HEADER};
pub use roi::{roi_mask, RoiMask, RoiSpec};

use thiserror::Error;

use crate::imaging::{normalize, GrayImage, NormImage};

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("region of interest {0} selects no pixels")]
    EmptyRoi(RoiSpec),
    #[error("SSIM needs at least two pixels in the evaluated region")]
    DegenerateRegion,
    #[error("value outside the domain of {0}")]
    Domain(&'static str),
}

/// Stabilizing constants for the three SSIM terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SsimConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl SsimConstants {
    /// `c1 = (k1 L)^2`, `c2 = (k2 L)^2`, `c3 = c2 / 2`.
    pub fn for_dynamic_range(range: f64, k1: f64, k2: f64) -> Self {
        let c1 = (k1 * range).powi(2);
        let c2 = (k2 * range).powi(2);
        Self { c1, c2, c3: c2 / 2.0 }
    }
}

impl Default for SsimConstants {
    /// `k1 = 0.01`, `k2 = 0.03` on the unit intensity range.
    fn default() -> Self {
        Self::for_dynamic_range(1.0, 0.01, 0.03)
    }
}

/// Denominator form for the luminance and contrast terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SsimForm {
    /// `mu1^2 + mu2^2 + c1` and `s1^2 + s2^2 + c2`.
    #[default]
    Standard,
    /// Unsquared `mu1 + mu2 + c1` and `s1 + s2 + c2`, kept for auditing the
    /// printed formula. Not bounded by 1.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ssim {
    pub ssim: f64,
    pub luminance: f64,
    pub contrast: f64,
    pub structure: f64,
}

fn check_dims(a: &NormImage, b: &NormImage) -> Result<(), MetricsError> {
    if !a.same_dimensions(b) {
        return Err(MetricsError::DimensionMismatch(
            a.width(),
            a.height(),
            b.width(),
            b.height(),
        ));
    }
    Ok(())
}

/// Samples inside the region plus the region actually applied.
type Region = (Vec<(f64, f64)>, Option<RoiSpec>);

/// Pairs of samples inside the region, in row-major order.
fn region<'a>(
    a: &'a NormImage,
    b: &'a NormImage,
    roi: Option<&RoiSpec>,
) -> Result<Region, MetricsError> {
    check_dims(a, b)?;
    match roi {
        None => Ok((
            a.pixels().iter().copied().zip(b.pixels().iter().copied()).collect(),
            None,
        )),
        Some(spec) => {
            let mask = roi_mask(spec, a.width(), a.height())?;
            let pairs = a
                .pixels()
                .iter()
                .zip(b.pixels())
                .zip(mask.bits())
                .filter(|(_, &keep)| keep)
                .map(|((&x, &y), _)| (x, y))
                .collect();
            Ok((pairs, Some(*spec)))
        }
    }
}

fn mse_of(pairs: &[(f64, f64)]) -> f64 {
    let sum: f64 = pairs.iter().map(|(x, y)| (x - y) * (x - y)).sum();
    sum / pairs.len() as f64
}

fn psnr_of_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        // peak intensity is 1 on normalized images
        10.0 * (1.0 / mse).log10()
    }
}

fn ssim_of(pairs: &[(f64, f64)], k: &SsimConstants, form: SsimForm) -> Result<Ssim, MetricsError> {
    if pairs.len() < 2 {
        return Err(MetricsError::DegenerateRegion);
    }
    let n = pairs.len() as f64;
    let (sa, sb) = pairs.iter().fold((0.0, 0.0), |(sa, sb), (x, y)| (sa + x, sb + y));
    let (mu_a, mu_b) = (sa / n, sb / n);
    let (va, vb, cov) = pairs.iter().fold((0.0, 0.0, 0.0), |(va, vb, c), (x, y)| {
        let (dx, dy) = (x - mu_a, y - mu_b);
        (va + dx * dx, vb + dy * dy, c + dx * dy)
    });
    let (var_a, var_b, cov) = (va / n, vb / n, cov / n);
    let (sd_a, sd_b) = (var_a.sqrt(), var_b.sqrt());

    let (l_den, c_den) = match form {
        SsimForm::Standard => (mu_a * mu_a + mu_b * mu_b + k.c1, var_a + var_b + k.c2),
        SsimForm::Literal => (mu_a + mu_b + k.c1, sd_a + sd_b + k.c2),
    };
    let luminance = (2.0 * mu_a * mu_b + k.c1) / l_den;
    let contrast = (2.0 * sd_a * sd_b + k.c2) / c_den;
    let structure = (cov + k.c3) / (sd_a * sd_b + k.c3);
    Ok(Ssim {
        ssim: luminance * contrast * structure,
        luminance,
        contrast,
        structure,
    })
}

pub fn mse(a: &NormImage, b: &NormImage, roi: Option<&RoiSpec>) -> Result<f64, MetricsError> {
    let (pairs, _) = region(a, b, roi)?;
    Ok(mse_of(&pairs))
}

/// Peak signal-to-noise ratio in dB; `f64::INFINITY` when the images agree.
pub fn psnr(a: &NormImage, b: &NormImage, roi: Option<&RoiSpec>) -> Result<f64, MetricsError> {
    mse(a, b, roi).map(psnr_of_mse)
}

pub fn ssim(a: &NormImage, b: &NormImage, k: &SsimConstants, roi: Option<&RoiSpec>) -> Result<Ssim, MetricsError> {
    ssim_with_form(a, b, k, roi, SsimForm::Standard)
}

pub fn ssim_with_form(
    a: &NormImage,
    b: &NormImage,
    k: &SsimConstants,
    roi: Option<&RoiSpec>,
    form: SsimForm,
) -> Result<Ssim, MetricsError> {
    let (pairs, _) = region(a, b, roi)?;
    ssim_of(&pairs, k, form)
}

/// PSNR predicted from SSIM and the covariance of two 8-bit images:
/// `10 log10(255^2 / (2 cov)) + 10 log10(ssim / (1 - ssim))`.
///
/// Diagnostic only; `covariance` is on the 0-255 scale.
pub fn psnr_from_ssim(ssim_value: f64, covariance: f64) -> Result<f64, MetricsError> {
    if !(ssim_value > 0.0 && ssim_value < 1.0) {
        return Err(MetricsError::Domain("ssim must lie strictly inside (0, 1)"));
    }
    if !(covariance > 0.0) {
        return Err(MetricsError::Domain("covariance must be positive"));
    }
    Ok(10.0 * (255.0f64 * 255.0 / (2.0 * covariance)).log10()
        + 10.0 * (ssim_value / (1.0 - ssim_value)).log10())
}

/// Normalizes both images and computes every metric over the same region.
pub fn evaluate(
    reference: &GrayImage,
    distorted: &GrayImage,
    roi: Option<&RoiSpec>,
    k: &SsimConstants,
) -> Result<QualityReport, MetricsError> {
    evaluate_with_form(reference, distorted, roi, k, SsimForm::Standard)
}

pub fn evaluate_with_form(
    reference: &GrayImage,
    distorted: &GrayImage,
    roi: Option<&RoiSpec>,
    k: &SsimConstants,
    form: SsimForm,
) -> Result<QualityReport, MetricsError> {
    let a = normalize(reference);
    let b = normalize(distorted);
    let (pairs, roi) = region(&a, &b, roi)?;
    let mse = mse_of(&pairs);
    let s = ssim_of(&pairs, k, form)?;
    Ok(QualityReport {
        mse,
        psnr_db: psnr_of_mse(mse),
        ssim: s.ssim,
        ssim_l: s.luminance,
        ssim_c: s.contrast,
        ssim_s: s.structure,
        roi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(w: usize, h: usize, v: &[f64]) -> NormImage {
        NormImage::new(w, h, v.to_vec()).unwrap()
    }

    #[test]
    fn mse_cases() {
        let z = norm(2, 2, &[0.0; 4]);
        let o = norm(2, 2, &[1.0; 4]);
        assert_eq!(mse(&z, &z, None).unwrap(), 0.0);
        assert_eq!(mse(&z, &o, None).unwrap(), 1.0);
        let b = norm(2, 2, &[0.5, 0.0, 0.0, 0.0]);
        assert_eq!(mse(&z, &b, None).unwrap(), 0.0625);
        assert!(matches!(
            mse(&z, &norm(4, 1, &[0.0; 4]), None),
            Err(MetricsError::DimensionMismatch(2, 2, 4, 1))
        ));
    }

    #[test]
    fn psnr_cases() {
        assert_eq!(psnr_of_mse(0.01), 20.0);
        assert_eq!(psnr_of_mse(1.0), 0.0);
        let z = norm(2, 1, &[0.3, 0.6]);
        let p = psnr(&z, &z, None).unwrap();
        assert!(p.is_infinite() && p > 0.0);
    }

    #[test]
    fn ssim_identity_and_constants() {
        let k = SsimConstants::default();
        let a = norm(3, 1, &[0.1, 0.5, 0.9]);
        let s = ssim(&a, &a, &k, None).unwrap();
        assert!((s.ssim - 1.0).abs() < 1e-15);
        assert!((s.luminance - 1.0).abs() < 1e-15);
        assert!((s.contrast - 1.0).abs() < 1e-15);
        assert!((s.structure - 1.0).abs() < 1e-15);
        let c = norm(2, 2, &[0.5; 4]);
        assert_eq!(ssim(&c, &c, &k, None).unwrap().ssim, 1.0);
    }

    #[test]
    fn anti_correlated_checkerboard() {
        let k = SsimConstants::default();
        let a = norm(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let b = norm(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        let s = ssim(&a, &b, &k, None).unwrap();
        // sd = 0.5 each, cov = -0.25: s = (-0.25 + c3) / (0.25 + c3)
        let expected = (-0.25 + k.c3) / (0.25 + k.c3);
        assert!((s.structure - expected).abs() < 1e-15);
        assert!(s.structure < 0.0 && s.ssim < 0.0);
        assert!((s.luminance - 1.0).abs() < 1e-15);
    }

    #[test]
    fn literal_form_differs_from_standard() {
        let k = SsimConstants::default();
        let a = norm(2, 2, &[0.2, 0.4, 0.6, 0.8]);
        let b = norm(2, 2, &[0.1, 0.4, 0.5, 0.9]);
        let std = ssim_with_form(&a, &b, &k, None, SsimForm::Standard).unwrap();
        let lit = ssim_with_form(&a, &b, &k, None, SsimForm::Literal).unwrap();
        assert_eq!(std.structure, lit.structure);
        let (ma, mb) = (0.5, 0.475);
        assert!((lit.luminance - (2.0 * ma * mb + k.c1) / (ma + mb + k.c1)).abs() < 1e-12);
        assert!(std.luminance != lit.luminance);
    }

    #[test]
    fn ssim_needs_two_pixels() {
        let a = norm(3, 3, &[0.5; 9]);
        let roi = RoiSpec::Circle {
            center_x: 1,
            center_y: 1,
            radius: 0,
        };
        assert_eq!(
            ssim(&a, &a, &SsimConstants::default(), Some(&roi)),
            Err(MetricsError::DegenerateRegion)
        );
    }

    #[test]
    fn psnr_from_ssim_values() {
        let v = psnr_from_ssim(0.9, 100.0).unwrap();
        let expected = 10.0 * (65025.0f64 / 200.0).log10() + 10.0 * 9.0f64.log10();
        assert!((v - expected).abs() < 1e-12);
        assert!((v - 34.66).abs() < 0.01);
        assert_eq!(
            psnr_from_ssim(0.5, 100.0).unwrap(),
            10.0 * (65025.0f64 / 200.0).log10()
        );
        assert!(psnr_from_ssim(0.999_999, 100.0).unwrap() > psnr_from_ssim(0.99, 100.0).unwrap());
        assert!(psnr_from_ssim(1.0, 100.0).is_err());
        assert!(psnr_from_ssim(0.0, 100.0).is_err());
        assert!(psnr_from_ssim(0.5, 0.0).is_err());
    }

    #[test]
    fn roi_restricts_sums() {
        let a = GrayImage::new(3, 1, vec![0, 0, 0]).unwrap();
        let b = GrayImage::new(3, 1, vec![0, 0, 255]).unwrap();
        let roi = RoiSpec::Rectangle {
            row_lo: 0,
            row_hi: 0,
            col_lo: 0,
            col_hi: 1,
        };
        let k = SsimConstants::default();
        let r = evaluate(&a, &b, Some(&roi), &k).unwrap();
        assert_eq!(r.mse, 0.0);
        assert!(r.psnr_db.is_infinite());
        assert_eq!(r.roi, Some(roi));
        let full = evaluate(&a, &b, None, &k).unwrap();
        assert!((full.mse - 1.0 / 3.0).abs() < 1e-15);
    }
}
