//! Full- and reduced-reference quality of a distorted image, as text, JSON
//! and CSV.
//!
//!     cargo run --example quality_report -- [reference.pgm]

use std::path::PathBuf;

use gneighbor::imaging::add_salt_pepper;
use gneighbor::metrics::{evaluate_with_form, write_reports_csv, SsimForm};
use gneighbor::{evaluate, filter_image, load_pgm, FilterConfig, NoiseSpec, RoiSpec, SsimConstants};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/corpus/coins.pgm"));
    let reference = load_pgm(&std::fs::read(path)?)?;
    let distorted = filter_image(
        &add_salt_pepper(&reference, NoiseSpec::new(0.05, 7)?),
        &FilterConfig::default(),
    );

    let (w, h) = (reference.width(), reference.height());
    let regions = [
        None,
        Some(RoiSpec::Circle {
            center_x: w as i64 / 2,
            center_y: h as i64 / 2,
            radius: (w.min(h) / 4) as u64,
        }),
        Some(RoiSpec::Rectangle {
            row_lo: 0,
            row_hi: h / 2,
            col_lo: 0,
            col_hi: w / 2,
        }),
    ];

    let k = SsimConstants::default();
    let mut reports = Vec::new();
    for roi in &regions {
        let q = evaluate(&reference, &distorted, roi.as_ref(), &k)?;
        let label = roi.map_or("full image".to_string(), |r| r.to_string());
        println!("{label:<24} psnr {:>6.2} dB  ssim {:.4}", q.psnr_db, q.ssim);
        reports.push(q);
    }

    // the unsquared luminance/contrast variant, for comparison
    let literal = evaluate_with_form(&reference, &distorted, None, &k, SsimForm::Literal)?;
    println!("literal-form ssim        {:.4}", literal.ssim);

    println!("\n{}", reports[1].to_json());
    println!();
    write_reports_csv(std::io::stdout().lock(), &reports)?;
    Ok(())
}
