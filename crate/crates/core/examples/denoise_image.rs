//! Corrupt an image with salt-and-pepper noise, then clean it with the
//! G-neighbor filter and with a plain square window.
//!
//!     cargo run --example denoise_image -- [input.pgm] [out_dir]

use std::path::PathBuf;

use gneighbor::{
    evaluate, filter_image, load_pgm, save_pgm, square_filter, Aggregator, FilterConfig, NoiseSpec, PaddingMode,
    SsimConstants,
};
use gneighbor::imaging::add_salt_pepper;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let input = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/corpus/camera.pgm"));
    let out_dir = args.next().map(PathBuf::from).unwrap_or_else(std::env::temp_dir);

    let clean = load_pgm(&std::fs::read(&input)?)?;
    let noisy = add_salt_pepper(&clean, NoiseSpec::new(0.05, 42)?);

    let k = SsimConstants::default();
    let candidates = [
        ("noisy", noisy.clone()),
        ("gneighbor-mean", filter_image(&noisy, &FilterConfig::new(3, 13)?)),
        (
            "gneighbor-median",
            filter_image(&noisy, &FilterConfig::new(3, 13)?.with_aggregator(Aggregator::Median)),
        ),
        ("square-mean", square_filter(&noisy, 3, Aggregator::Mean, PaddingMode::Zero)?),
        ("square-median", square_filter(&noisy, 3, Aggregator::Median, PaddingMode::Zero)?),
    ];

    println!("{:<18} {:>10} {:>9} {:>7}", "image", "mse", "psnr_db", "ssim");
    for (name, img) in &candidates {
        let q = evaluate(&clean, img, None, &k)?;
        println!("{name:<18} {:>10.6} {:>9.2} {:>7.4}", q.mse, q.psnr_db, q.ssim);
        std::fs::write(out_dir.join(format!("{name}.pgm")), save_pgm(img, true))?;
    }
    println!("images written to {}", out_dir.display());
    Ok(())
}
