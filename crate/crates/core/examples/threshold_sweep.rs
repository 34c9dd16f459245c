//! Sweep the similarity threshold over a directory of PGM images and print
//! the per-threshold averages.
//!
//!     cargo run --release --example threshold_sweep -- [corpus_dir]

use std::path::PathBuf;

use gneighbor::sweep::{expand_corpus_paths, load_corpus, run_sweep, SweepSpec};
use gneighbor::NoiseSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/corpus"));
    let (images, warnings) = load_corpus(&expand_corpus_paths(&[dir])?);
    for w in warnings {
        eprintln!("warning: {w}");
    }

    let spec = SweepSpec {
        noise: NoiseSpec::new(0.05, 42)?,
        ..SweepSpec::default()
    };
    let table = run_sweep(&spec, &images)?;

    println!("{} images", images.len());
    println!("{:>9} {:>4} {:>9} {:>7}", "threshold", "eta", "psnr_db", "ssim");
    for s in &table.summaries {
        println!("{:>9.2} {:>4} {:>9.3} {:>7.4}", s.threshold, s.eta, s.mean_psnr_db, s.mean_ssim);
    }
    if let Some(best) = table.argmax_psnr() {
        println!("best mean PSNR at threshold {:.2} (eta {})", best.threshold, best.eta);
    }
    Ok(())
}
