//! Acceptance suite. Every criterion prints exactly one line,
//! `[criterion NN] PASS|FAIL <name> - <details>`, and then asserts.
//!
//! Denoising criteria use the bundled corpus (six grayscale images), 5 %
//! salt-and-pepper noise seeded with 42.

mod common;

use std::time::{Duration, Instant};

use gneighbor::hwsim::{
    compare_leq, mtl_eval, pipeline_pixel, run_hwreport, xor_word, BitWord, Crossbar, CrossbarParams, LogicLevels,
    MtlCell,
};
use gneighbor::imaging::add_salt_pepper;
use gneighbor::sweep::{run_sweep, SweepSpec};
use gneighbor::{
    evaluate, filter_image, square_filter, Aggregator, DistanceMode, FilterConfig, GrayImage, NoiseSpec,
    PaddingMode, QualityReport, RoiSpec, SsimConstants,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NOISE_DENSITY: f64 = 0.05;
const NOISE_SEED: u64 = 42;
const ETA: u8 = 13;

fn report(id: u32, name: &str, pass: bool, elapsed: Duration, limit: Duration, details: &str) {
    let timed_ok = elapsed <= limit;
    let verdict = if pass && timed_ok { "PASS" } else { "FAIL" };
    println!(
        "[criterion {id:02}] {verdict} {name} - {details} ({:.2}s, limit {}s)",
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    assert!(pass, "criterion {id} failed: {details}");
    assert!(timed_ok, "criterion {id} exceeded {}s", limit.as_secs());
}

fn noisy_corpus() -> Vec<(String, GrayImage, GrayImage)> {
    let spec = NoiseSpec::new(NOISE_DENSITY, NOISE_SEED).unwrap();
    common::corpus()
        .into_iter()
        .map(|(name, img)| {
            let noisy = add_salt_pepper(&img, spec);
            (name, img, noisy)
        })
        .collect()
}

fn adaptive_mean() -> FilterConfig {
    FilterConfig::new(3, ETA).unwrap().with_aggregator(Aggregator::Mean)
}

struct Averages {
    mse: f64,
    psnr: f64,
    ssim: f64,
}

fn averages(reports: &[QualityReport]) -> Averages {
    let n = reports.len() as f64;
    Averages {
        mse: reports.iter().map(|r| r.mse).sum::<f64>() / n,
        psnr: reports.iter().map(|r| r.psnr_db).sum::<f64>() / n,
        ssim: reports.iter().map(|r| r.ssim).sum::<f64>() / n,
    }
}

/// Per-image (adaptive, square) reports, optionally over a centered circle.
fn adaptive_vs_square(with_roi: bool) -> (Vec<QualityReport>, Vec<QualityReport>) {
    let k = SsimConstants::default();
    let mut adaptive = Vec::new();
    let mut square = Vec::new();
    for (_, clean, noisy) in noisy_corpus() {
        let roi = with_roi.then(|| RoiSpec::Circle {
            center_x: clean.width() as i64 / 2,
            center_y: clean.height() as i64 / 2,
            radius: (clean.width().min(clean.height()) / 4) as u64,
        });
        let a = filter_image(&noisy, &adaptive_mean());
        let s = square_filter(&noisy, 3, Aggregator::Mean, PaddingMode::Zero).unwrap();
        adaptive.push(evaluate(&clean, &a, roi.as_ref(), &k).unwrap());
        square.push(evaluate(&clean, &s, roi.as_ref(), &k).unwrap());
    }
    (adaptive, square)
}

#[test]
fn criterion_01_mtl_truth_table() {
    let t = Instant::now();
    let levels = LogicLevels::default();
    let (nor, nand) = (MtlCell::nor(2, levels), MtlCell::nand(2, levels));
    // V1, V2, NOR, NAND
    let rows = [
        (false, false, true, true),
        (false, true, false, true),
        (true, false, false, true),
        (true, true, false, false),
    ];
    let mismatches = rows
        .iter()
        .filter(|&&(a, b, o_nor, o_nand)| mtl_eval(&nor, &[a, b]) != o_nor || mtl_eval(&nand, &[a, b]) != o_nand)
        .count();
    report(
        1,
        "mtl truth table",
        mismatches == 0,
        t.elapsed(),
        Duration::from_secs(1),
        &format!("{mismatches} of 4 rows differ"),
    );
}

#[test]
fn criterion_02_xor_equivalence() {
    let t = Instant::now();
    let mut wrong = 0u32;
    for a in 0..256u64 {
        let wa = BitWord::from_uint(a, 8);
        for b in 0..256u64 {
            if xor_word(&wa, &BitWord::from_uint(b, 8)).unwrap().to_uint() != a ^ b {
                wrong += 1;
            }
        }
    }
    report(
        2,
        "xor-tlg equivalence",
        wrong == 0,
        t.elapsed(),
        Duration::from_secs(10),
        &format!("{wrong} of 65536 pairs differ"),
    );
}

#[test]
fn criterion_03_comparator_equivalence() {
    let t = Instant::now();
    let mut wrong = 0u32;
    let mut cases = 0u32;
    for width in [4usize, 8] {
        let n = 1u64 << width;
        for d in 0..n {
            let wd = BitWord::from_uint(d, width);
            for g in 0..n {
                cases += 1;
                if compare_leq(&wd, &BitWord::from_uint(g, width)).unwrap() != (d <= g) {
                    wrong += 1;
                }
            }
        }
    }
    let sample = compare_leq(&"0111".parse().unwrap(), &"1101".parse().unwrap()).unwrap();
    report(
        3,
        "comparator equivalence",
        wrong == 0 && cases == 256 + 65536 && sample,
        t.elapsed(),
        Duration::from_secs(10),
        &format!("{wrong} of {cases} pairs differ; 0111 <= 1101 -> {}", sample as u8),
    );
}

#[test]
fn criterion_04_crossbar_round_trip() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut xbar = Crossbar::new(8, 8, CrossbarParams::default()).unwrap();
    let (mut bad_reads, mut disturbed_cycles, mut cycles) = (0, 0, 0);
    for _ in 0..1000 {
        let m: Vec<Vec<bool>> = (0..8).map(|_| (0..8).map(|_| rng.random()).collect()).collect();
        for (row, bits) in m.iter().enumerate() {
            let before = xbar.states();
            let [set, reset] = xbar.write_row(row, bits).unwrap();
            cycles += 2;
            disturbed_cycles += (set.disturbed > 0) as u32 + (reset.disturbed > 0) as u32;
            // rows other than the selected one keep their values
            let after = xbar.states();
            for r in (0..8).filter(|&r| r != row) {
                if before[r * 8..r * 8 + 8] != after[r * 8..r * 8 + 8] {
                    disturbed_cycles += 1;
                }
            }
        }
        if xbar.read_all() != m {
            bad_reads += 1;
        }
    }
    report(
        4,
        "crossbar round trip",
        bad_reads == 0 && disturbed_cycles == 0,
        t.elapsed(),
        Duration::from_secs(30),
        &format!("{bad_reads} of 1000 readbacks differ; {disturbed_cycles} of {cycles} cycles disturbed"),
    );
}

#[test]
fn criterion_05_pipeline_theorem() {
    let t = Instant::now();
    let mut wrong = 0u32;
    for g in [0u8, 13, 255] {
        for r in 0..=255u8 {
            for n in 0..=255u8 {
                if pipeline_pixel(r, n, g) != ((r ^ n) <= g) {
                    wrong += 1;
                }
            }
        }
    }
    report(
        5,
        "end-to-end pipeline",
        wrong == 0,
        t.elapsed(),
        Duration::from_secs(120),
        &format!("{wrong} of 196608 cases differ"),
    );
}

#[test]
fn criterion_06_filter_oracle() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut wrong, mut runs) = (0u32, 0u32);
    for _ in 0..100 {
        let px: Vec<u8> = (0..64).map(|_| rng.random()).collect();
        let img = GrayImage::new(8, 8, px).unwrap();
        for w in [3, 5] {
            for eta in [0u8, 13, 255] {
                for xor in [false, true] {
                    for median in [false, true] {
                        let cfg = FilterConfig::new(w, eta)
                            .unwrap()
                            .with_distance(if xor { DistanceMode::Xor } else { DistanceMode::Abs })
                            .with_aggregator(if median { Aggregator::Median } else { Aggregator::Mean });
                        runs += 1;
                        if filter_image(&img, &cfg).pixels() != &common::oracle(&img, w, eta, xor, median, true, false)[..] {
                            wrong += 1;
                        }
                    }
                }
            }
        }
    }
    report(
        6,
        "filter oracle equivalence",
        wrong == 0,
        t.elapsed(),
        Duration::from_secs(60),
        &format!("{wrong} of {runs} filtered images differ"),
    );
}

#[test]
fn criterion_07_denoising_improvement() {
    let t = Instant::now();
    let (adaptive, square) = adaptive_vs_square(false);
    let n = adaptive.len();
    let mse_reduction =
        adaptive.iter().zip(&square).map(|(a, s)| 1.0 - a.mse / s.mse).sum::<f64>() / n as f64;
    let (a, s) = (averages(&adaptive), averages(&square));
    let pass = n >= 5 && mse_reduction >= 0.50 && a.psnr - s.psnr >= 3.0 && a.ssim - s.ssim >= 0.10;
    report(
        7,
        "denoising improvement",
        pass,
        t.elapsed(),
        Duration::from_secs(60),
        &format!(
            "{n} images; MSE reduction {:.1}% (need >= 50%); PSNR {:.2} -> {:.2} dB, gain {:.2} (need >= 3); SSIM {:.4} -> {:.4}, gain {:.4} (need >= 0.10)",
            100.0 * mse_reduction,
            s.psnr,
            a.psnr,
            a.psnr - s.psnr,
            s.ssim,
            a.ssim,
            a.ssim - s.ssim
        ),
    );
}

#[test]
fn criterion_08_reduced_reference_ordering() {
    let t = Instant::now();
    let (adaptive, square) = adaptive_vs_square(true);
    let (a, s) = (averages(&adaptive), averages(&square));
    let pass = a.mse < s.mse && a.psnr > s.psnr && a.ssim > s.ssim;
    report(
        8,
        "reduced-reference ordering",
        pass,
        t.elapsed(),
        Duration::from_secs(60),
        &format!(
            "centered circle, r = min(w,h)/4; MSE {:.6} vs {:.6}, PSNR {:.2} vs {:.2} dB, SSIM {:.4} vs {:.4} (adaptive vs square)",
            a.mse, s.mse, a.psnr, s.psnr, a.ssim, s.ssim
        ),
    );
}

#[test]
fn criterion_09_threshold_sweep_shape() {
    let t = Instant::now();
    let spec = SweepSpec {
        noise: NoiseSpec::new(NOISE_DENSITY, NOISE_SEED).unwrap(),
        ..SweepSpec::default()
    };
    let table = run_sweep(&spec, &common::corpus()).unwrap();
    let best = table.argmax_psnr().unwrap();
    let at_05 = table.summary_at(0.05).unwrap().mean_psnr_db;
    let at_30 = table.summary_at(0.30).unwrap().mean_psnr_db;
    let in_band = (0.03 - 1e-9..=0.11 + 1e-9).contains(&best.threshold);
    report(
        9,
        "threshold sweep shape",
        in_band && at_05 - at_30 >= 2.0,
        t.elapsed(),
        Duration::from_secs(300),
        &format!(
            "argmax {:.2} ({:.2} dB, need 0.03..=0.11); PSNR(0.05) - PSNR(0.30) = {:.2} dB (need >= 2)",
            best.threshold,
            best.mean_psnr_db,
            at_05 - at_30
        ),
    );
}

#[test]
fn criterion_10_metric_identities() {
    let t = Instant::now();
    let k = SsimConstants::default();
    let mut problems = Vec::new();
    for (name, img) in common::corpus() {
        let q = evaluate(&img, &img, None, &k).unwrap();
        if q.mse != 0.0 || q.psnr_db != f64::INFINITY || q.ssim != 1.0 {
            problems.push(format!("{name}: identity gives {q:?}"));
        }
        let noisy = add_salt_pepper(&img, NoiseSpec::new(0.1, 1).unwrap());
        let full = RoiSpec::Rectangle {
            row_lo: 0,
            row_hi: img.height() - 1,
            col_lo: 0,
            col_hi: img.width() - 1,
        };
        let plain = evaluate(&img, &noisy, None, &k).unwrap();
        let roi = evaluate(&img, &noisy, Some(&full), &k).unwrap();
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-12;
        if !(close(plain.mse, roi.mse)
            && close(plain.psnr_db, roi.psnr_db)
            && close(plain.ssim, roi.ssim)
            && close(plain.ssim_l, roi.ssim_l)
            && close(plain.ssim_c, roi.ssim_c)
            && close(plain.ssim_s, roi.ssim_s))
        {
            problems.push(format!("{name}: full-image ROI differs from no ROI"));
        }
    }
    report(
        10,
        "metric identities",
        problems.is_empty(),
        t.elapsed(),
        Duration::from_secs(10),
        &if problems.is_empty() {
            "MSE 0, PSNR inf, SSIM 1 on every image; full ROI == no ROI".to_string()
        } else {
            problems.join("; ")
        },
    );
}

#[test]
fn criterion_11_area_power_ledger() {
    let t = Instant::now();
    let r = run_hwreport();
    report(
        11,
        "area/power ledger",
        r.total_area_um2 == 280.2 && r.total_power_mw == 31.4,
        t.elapsed(),
        Duration::from_secs(1),
        &format!("{} um^2, {} mW", r.total_area_um2, r.total_power_mw),
    );
}
