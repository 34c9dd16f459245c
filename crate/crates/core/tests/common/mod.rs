//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use gneighbor::imaging::load_pgm;
use gneighbor::GrayImage;

/// Brute-force G-neighbor filter written straight from the algorithm
/// description. Shares no code with the library (no padding helper, no mask
/// type).
pub fn oracle(img: &GrayImage, w: usize, eta: u8, xor: bool, median: bool, adaptive: bool, replicate: bool) -> Vec<u8> {
    let (width, height) = (img.width() as i64, img.height() as i64);
    let r = (w / 2) as i64;
    let fetch = |x: i64, y: i64| -> i64 {
        if x >= 0 && y >= 0 && x < width && y < height {
            img.pixels()[(y * width + x) as usize] as i64
        } else if replicate {
            let cx = x.clamp(0, width - 1);
            let cy = y.clamp(0, height - 1);
            img.pixels()[(cy * width + cx) as usize] as i64
        } else {
            0
        }
    };
    let mut out = Vec::new();
    for y in 0..height {
        for x in 0..width {
            let c = fetch(x, y);
            let mut vals = Vec::new();
            for dy in -r..=r {
                for dx in -r..=r {
                    let v = fetch(x + dx, y + dy);
                    let d = if xor { c ^ v } else { (c - v).abs() };
                    if !adaptive || d <= eta as i64 {
                        vals.push(v);
                    }
                }
            }
            let n = vals.len() as i64;
            let value = if median {
                vals.sort();
                let m = vals.len() / 2;
                if vals.len() % 2 == 1 {
                    vals[m]
                } else {
                    // half-up rounding of (a + b) / 2
                    (vals[m - 1] + vals[m] + 1) / 2
                }
            } else {
                let s: i64 = vals.iter().sum();
                (2 * s + n) / (2 * n)
            };
            out.push(value.clamp(0, 255) as u8);
        }
    }
    out
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/corpus")
}

/// The bundled grayscale test images, sorted by name.
pub fn corpus() -> Vec<(String, GrayImage)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "pgm"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, load_pgm(&std::fs::read(&p).unwrap()).unwrap())
        })
        .collect()
}
