//! Threshold sweeps: noise a corpus once, filter it at every threshold on a
//! grid and tabulate the quality metrics.

use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gfilter::{filter_image, threshold_from_norm, Aggregator, FilterConfig, FilterError};
use crate::imaging::{add_salt_pepper, load_pgm, GrayImage, NoiseSpec, PaddingMode};
use crate::metrics::{evaluate, SsimConstants};

/// Environment variable naming the default corpus directory.
pub const CORPUS_ENV: &str = "GNEIGHBOR_CORPUS";

/// Image column value marking per-threshold summary rows.
pub const SUMMARY_LABEL: &str = "__mean__";

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep range: lo {lo}, hi {hi}, step {step}")]
    InvalidRange { lo: f64, hi: f64, step: f64 },
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error(transparent)]
    Filter(#[from] FilterError),
}

/// Sweep grid on the unit threshold scale plus the filter and noise settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub threshold_lo: f64,
    pub threshold_hi: f64,
    pub threshold_step: f64,
    pub noise: NoiseSpec,
    pub window: usize,
    pub aggregator: Aggregator,
    pub padding: PaddingMode,
}

impl Default for SweepSpec {
    /// 0 to 0.3 in steps of 0.01, 3x3 adaptive mean, 5% salt and pepper.
    fn default() -> Self {
        Self {
            threshold_lo: 0.0,
            threshold_hi: 0.3,
            threshold_step: 0.01,
            noise: NoiseSpec::default(),
            window: 3,
            aggregator: Aggregator::Mean,
            padding: PaddingMode::Zero,
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SweepError> {
        let (lo, hi, step) = (self.threshold_lo, self.threshold_hi, self.threshold_step);
        if !(0.0 <= lo && lo <= hi && hi <= 1.0 && step > 0.0) {
            return Err(SweepError::InvalidRange { lo, hi, step });
        }
        FilterConfig::new(self.window, 0)?;
        Ok(())
    }

    /// Grid points `lo + i * step` up to `hi`, tolerant of float drift.
    pub fn thresholds(&self) -> Vec<f64> {
        let span = (self.threshold_hi - self.threshold_lo) / self.threshold_step;
        let n = (span + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|i| self.threshold_lo + i as f64 * self.threshold_step)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub threshold: f64,
    pub eta: u8,
    pub image: String,
    pub mse: f64,
    pub psnr_db: f64,
    pub ssim: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub threshold: f64,
    pub eta: u8,
    pub mean_mse: f64,
    pub mean_psnr_db: f64,
    pub mean_ssim: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    pub summaries: Vec<SweepSummary>,
}

impl SweepTable {
    /// Threshold with the highest mean PSNR; the first one wins ties.
    pub fn argmax_psnr(&self) -> Option<&SweepSummary> {
        self.summaries.iter().fold(None, |best: Option<&SweepSummary>, s| match best {
            Some(b) if b.mean_psnr_db >= s.mean_psnr_db => Some(b),
            _ => Some(s),
        })
    }

    pub fn summary_at(&self, threshold: f64) -> Option<&SweepSummary> {
        self.summaries
            .iter()
            .find(|s| (s.threshold - threshold).abs() < 1e-9)
    }

    /// `threshold,image,mse,psnr_db,ssim`; each threshold's data rows are
    /// followed by one summary row labelled [`SUMMARY_LABEL`].
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["threshold", "image", "mse", "psnr_db", "ssim"])?;
        for s in &self.summaries {
            for r in self.rows.iter().filter(|r| r.threshold == s.threshold) {
                w.write_record([
                    format!("{:.4}", r.threshold),
                    r.image.clone(),
                    r.mse.to_string(),
                    crate::metrics::report::format_db(r.psnr_db),
                    r.ssim.to_string(),
                ])?;
            }
            w.write_record([
                format!("{:.4}", s.threshold),
                SUMMARY_LABEL.to_string(),
                s.mean_mse.to_string(),
                crate::metrics::report::format_db(s.mean_psnr_db),
                s.mean_ssim.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn run_sweep(spec: &SweepSpec, corpus: &[(String, GrayImage)]) -> Result<SweepTable, SweepError> {
    spec.validate()?;
    if corpus.is_empty() {
        return Err(SweepError::EmptyCorpus);
    }
    let k = SsimConstants::default();
    let noisy: Vec<GrayImage> = corpus
        .par_iter()
        .map(|(_, img)| add_salt_pepper(img, spec.noise))
        .collect();

    let thresholds = spec.thresholds();
    let grid: Vec<(f64, u8)> = thresholds
        .iter()
        .map(|&t| threshold_from_norm(t).map(|eta| (t, eta)))
        .collect::<Result<_, _>>()?;

    let jobs: Vec<(usize, usize)> = (0..grid.len())
        .flat_map(|ti| (0..corpus.len()).map(move |ii| (ti, ii)))
        .collect();
    let rows: Vec<SweepRow> = jobs
        .par_iter()
        .map(|&(ti, ii)| {
            let (t, eta) = grid[ti];
            let cfg = FilterConfig::new(spec.window, eta)
                .expect("window validated")
                .with_aggregator(spec.aggregator)
                .with_padding(spec.padding);
            let out = filter_image(&noisy[ii], &cfg);
            let q = evaluate(&corpus[ii].1, &out, None, &k).expect("filter preserves dimensions");
            SweepRow {
                threshold: t,
                eta,
                image: corpus[ii].0.clone(),
                mse: q.mse,
                psnr_db: q.psnr_db,
                ssim: q.ssim,
            }
        })
        .collect();

    let n = corpus.len() as f64;
    let summaries = grid
        .iter()
        .enumerate()
        .map(|(ti, &(threshold, eta))| {
            let group = &rows[ti * corpus.len()..(ti + 1) * corpus.len()];
            SweepSummary {
                threshold,
                eta,
                mean_mse: group.iter().map(|r| r.mse).sum::<f64>() / n,
                mean_psnr_db: group.iter().map(|r| r.psnr_db).sum::<f64>() / n,
                mean_ssim: group.iter().map(|r| r.ssim).sum::<f64>() / n,
            }
        })
        .collect();
    Ok(SweepTable { rows, summaries })
}

/// Expands directories to their `.pgm` files (sorted by name).
pub fn expand_corpus_paths(paths: &[PathBuf]) -> io::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(p)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x.eq_ignore_ascii_case("pgm")))
                .collect();
            found.sort();
            out.extend(found);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// Loads every readable image. Unreadable entries are returned as warnings.
pub fn load_corpus(paths: &[PathBuf]) -> (Vec<(String, GrayImage)>, Vec<String>) {
    let mut images = Vec::new();
    let mut warnings = Vec::new();
    for p in paths {
        match std::fs::read(p)
            .map_err(|e| e.to_string())
            .and_then(|b| load_pgm(&b).map_err(|e| e.to_string()))
        {
            Ok(img) => images.push((display_name(p), img)),
            Err(e) => warnings.push(format!("skipping {}: {e}", p.display())),
        }
    }
    (images, warnings)
}

fn display_name(p: &Path) -> String {
    p.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| p.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_corpus() -> Vec<(String, GrayImage)> {
        let px: Vec<u8> = (0..64).map(|i| if i % 8 < 4 { 60 } else { 180 }).collect();
        vec![("edge".to_string(), GrayImage::new(8, 8, px).unwrap())]
    }

    #[test]
    fn default_grid_has_31_points() {
        let t = SweepSpec::default().thresholds();
        assert_eq!(t.len(), 31);
        assert_eq!(t[0], 0.0);
        assert!((t[30] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn csv_row_counts() {
        let table = run_sweep(&SweepSpec::default(), &tiny_corpus()).unwrap();
        assert_eq!(table.rows.len(), 31);
        assert_eq!(table.summaries.len(), 31);
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "threshold,image,mse,psnr_db,ssim");
        assert_eq!(lines.iter().filter(|l| l.contains(",edge,")).count(), 31);
        assert_eq!(lines.iter().filter(|l| l.contains(SUMMARY_LABEL)).count(), 31);
        assert!(lines[1].starts_with("0.0000,edge,"));
    }

    #[test]
    fn deterministic() {
        let spec = SweepSpec::default();
        assert_eq!(run_sweep(&spec, &tiny_corpus()).unwrap(), run_sweep(&spec, &tiny_corpus()).unwrap());
    }

    #[test]
    fn validation() {
        let bad = SweepSpec {
            threshold_step: 0.0,
            ..Default::default()
        };
        assert!(matches!(run_sweep(&bad, &tiny_corpus()), Err(SweepError::InvalidRange { .. })));
        let bad = SweepSpec {
            threshold_lo: 0.5,
            threshold_hi: 0.2,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        assert!(matches!(run_sweep(&SweepSpec::default(), &[]), Err(SweepError::EmptyCorpus)));
    }
}
