//! Command-line frontend. The binary only parses arguments and calls [`run`].

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::gfilter::{
    filter_image, threshold_from_int, threshold_from_norm, Aggregator, DistanceMode, FilterConfig, FilterError,
};
use crate::hwsim::AreaPowerLedger;
use crate::imaging::{add_salt_pepper, load_pgm, save_pgm, GrayImage, ImageError, NoiseSpec, PaddingMode, PgmError};
use crate::metrics::{evaluate_with_form, write_reports_csv, MetricsError, RoiSpec, SsimConstants, SsimForm};
use crate::sweep::{expand_corpus_paths, load_corpus, run_sweep, SweepError, SweepSpec, CORPUS_ENV};
use crate::verify::{run_hwverify, VerifyError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Pgm {
        path: PathBuf,
        #[source]
        source: PgmError,
    },
    #[error(transparent)]
    Image(#[from] ImageError),
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "gneighbor", version, about = "G-neighbor denoising, quality metrics and hardware simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Add salt-and-pepper noise to a PGM image.
    Noise(NoiseArgs),
    /// Filter a PGM image with the adaptive or square filter.
    Denoise(DenoiseArgs),
    /// Compare a distorted image against a reference.
    Evaluate(EvaluateArgs),
    /// Sweep the similarity threshold over a corpus.
    Sweep(SweepArgs),
    /// Check the gate-level hardware model against integer arithmetic.
    HwVerify(HwVerifyArgs),
    /// Print the area and power ledger.
    HwReport(HwReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterKind {
    Mean,
    Median,
}

impl From<FilterKind> for Aggregator {
    fn from(k: FilterKind) -> Self {
        match k {
            FilterKind::Mean => Aggregator::Mean,
            FilterKind::Median => Aggregator::Median,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistanceKind {
    Abs,
    Xor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PaddingKind {
    Zero,
    Replicate,
}

#[derive(Debug, Args)]
pub struct NoiseArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long = "out")]
    pub output: PathBuf,
    #[arg(long, default_value_t = NoiseSpec::DEFAULT_DENSITY)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write P2 instead of P5.
    #[arg(long)]
    pub ascii: bool,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    /// Similarity threshold on the 0-255 scale.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "threshold_norm")]
    pub threshold: Option<i64>,
    /// Similarity threshold on the 0-1 scale, mapped with round(t * 255).
    #[arg(long)]
    pub threshold_norm: Option<f64>,
}

impl ThresholdArgs {
    fn resolve(&self) -> Result<u8, FilterError> {
        match (self.threshold, self.threshold_norm) {
            (Some(t), _) => threshold_from_int(t),
            (None, Some(t)) => threshold_from_norm(t),
            (None, None) => Ok(FilterConfig::DEFAULT_THRESHOLD),
        }
    }
}

#[derive(Debug, Args)]
pub struct DenoiseArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long = "out")]
    pub output: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub window: usize,
    #[command(flatten)]
    pub threshold: ThresholdArgs,
    #[arg(long, value_enum, default_value_t = FilterKind::Mean)]
    pub filter: FilterKind,
    /// G-neighbor mask (true) or full square window (false).
    #[arg(long, num_args = 0..=1, default_value_t = true, default_missing_value = "true", action = ArgAction::Set)]
    pub adaptive: bool,
    #[arg(long, value_enum, default_value_t = DistanceKind::Abs)]
    pub distance: DistanceKind,
    #[arg(long, value_enum, default_value_t = PaddingKind::Zero)]
    pub padding: PaddingKind,
    #[arg(long)]
    pub ascii: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub reference: PathBuf,
    #[arg(long)]
    pub distorted: PathBuf,
    /// Circular region `CX,CY,R` (column, row, radius).
    #[arg(long, value_parser = parse_circle, conflicts_with = "roi_rect")]
    pub roi_circle: Option<RoiSpec>,
    /// Rectangular region `ROW_LO,ROW_HI,COL_LO,COL_HI`, inclusive.
    #[arg(long, value_parser = parse_rect)]
    pub roi_rect: Option<RoiSpec>,
    /// Use the unsquared luminance/contrast denominators.
    #[arg(long)]
    pub literal_ssim: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Images or directories of `.pgm` files. Defaults to the directory in
    /// the environment variable named by `CORPUS_ENV`.
    #[arg(long, num_args = 1..)]
    pub corpus: Vec<PathBuf>,
    #[arg(long, default_value_t = 0.0)]
    pub lo: f64,
    #[arg(long, default_value_t = 0.3)]
    pub hi: f64,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    #[arg(long, default_value_t = NoiseSpec::DEFAULT_DENSITY)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub window: usize,
    #[arg(long, value_enum, default_value_t = FilterKind::Mean)]
    pub filter: FilterKind,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct HwVerifyArgs {
    #[arg(long, default_value_t = 8)]
    pub bits: usize,
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct HwReportArgs {
    /// Number of identification units; totals scale linearly.
    #[arg(long, default_value_t = 1)]
    pub pixels: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn parse_ints<const N: usize>(s: &str) -> Result<[i64; N], String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<i64>| format!("expected {N} comma-separated integers, got {}", v.len()))
}

fn parse_circle(s: &str) -> Result<RoiSpec, String> {
    let [cx, cy, r] = parse_ints::<3>(s)?;
    let radius = u64::try_from(r).map_err(|_| "radius must be non-negative".to_string())?;
    Ok(RoiSpec::Circle {
        center_x: cx,
        center_y: cy,
        radius,
    })
}

fn parse_rect(s: &str) -> Result<RoiSpec, String> {
    let v = parse_ints::<4>(s)?;
    let [row_lo, row_hi, col_lo, col_hi] = v.map(|x| usize::try_from(x).map_err(|_| "indices must be non-negative"));
    Ok(RoiSpec::Rectangle {
        row_lo: row_lo?,
        row_hi: row_hi?,
        col_lo: col_lo?,
        col_hi: col_hi?,
    })
}

fn read_image(path: &Path) -> Result<GrayImage, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    load_pgm(&bytes).map_err(|source| CliError::Pgm {
        path: path.to_path_buf(),
        source,
    })
}

fn write_image(path: &Path, img: &GrayImage, ascii: bool) -> Result<(), CliError> {
    std::fs::write(path, save_pgm(img, !ascii)).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Serialize)]
struct DenoiseEcho<'a> {
    input: &'a Path,
    output: &'a Path,
    window: usize,
    threshold: u8,
    threshold_norm: f64,
    filter: &'static str,
    adaptive: bool,
    distance: &'static str,
    padding: &'static str,
}

/// Builds and validates the filter configuration for `denoise`.
pub fn denoise_config(args: &DenoiseArgs) -> Result<FilterConfig, CliError> {
    let threshold = args.threshold.resolve()?;
    Ok(FilterConfig::new(args.window, threshold)?
        .with_aggregator(args.filter.into())
        .with_adaptive(args.adaptive)
        .with_distance(match args.distance {
            DistanceKind::Abs => DistanceMode::Abs,
            DistanceKind::Xor => DistanceMode::Xor,
        })
        .with_padding(match args.padding {
            PaddingKind::Zero => PaddingMode::Zero,
            PaddingKind::Replicate => PaddingMode::Replicate,
        }))
}

fn run_noise(args: &NoiseArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let spec = NoiseSpec::new(args.density, args.seed)?;
    let img = read_image(&args.input)?;
    write_image(&args.output, &add_salt_pepper(&img, spec), args.ascii)?;
    writeln!(
        out,
        "{}",
        serde_json::json!({
            "input": args.input,
            "output": args.output,
            "density": args.density,
            "seed": args.seed,
        })
    )?;
    Ok(true)
}

fn run_denoise(args: &DenoiseArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let cfg = denoise_config(args)?;
    let img = read_image(&args.input)?;
    write_image(&args.output, &filter_image(&img, &cfg), args.ascii)?;
    let echo = DenoiseEcho {
        input: &args.input,
        output: &args.output,
        window: cfg.window,
        threshold: cfg.threshold,
        threshold_norm: cfg.threshold as f64 / 255.0,
        filter: match cfg.aggregator {
            Aggregator::Mean => "mean",
            Aggregator::Median => "median",
        },
        adaptive: cfg.adaptive,
        distance: match cfg.distance {
            DistanceMode::Abs => "abs",
            DistanceMode::Xor => "xor",
        },
        padding: match cfg.padding {
            PaddingMode::Zero => "zero",
            PaddingMode::Replicate => "replicate",
        },
    };
    writeln!(out, "{}", serde_json::to_string(&echo).expect("echo is serializable"))?;
    Ok(true)
}

fn run_evaluate(args: &EvaluateArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let reference = read_image(&args.reference)?;
    let distorted = read_image(&args.distorted)?;
    let roi = args.roi_circle.or(args.roi_rect);
    let form = if args.literal_ssim {
        SsimForm::Literal
    } else {
        SsimForm::Standard
    };
    let report = evaluate_with_form(&reference, &distorted, roi.as_ref(), &SsimConstants::default(), form)?;
    match args.format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => write_reports_csv(&mut *out, std::slice::from_ref(&report))?,
        Format::Text => {
            writeln!(out, "MSE   {}", report.mse)?;
            writeln!(out, "PSNR  {} dB", crate::metrics::report::format_db(report.psnr_db))?;
            writeln!(
                out,
                "SSIM  {} (l {}, c {}, s {})",
                report.ssim, report.ssim_l, report.ssim_c, report.ssim_s
            )?;
            if let Some(r) = report.roi {
                writeln!(out, "ROI   {r}")?;
            }
        }
    }
    Ok(true)
}

fn run_sweep_cmd(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, CliError> {
    let spec = SweepSpec {
        threshold_lo: args.lo,
        threshold_hi: args.hi,
        threshold_step: args.step,
        noise: NoiseSpec::new(args.density, args.seed)?,
        window: args.window,
        aggregator: args.filter.into(),
        padding: PaddingMode::Zero,
    };
    spec.validate()?;
    let paths = if args.corpus.is_empty() {
        match std::env::var_os(CORPUS_ENV) {
            Some(dir) => vec![PathBuf::from(dir)],
            None => return Err(CliError::Usage(format!("no --corpus given and {CORPUS_ENV} is unset"))),
        }
    } else {
        args.corpus.clone()
    };
    let paths = expand_corpus_paths(&paths).map_err(CliError::Output)?;
    let (images, warnings) = load_corpus(&paths);
    for w in &warnings {
        writeln!(err, "warning: {w}")?;
    }
    let table = run_sweep(&spec, &images)?;
    match args.format {
        Format::Csv => table.write_csv(&mut *out)?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&table).expect("serializable"))?,
        Format::Text => {
            writeln!(out, "{:>9} {:>4} {:>10} {:>10} {:>8}", "threshold", "eta", "mean_mse", "mean_psnr", "mean_ssim")?;
            for s in &table.summaries {
                writeln!(
                    out,
                    "{:>9.4} {:>4} {:>10.6} {:>10.3} {:>8.4}",
                    s.threshold, s.eta, s.mean_mse, s.mean_psnr_db, s.mean_ssim
                )?;
            }
            if let Some(best) = table.argmax_psnr() {
                writeln!(out, "best threshold {:.4} (eta {})", best.threshold, best.eta)?;
            }
        }
    }
    Ok(true)
}

fn run_hwverify_cmd(args: &HwVerifyArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let report = run_hwverify(args.bits, args.exhaustive)?;
    match args.format {
        Format::Text => writeln!(out, "{report}")?,
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => write!(out, "{}", report.to_csv())?,
    }
    Ok(report.all_passed())
}

fn run_hwreport(args: &HwReportArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    if args.pixels == 0 {
        return Err(CliError::Usage("--pixels must be at least 1".into()));
    }
    let report = AreaPowerLedger::memristive_unit().scaled(args.pixels).report();
    match args.format {
        Format::Text => {
            writeln!(out, "{report}")?;
            if args.pixels > 1 {
                writeln!(out, "note: totals scale linearly with unit count ({}), a model assumption", args.pixels)?;
            }
        }
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => write!(out, "{}", report.to_csv())?,
    }
    Ok(true)
}

/// Executes a parsed command. `Ok(false)` means the command ran but found a
/// failure (a hardware counterexample).
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, CliError> {
    match &cli.command {
        Command::Noise(a) => run_noise(a, out),
        Command::Denoise(a) => run_denoise(a, out),
        Command::Evaluate(a) => run_evaluate(a, out),
        Command::Sweep(a) => run_sweep_cmd(a, out, err),
        Command::HwVerify(a) => run_hwverify_cmd(a, out),
        Command::HwReport(a) => run_hwreport(a, out),
    }
}
