//! Edge-aware G-neighbor denoising with quality assessment and a behavioral
//! simulator of a memristive hardware realization.
//!
//! * [`imaging`]: grayscale rasters, PGM I/O, padding, salt-and-pepper noise
//! * [`gfilter`]: G-neighbor masks and adaptive/square mean and median filters
//! * [`metrics`]: MSE, PSNR and SSIM over whole images or regions of interest
//! * [`hwsim`]: memristor devices, MTL gates, crossbars, comparator and SRAM
//! * [`verify`]: exhaustive hardware/software equivalence suites
//! * [`sweep`]: threshold sweeps over an image corpus
//! * [`cli`]: the `gneighbor` command-line frontend

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod gfilter;
pub mod hwsim;
pub mod imaging;
pub mod metrics;
pub mod sweep;
pub mod verify;

pub use gfilter::{filter_image, square_filter, Aggregator, DistanceMode, FilterConfig};
pub use imaging::{load_pgm, save_pgm, GrayImage, NoiseSpec, PaddingMode};
pub use metrics::{evaluate, QualityReport, RoiSpec, SsimConstants};
