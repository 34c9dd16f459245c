use std::io;

use serde::{Serialize, Serializer};

use super::RoiSpec;

pub const CSV_HEADER: [&str; 7] = ["mse", "psnr_db", "ssim", "ssim_l", "ssim_c", "ssim_s", "roi"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityReport {
    pub mse: f64,
    #[serde(serialize_with = "serialize_db")]
    pub psnr_db: f64,
    pub ssim: f64,
    pub ssim_l: f64,
    pub ssim_c: f64,
    pub ssim_s: f64,
    pub roi: Option<RoiSpec>,
}

/// Finite values as JSON numbers, `+inf` as the string `"inf"`.
pub(crate) fn serialize_db<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_infinite() && *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*v)
    }
}

pub(crate) fn format_db(v: f64) -> String {
    if v.is_infinite() && v > 0.0 {
        "inf".to_string()
    } else {
        v.to_string()
    }
}

impl QualityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report fields are always serializable")
    }

    pub fn csv_record(&self) -> [String; 7] {
        [
            self.mse.to_string(),
            format_db(self.psnr_db),
            self.ssim.to_string(),
            self.ssim_l.to_string(),
            self.ssim_c.to_string(),
            self.ssim_s.to_string(),
            self.roi.map(|r| r.to_string()).unwrap_or_default(),
        ]
    }

    /// Same metric values, ignoring which region produced them.
    pub fn same_metrics(&self, other: &QualityReport) -> bool {
        self.mse == other.mse
            && self.psnr_db == other.psnr_db
            && self.ssim == other.ssim
            && self.ssim_l == other.ssim_l
            && self.ssim_c == other.ssim_c
            && self.ssim_s == other.ssim_s
    }
}

pub fn write_reports_csv<W: io::Write>(out: W, reports: &[QualityReport]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in reports {
        w.write_record(r.csv_record())?;
    }
    w.flush()?;
    Ok(())
}
