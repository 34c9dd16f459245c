//! Behavioral simulation of the memristive G-neighbor identification unit.
//!
//! Bits travel as voltages between [`LogicLevels::v_low`] and
//! [`LogicLevels::v_high`]. Logic is built from memristive threshold logic
//! (MTL) cells composed into netlists and evaluated gate by gate. Storage
//! uses two-state memristor crossbars and an SRAM latch.

mod crossbar;
mod device;
mod ledger;
mod mtl;
mod netlist;
mod pipeline;
mod sram;

pub use crossbar::{Crossbar, CrossbarParams, CycleReport, WritePhase};
pub use device::{device_step, DeviceParams, MemristorDevice, ResistanceState};
pub use ledger::{area_power_report, run_hwreport, AreaPowerLedger, AreaPowerReport, LedgerEntry, ReportLine};
pub use mtl::{mtl_eval, CellFunction, MtlCell};
pub use netlist::{
    comparator_netlist, compare_leq, xor_netlist, xor_tlg, xor_word, xor_word_netlist, Netlist, NetlistBuilder, Wire,
};
pub use pipeline::{pipeline_pixel, GNeighborUnit, PipelineTrace};
pub use sram::SramCell;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HwError {
    #[error("invalid {what}: {reason}")]
    InvalidParameter { what: &'static str, reason: String },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("index ({row}, {col}) outside {rows}x{cols} crossbar")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("word width mismatch: {0} vs {1}")]
    WidthMismatch(usize, usize),
    #[error("SRAM accessed while the word line is deasserted")]
    WordLineLow,
    #[error("invalid bit string {0:?}")]
    BadBitString(String),
}

/// Voltages representing logic 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogicLevels {
    pub v_low: f64,
    pub v_high: f64,
}

impl LogicLevels {
    pub fn new(v_low: f64, v_high: f64) -> Result<Self, HwError> {
        if !(v_low < v_high) {
            return Err(HwError::InvalidParameter {
                what: "logic levels",
                reason: format!("v_low {v_low} must be below v_high {v_high}"),
            });
        }
        Ok(Self { v_low, v_high })
    }

    pub fn voltage(&self, bit: bool) -> f64 {
        if bit {
            self.v_high
        } else {
            self.v_low
        }
    }

    pub fn midpoint(&self) -> f64 {
        (self.v_low + self.v_high) / 2.0
    }
}

impl Default for LogicLevels {
    /// 0 V and 2.5 V.
    fn default() -> Self {
        Self {
            v_low: 0.0,
            v_high: 2.5,
        }
    }
}

/// Fixed-width bit word, most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitWord(Vec<bool>);

impl BitWord {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    /// Panics if `value` does not fit in `width` bits.
    pub fn from_uint(value: u64, width: usize) -> Self {
        assert!(width <= 64 && (width == 64 || value >> width == 0), "{value} does not fit in {width} bits");
        Self((0..width).rev().map(|i| (value >> i) & 1 == 1).collect())
    }

    pub fn to_uint(&self) -> u64 {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitWord {
    type Err = HwError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(HwError::BadBitString(s.to_string()));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(HwError::BadBitString(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitWord)
    }
}
