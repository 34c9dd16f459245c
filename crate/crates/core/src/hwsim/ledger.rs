use std::fmt;

use serde::Serialize;

/// Area and power of one hardware block. Values are kept in hundredths so
/// sums are exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub name: String,
    area_centi_um2: u64,
    power_centi_mw: u64,
}

impl LedgerEntry {
    /// Rounds inputs to two decimals.
    pub fn new(name: impl Into<String>, area_um2: f64, power_mw: f64) -> Self {
        Self {
            name: name.into(),
            area_centi_um2: (area_um2 * 100.0).round() as u64,
            power_centi_mw: (power_mw * 100.0).round() as u64,
        }
    }

    pub fn area_um2(&self) -> f64 {
        self.area_centi_um2 as f64 / 100.0
    }

    pub fn power_mw(&self) -> f64 {
        self.power_centi_mw as f64 / 100.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AreaPowerLedger {
    entries: Vec<LedgerEntry>,
}

impl AreaPowerLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Per-block figures for one G-neighbor identification unit.
    pub fn memristive_unit() -> Self {
        let mut l = Self::new();
        l.push(LedgerEntry::new("XOR", 25.02, 3.6));
        l.push(LedgerEntry::new("Memristor arrays", 128.08, 12.0));
        l.push(LedgerEntry::new("Bit-by-bit comparison", 111.06, 14.0));
        l.push(LedgerEntry::new("SRAM", 16.0, 1.8));
        l
    }

    pub fn push(&mut self, entry: LedgerEntry) {
        self.entries.push(entry);
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    /// Every block replicated `units` times. Linear scaling is a model
    /// assumption, not a layout result.
    pub fn scaled(&self, units: u64) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|e| LedgerEntry {
                    name: e.name.clone(),
                    area_centi_um2: e.area_centi_um2 * units,
                    power_centi_mw: e.power_centi_mw * units,
                })
                .collect(),
        }
    }

    pub fn total_area_um2(&self) -> f64 {
        self.entries.iter().map(|e| e.area_centi_um2).sum::<u64>() as f64 / 100.0
    }

    pub fn total_power_mw(&self) -> f64 {
        self.entries.iter().map(|e| e.power_centi_mw).sum::<u64>() as f64 / 100.0
    }

    pub fn report(&self) -> AreaPowerReport {
        let round1 = |v: f64| (v * 10.0).round() / 10.0;
        AreaPowerReport {
            blocks: self
                .entries
                .iter()
                .map(|e| ReportLine {
                    block: e.name.clone(),
                    area_um2: e.area_um2(),
                    power_mw: e.power_mw(),
                })
                .collect(),
            exact_area_um2: self.total_area_um2(),
            exact_power_mw: self.total_power_mw(),
            total_area_um2: round1(self.total_area_um2()),
            total_power_mw: round1(self.total_power_mw()),
        }
    }
}

pub fn area_power_report(ledger: &AreaPowerLedger) -> AreaPowerReport {
    ledger.report()
}

/// Report for one identification unit with the stock block figures.
pub fn run_hwreport() -> AreaPowerReport {
    AreaPowerLedger::memristive_unit().report()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportLine {
    pub block: String,
    pub area_um2: f64,
    pub power_mw: f64,
}

/// Per-block lines with totals. `total_*` are rounded to 0.1, the precision
/// the totals are quoted at; `exact_*` keep the full sums.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaPowerReport {
    pub blocks: Vec<ReportLine>,
    pub total_area_um2: f64,
    pub total_power_mw: f64,
    pub exact_area_um2: f64,
    pub exact_power_mw: f64,
}

impl AreaPowerReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["block", "area_um2", "power_mw"]).expect("in-memory write");
        for b in &self.blocks {
            w.write_record([b.block.clone(), b.area_um2.to_string(), b.power_mw.to_string()])
                .expect("in-memory write");
        }
        w.write_record([
            "Total".to_string(),
            format!("{:.1}", self.total_area_um2),
            format!("{:.1}", self.total_power_mw),
        ])
        .expect("in-memory write");
        String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
    }
}

impl fmt::Display for AreaPowerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<24}{:>12}{:>12}", "Block", "Area (um^2)", "Power (mW)")?;
        for b in &self.blocks {
            writeln!(f, "{:<24}{:>12}{:>12}", b.block, b.area_um2, b.power_mw)?;
        }
        write!(
            f,
            "{:<24}{:>12.1}{:>12.1}",
            "Total", self.total_area_um2, self.total_power_mw
        )
    }
}
