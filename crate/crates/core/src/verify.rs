//! Equivalence suites checking the gate-level hardware model against plain
//! integer arithmetic.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::hwsim::{
    comparator_netlist, mtl_eval, xor_word_netlist, BitWord, Crossbar, CrossbarParams, GNeighborUnit, HwError,
    LogicLevels, MtlCell, Netlist,
};

/// Counterexamples kept per suite.
const MAX_COUNTEREXAMPLES: usize = 8;
/// Sampled cases per suite when not running exhaustively.
const SAMPLED_CASES: u64 = 4096;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("bit width must be 4 or 8, got {0}")]
    UnsupportedWidth(usize),
    #[error(transparent)]
    Hw(#[from] HwError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: u64,
    pub passed: u64,
    pub counterexamples: Vec<String>,
}

impl SuiteResult {
    fn from_failures(name: impl Into<String>, cases: u64, failures: Vec<String>) -> Self {
        let failed = failures.len() as u64;
        Self {
            name: name.into(),
            cases,
            passed: cases - failed,
            counterexamples: failures.into_iter().take(MAX_COUNTEREXAMPLES).collect(),
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.cases
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub bit_width: usize,
    pub exhaustive: bool,
    pub suites: Vec<SuiteResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "cases", "passed", "failed", "first_counterexample"])
            .expect("in-memory write");
        for s in &self.suites {
            w.write_record([
                s.name.clone(),
                s.cases.to_string(),
                s.passed.to_string(),
                (s.cases - s.passed).to_string(),
                s.counterexamples.first().cloned().unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "hardware verification, {}-bit, {}",
            self.bit_width,
            if self.exhaustive { "exhaustive" } else { "sampled" }
        )?;
        for s in &self.suites {
            writeln!(
                f,
                "  {:<28} {:>7}/{:<7} {}",
                s.name,
                s.passed,
                s.cases,
                if s.ok() { "PASS" } else { "FAIL" }
            )?;
            for c in &s.counterexamples {
                writeln!(f, "    counterexample: {c}")?;
            }
        }
        write!(f, "{}", if self.all_passed() { "all suites passed" } else { "FAILED" })
    }
}

/// Word pairs to test: every pair when exhaustive, else a seeded sample.
fn word_pairs(width: usize, exhaustive: bool, seed: u64) -> Vec<(u64, u64)> {
    let n = 1u64 << width;
    if exhaustive {
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLED_CASES.min(n * n))
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .collect()
    }
}

/// Both MTL configurations against the 2-input NOR/NAND truth table.
pub fn mtl_truth_table_suite(levels: LogicLevels) -> SuiteResult {
    let nor = MtlCell::nor(2, levels);
    let nand = MtlCell::nand(2, levels);
    let mut failures = Vec::new();
    for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
        if mtl_eval(&nor, &[a, b]) != !(a || b) {
            failures.push(format!("NOR({}, {})", a as u8, b as u8));
        }
        if mtl_eval(&nand, &[a, b]) != !(a && b) {
            failures.push(format!("NAND({}, {})", a as u8, b as u8));
        }
    }
    SuiteResult::from_failures("mtl truth table", 8, failures)
}

pub fn xor_suite(width: usize, exhaustive: bool, seed: u64) -> SuiteResult {
    let net = xor_word_netlist(width, LogicLevels::default());
    let pairs = word_pairs(width, exhaustive, seed);
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            let (wa, wb) = (BitWord::from_uint(a, width), BitWord::from_uint(b, width));
            let mut inputs = wa.bits().to_vec();
            inputs.extend_from_slice(wb.bits());
            let got = BitWord::from_bits(net.eval(&inputs));
            (got.to_uint() != a ^ b).then(|| format!("{wa} xor {wb} -> {got}"))
        })
        .collect();
    SuiteResult::from_failures(format!("xor-tlg {width}-bit words"), pairs.len() as u64, failures)
}

/// Checks any comparator netlist with `2 * width` inputs against `d <= g`.
pub fn comparator_suite(net: &Netlist, width: usize, exhaustive: bool, seed: u64) -> SuiteResult {
    let pairs = word_pairs(width, exhaustive, seed);
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(d, g)| {
            let (wd, wg) = (BitWord::from_uint(d, width), BitWord::from_uint(g, width));
            let mut inputs = wd.bits().to_vec();
            inputs.extend_from_slice(wg.bits());
            let got = net.eval(&inputs)[0];
            (got != (d <= g)).then(|| format!("compare {wd} <= {wg} -> {}", got as u8))
        })
        .collect();
    SuiteResult::from_failures(format!("comparator {width}-bit"), pairs.len() as u64, failures)
}

/// Random write-then-read round trips. A trial fails on any readback
/// mismatch, any disturbed device, or any state change caused by reading.
pub fn crossbar_suite(trials: u64, rows: usize, cols: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xbar = Crossbar::new(rows, cols, CrossbarParams::default()).expect("default operating point is valid");
    let mut failures = Vec::new();
    for trial in 0..trials {
        let target: Vec<Vec<bool>> = (0..rows).map(|_| (0..cols).map(|_| rng.random()).collect()).collect();
        let reports = xbar.write(&target).expect("matching dimensions");
        if let Some(r) = reports.iter().find(|r| r.disturbed > 0) {
            failures.push(format!("trial {trial}: {} device(s) disturbed in {:?} cycle of row {}", r.disturbed, r.phase, r.row));
            continue;
        }
        let before = xbar.states();
        let read = xbar.read_all();
        if read != target {
            failures.push(format!("trial {trial}: readback differs from written matrix"));
        } else if xbar.states() != before {
            failures.push(format!("trial {trial}: read changed device states"));
        }
    }
    SuiteResult::from_failures(format!("crossbar {rows}x{cols} round trip"), trials, failures)
}

/// End-to-end unit against `(r ^ n) <= g` for each threshold in `thresholds`.
pub fn pipeline_suite(
    width: usize,
    thresholds: &[u64],
    exhaustive: bool,
    seed: u64,
    comparator: Option<&Netlist>,
) -> Result<SuiteResult, VerifyError> {
    let mut unit = GNeighborUnit::new(width)?;
    if let Some(net) = comparator {
        unit.set_comparator(net.clone())?;
    }
    let pairs = word_pairs(width, exhaustive, seed);
    let mut cases = 0u64;
    let mut failures = Vec::new();
    for &g in thresholds {
        let found: Vec<String> = pairs
            .par_iter()
            .map_init(
                || unit.clone(),
                |u, &(r, n)| {
                    let got = u.identify(r, n, g).expect("values fit the unit width");
                    (got != ((r ^ n) <= g)).then(|| {
                        format!(
                            "ref {} neighbor {} g {} -> {}",
                            BitWord::from_uint(r, width),
                            BitWord::from_uint(n, width),
                            BitWord::from_uint(g, width),
                            got as u8
                        )
                    })
                },
            )
            .flatten()
            .collect();
        cases += pairs.len() as u64;
        failures.extend(found);
    }
    let label: Vec<String> = thresholds.iter().map(u64::to_string).collect();
    Ok(SuiteResult::from_failures(
        format!("pipeline {width}-bit g={{{}}}", label.join(",")),
        cases,
        failures,
    ))
}

/// Runs every suite. `comparator` overrides the generated comparator netlist.
pub fn run_hwverify_with(
    bit_width: usize,
    exhaustive: bool,
    comparator: Option<&Netlist>,
) -> Result<VerificationReport, VerifyError> {
    if bit_width != 4 && bit_width != 8 {
        return Err(VerifyError::UnsupportedWidth(bit_width));
    }
    let seed = 0x5eed;
    let levels = LogicLevels::default();
    let generated;
    let comparator = match comparator {
        Some(net) => net,
        None => {
            generated = comparator_netlist(bit_width, levels);
            &generated
        }
    };
    let max = (1u64 << bit_width) - 1;
    let thresholds = [0, 13.min(max), max];
    let suites = vec![
        mtl_truth_table_suite(levels),
        xor_suite(bit_width, exhaustive, seed),
        comparator_suite(comparator, bit_width, exhaustive, seed),
        crossbar_suite(if exhaustive { 1000 } else { 100 }, bit_width, bit_width, seed),
        pipeline_suite(bit_width, &thresholds, exhaustive, seed, Some(comparator))?,
    ];
    Ok(VerificationReport {
        bit_width,
        exhaustive,
        suites,
    })
}

pub fn run_hwverify(bit_width: usize, exhaustive: bool) -> Result<VerificationReport, VerifyError> {
    run_hwverify_with(bit_width, exhaustive, None)
}
