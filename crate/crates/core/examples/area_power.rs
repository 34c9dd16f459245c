//! Area and power of the identification unit, per block and in total.
//!
//!     cargo run --example area_power -- [units]

use gneighbor::hwsim::{run_hwreport, AreaPowerLedger};

fn main() {
    let units: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);

    let unit = run_hwreport();
    println!("{unit}");
    println!("exact sums: {:.2} um^2, {:.2} mW", unit.exact_area_um2, unit.exact_power_mw);

    if units > 1 {
        // linear scaling is a modelling assumption, not a layout result
        let scaled = AreaPowerLedger::memristive_unit().scaled(units).report();
        println!("\n{units} units:\n{}", scaled.to_csv());
    }
    println!("\n{}", unit.to_json());
}
