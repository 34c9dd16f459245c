//! Walk one neighbor decision through the simulated hardware: XOR distance,
//! crossbar storage, bit-serial comparison and the SRAM result bit.
//!
//!     cargo run --example hardware_pipeline

use gneighbor::hwsim::{compare_leq, xor_word, BitWord, GNeighborUnit};
use gneighbor::verify::run_hwverify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a: BitWord = "11110011".parse()?;
    let b: BitWord = "11000110".parse()?;
    println!("{a} xor {b} = {}", xor_word(&a, &b)?);

    let d: BitWord = "0111".parse()?;
    let g: BitWord = "1101".parse()?;
    println!("{d} <= {g} -> {}", compare_leq(&d, &g)? as u8);

    let mut unit = GNeighborUnit::new(8)?;
    for (r, n) in [(120u64, 124u64), (120, 250), (0, 13), (0, 14)] {
        let t = unit.identify_traced(r, n, 13)?;
        println!(
            "ref {r:>3} neighbor {n:>3}: distance {} (read back {}), threshold {}, neighbor = {}, sram = {}",
            t.distance,
            t.distance_read,
            t.threshold_read,
            t.is_neighbor,
            unit.sram().latched() as u8
        );
    }

    println!();
    println!("{}", run_hwverify(4, true)?);
    Ok(())
}
