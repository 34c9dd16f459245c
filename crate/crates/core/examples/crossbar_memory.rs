//! Program a memristor crossbar with the two-cycle half-select scheme and
//! show why the write voltage matters.
//!
//!     cargo run --example crossbar_memory

use gneighbor::hwsim::{Crossbar, CrossbarParams};

fn show(xbar: &Crossbar) {
    for row in 0..xbar.rows() {
        println!("  {}", xbar.read_row(row).unwrap());
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CrossbarParams::default();
    println!(
        "v_write {} V, v_read {} V, r_load {:.0} ohm, device threshold {} V",
        params.v_write, params.v_read, params.r_load, params.device.v_threshold
    );
    println!(
        "read divider: low-resistance {:.3} V, high-resistance {:.3} V, sense threshold {} V",
        params.divider(params.device.r_on),
        params.divider(params.device.r_off),
        params.v_t2
    );

    let pattern: Vec<Vec<bool>> = ["10110010", "01101100", "11111111", "00000001"]
        .iter()
        .map(|s| s.chars().map(|c| c == '1').collect())
        .collect();

    let mut xbar = Crossbar::new(4, 8, params)?;
    for r in xbar.write(&pattern)? {
        println!(
            "row {} {:?}: {} selected, {} half-selected, {} switched, {} disturbed",
            r.row, r.phase, r.full_selected, r.half_selected, r.switched, r.disturbed
        );
    }
    println!("read back:");
    show(&xbar);

    // half the write voltage now exceeds the device threshold
    let hot = CrossbarParams {
        v_write: 2.5,
        ..params
    };
    println!("\nv_write 2.5 V is rejected: {}", Crossbar::new(4, 8, hot).unwrap_err());
    let mut xbar = Crossbar::new_unchecked(4, 8, hot)?;
    let disturbed: usize = xbar.write(&pattern)?.iter().map(|r| r.disturbed).sum();
    println!("forcing it anyway disturbs {disturbed} device(s); read back:");
    show(&xbar);
    Ok(())
}
