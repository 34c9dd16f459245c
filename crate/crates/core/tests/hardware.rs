use gneighbor::hwsim::{
    compare_leq, mtl_eval, pipeline_pixel, xor_word, AreaPowerLedger, BitWord, Crossbar, CrossbarParams,
    DeviceParams, GNeighborUnit, HwError, LogicLevels, MtlCell, ResistanceState, SramCell,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const L: bool = false;
const H: bool = true;

#[test]
fn two_input_cell_truth_table() {
    // (V1, V2, NOR, NAND)
    let table = [(L, L, H, H), (L, H, L, H), (H, L, L, H), (H, H, L, L)];
    let levels = LogicLevels::default();
    let nor = MtlCell::nor(2, levels);
    let nand = MtlCell::nand(2, levels);
    for (a, b, want_nor, want_nand) in table {
        assert_eq!(mtl_eval(&nor, &[a, b]), want_nor, "NOR({a}, {b})");
        assert_eq!(mtl_eval(&nand, &[a, b]), want_nand, "NAND({a}, {b})");
    }
}

#[test]
fn average_voltage_rows() {
    let cell = MtlCell::nor(2, LogicLevels::default());
    assert_eq!(cell.average_voltage(&[L, L]), 0.0);
    assert_eq!(cell.average_voltage(&[L, H]), 1.25);
    assert_eq!(cell.average_voltage(&[H, H]), 2.5);
}

#[test]
fn xor_waveform_words() {
    let a: BitWord = "11110011".parse().unwrap();
    let b: BitWord = "11000110".parse().unwrap();
    assert_eq!(xor_word(&a, &b).unwrap().to_string(), "00110101");
    assert!(matches!(
        xor_word(&a, &"1010".parse().unwrap()),
        Err(HwError::WidthMismatch(8, 4))
    ));
}

#[test]
fn comparator_sample_words() {
    let d: BitWord = "0111".parse().unwrap();
    let g: BitWord = "1101".parse().unwrap();
    assert!(compare_leq(&d, &g).unwrap());
    assert!(!compare_leq(&g, &d).unwrap());
}

#[test]
fn comparator_exhaustive_four_bit() {
    for d in 0..16u64 {
        for g in 0..16u64 {
            let got = compare_leq(&BitWord::from_uint(d, 4), &BitWord::from_uint(g, 4)).unwrap();
            assert_eq!(got, d <= g, "{d} <= {g}");
        }
    }
}

#[test]
fn crossbar_round_trip_without_disturbance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut xbar = Crossbar::new(8, 8, CrossbarParams::default()).unwrap();
    for _ in 0..200 {
        let m: Vec<Vec<bool>> = (0..8).map(|_| (0..8).map(|_| rng.random()).collect()).collect();
        for r in xbar.write(&m).unwrap() {
            assert_eq!(r.disturbed, 0, "{r:?}");
        }
        assert_eq!(xbar.read_all(), m);
    }
}

#[test]
fn crossbar_reads_do_not_switch() {
    let mut xbar = Crossbar::new(2, 4, CrossbarParams::default()).unwrap();
    xbar.write_word(0, &"1010".parse().unwrap()).unwrap();
    let before = xbar.states();
    for _ in 0..10 {
        assert_eq!(xbar.read_row(0).unwrap().to_string(), "1010");
    }
    assert_eq!(xbar.states(), before);
}

#[test]
fn unsafe_write_voltage_rejected() {
    let params = CrossbarParams {
        v_write: 2.5,
        ..Default::default()
    };
    assert!(Crossbar::new(4, 4, params).is_err());
    let params = CrossbarParams {
        v_write: 1.0,
        ..Default::default()
    };
    assert!(Crossbar::new(4, 4, params).is_err());
}

#[test]
fn device_switching_thresholds() {
    let p = DeviceParams::default();
    let d = gneighbor::hwsim::MemristorDevice::new(ResistanceState::HighResistance, p);
    assert_eq!(d.step(1.0).state, ResistanceState::HighResistance);
    assert_eq!(d.step(p.v_threshold).state, ResistanceState::LowResistance);
    assert_eq!(d.step(2.0).step(-2.0).state, ResistanceState::HighResistance);
}

#[test]
fn sram_requires_word_line() {
    let mut cell = SramCell::new();
    assert_eq!(cell.write(true), Err(HwError::WordLineLow));
    cell.assert_word_line();
    cell.write(true).unwrap();
    cell.deassert_word_line();
    assert!(cell.latched());
    assert_eq!(cell.read(), Err(HwError::WordLineLow));
}

#[test]
fn pipeline_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5000 {
        let (r, n, g): (u8, u8, u8) = (rng.random(), rng.random(), rng.random());
        assert_eq!(pipeline_pixel(r, n, g), (r ^ n) <= g);
    }
}

#[test]
fn pipeline_trace_matches_stages() {
    let mut unit = GNeighborUnit::new(8).unwrap();
    let t = unit.identify_traced(0b1111_0011, 0b1100_0110, 13).unwrap();
    assert_eq!(t.distance.to_uint(), 0b0011_0101);
    assert_eq!(t.distance_read, t.distance);
    assert_eq!(t.threshold_read.to_uint(), 13);
    assert!(!t.is_neighbor);
    assert!(!unit.sram().latched());
}

#[test]
fn ledger_totals() {
    let report = AreaPowerLedger::memristive_unit().report();
    assert_eq!(report.total_area_um2, 280.2);
    assert_eq!(report.total_power_mw, 31.4);
    assert!((report.exact_area_um2 - 280.16).abs() < 1e-9);
    assert_eq!(report.blocks.len(), 4);
}
