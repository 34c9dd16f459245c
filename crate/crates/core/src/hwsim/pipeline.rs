use super::netlist::eval_pair;
use super::{
    comparator_netlist, xor_word_netlist, BitWord, Crossbar, CrossbarParams, HwError, LogicLevels, Netlist, SramCell,
};

/// Intermediate values of one identification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineTrace {
    pub distance: BitWord,
    pub threshold: BitWord,
    pub distance_read: BitWord,
    pub threshold_read: BitWord,
    pub is_neighbor: bool,
}

/// Hardware unit deciding whether one neighbor is a G-neighbor of the
/// reference pixel: XOR distance, two one-row crossbars holding the distance
/// and the threshold, a magnitude comparator, and an SRAM bit for the result.
#[derive(Debug, Clone)]
pub struct GNeighborUnit {
    width: usize,
    xor: Netlist,
    comparator: Netlist,
    distance_array: Crossbar,
    threshold_array: Crossbar,
    sram: SramCell,
}

impl GNeighborUnit {
    pub fn new(width: usize) -> Result<Self, HwError> {
        Self::with_params(width, LogicLevels::default(), CrossbarParams::default())
    }

    pub fn with_params(width: usize, levels: LogicLevels, xbar: CrossbarParams) -> Result<Self, HwError> {
        Ok(Self {
            width,
            xor: xor_word_netlist(width, levels),
            comparator: comparator_netlist(width, levels),
            distance_array: Crossbar::new(1, width, xbar)?,
            threshold_array: Crossbar::new(1, width, xbar)?,
            sram: SramCell::new(),
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Replaces the comparator, e.g. with a fault-injected copy.
    pub fn set_comparator(&mut self, comparator: Netlist) -> Result<(), HwError> {
        if comparator.input_count() != 2 * self.width || comparator.output_count() != 1 {
            return Err(HwError::WidthMismatch(2 * self.width, comparator.input_count()));
        }
        self.comparator = comparator;
        Ok(())
    }

    pub fn sram(&self) -> &SramCell {
        &self.sram
    }

    fn word(&self, value: u64) -> Result<BitWord, HwError> {
        if self.width < 64 && value >> self.width != 0 {
            return Err(HwError::WidthMismatch(self.width, 64 - value.leading_zeros() as usize));
        }
        Ok(BitWord::from_uint(value, self.width))
    }

    pub fn identify(&mut self, reference: u64, neighbor: u64, threshold: u64) -> Result<bool, HwError> {
        self.identify_traced(reference, neighbor, threshold).map(|t| t.is_neighbor)
    }

    pub fn identify_traced(&mut self, reference: u64, neighbor: u64, threshold: u64) -> Result<PipelineTrace, HwError> {
        let r = self.word(reference)?;
        let n = self.word(neighbor)?;
        let g = self.word(threshold)?;

        let distance = BitWord::from_bits(eval_pair(&self.xor, &r, &n));
        self.distance_array.write_word(0, &distance)?;
        self.threshold_array.write_word(0, &g)?;

        let distance_read = self.distance_array.read_row(0)?;
        let threshold_read = self.threshold_array.read_row(0)?;
        let leq = eval_pair(&self.comparator, &distance_read, &threshold_read)[0];

        self.sram.assert_word_line();
        self.sram.write(leq)?;
        let stored = self.sram.read()?;
        self.sram.deassert_word_line();

        Ok(PipelineTrace {
            distance,
            threshold: g,
            distance_read,
            threshold_read,
            is_neighbor: stored,
        })
    }
}

/// Runs the full 8-bit chain once on a fresh unit and returns the SRAM bit.
pub fn pipeline_pixel(reference: u8, neighbor: u8, g: u8) -> bool {
    GNeighborUnit::new(8)
        .and_then(|mut u| u.identify(reference as u64, neighbor as u64, g as u64))
        .expect("default operating point is valid")
}
