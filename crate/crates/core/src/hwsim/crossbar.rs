use super::{BitWord, DeviceParams, HwError, MemristorDevice, ResistanceState};

/// Electrical operating point of a crossbar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossbarParams {
    pub v_write: f64,
    pub v_read: f64,
    pub r_load: f64,
    /// Threshold of the inverter sensing the load-resistor node.
    pub v_t2: f64,
    pub device: DeviceParams,
}

impl CrossbarParams {
    pub fn validate(&self) -> Result<(), HwError> {
        self.device.validate()?;
        let vt = self.device.v_threshold;
        let fail = |what, reason: String| Err(HwError::InvalidParameter { what, reason });
        if !(self.v_write > vt) {
            return fail("write voltage", format!("{} V does not exceed the {vt} V switching threshold", self.v_write));
        }
        if !(self.v_write / 2.0 < vt) {
            return fail(
                "write voltage",
                format!("half-select {} V would disturb devices (threshold {vt} V)", self.v_write / 2.0),
            );
        }
        if !(self.v_read > 0.0 && self.v_read < vt) {
            return fail("read voltage", format!("{} V must lie in (0, {vt}) V", self.v_read));
        }
        if !(self.r_load > 0.0) {
            return fail("load resistance", format!("{} must be positive", self.r_load));
        }
        let (hi, lo) = (self.divider(self.device.r_on), self.divider(self.device.r_off));
        if !(self.v_t2 > lo && self.v_t2 < hi) {
            return fail(
                "sense threshold",
                format!("{} V must separate the divider outputs {lo:.4} V and {hi:.4} V", self.v_t2),
            );
        }
        Ok(())
    }

    /// Voltage across the load resistor when reading a device of resistance `r_device`.
    pub fn divider(&self, r_device: f64) -> f64 {
        self.v_read * self.r_load / (r_device + self.r_load)
    }
}

impl Default for CrossbarParams {
    /// 2 V write pulses, 1 V reads, `r_load = sqrt(r_on r_off)`, 0.5 V sense threshold.
    fn default() -> Self {
        let device = DeviceParams::default();
        Self {
            v_write: 2.0,
            v_read: 1.0,
            r_load: (device.r_on * device.r_off).sqrt(),
            v_t2: 0.5,
            device,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WritePhase {
    /// Row at `+V_w/2`: full-selected devices switch to low resistance.
    Set,
    /// Row at `-V_w/2`: full-selected devices switch to high resistance.
    Reset,
}

/// What one write cycle did to the array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleReport {
    pub row: usize,
    pub phase: WritePhase,
    /// Devices that saw the full `V_w`.
    pub full_selected: usize,
    /// Devices that saw `V_w/2`.
    pub half_selected: usize,
    /// Full-selected devices that changed state.
    pub switched: usize,
    /// Devices that changed state without being full-selected.
    pub disturbed: usize,
}

/// Grid of memristors at row/column wire crossings.
///
/// A row is written in two cycles with the column drives held fixed:
/// columns whose target is 1 sit at `-V_w/2`, the rest at `+V_w/2`. The
/// selected row goes to `+V_w/2` (set cycle) and then `-V_w/2` (reset
/// cycle); unselected rows stay grounded. Reads apply `V_r` to one row and
/// sense one column through a load resistor.
#[derive(Debug, Clone, PartialEq)]
pub struct Crossbar {
    rows: usize,
    cols: usize,
    devices: Vec<MemristorDevice>,
    params: CrossbarParams,
}

impl Crossbar {
    /// All devices start in the high-resistance (0) state.
    pub fn new(rows: usize, cols: usize, params: CrossbarParams) -> Result<Self, HwError> {
        params.validate()?;
        Self::new_unchecked(rows, cols, params)
    }

    /// Skips the voltage checks so unsafe operating points can be studied.
    pub fn new_unchecked(rows: usize, cols: usize, params: CrossbarParams) -> Result<Self, HwError> {
        if rows == 0 || cols == 0 {
            return Err(HwError::InvalidParameter {
                what: "crossbar size",
                reason: format!("{rows}x{cols} must be non-empty"),
            });
        }
        let device = MemristorDevice::new(ResistanceState::HighResistance, params.device);
        Ok(Self {
            rows,
            cols,
            devices: vec![device; rows * cols],
            params,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn params(&self) -> &CrossbarParams {
        &self.params
    }

    pub fn device(&self, row: usize, col: usize) -> Result<&MemristorDevice, HwError> {
        self.check_index(row, col)?;
        Ok(&self.devices[row * self.cols + col])
    }

    pub fn states(&self) -> Vec<ResistanceState> {
        self.devices.iter().map(|d| d.state).collect()
    }

    fn check_index(&self, row: usize, col: usize) -> Result<(), HwError> {
        if row >= self.rows || col >= self.cols {
            return Err(HwError::IndexOutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    fn cycle(&mut self, row: usize, phase: WritePhase, target: &[bool]) -> CycleReport {
        let half = self.params.v_write / 2.0;
        let v_selected_row = match phase {
            WritePhase::Set => half,
            WritePhase::Reset => -half,
        };
        let mut report = CycleReport {
            row,
            phase,
            full_selected: 0,
            half_selected: 0,
            switched: 0,
            disturbed: 0,
        };
        for r in 0..self.rows {
            let v_row = if r == row { v_selected_row } else { 0.0 };
            for (c, &bit) in target.iter().enumerate() {
                let v_col = if bit { -half } else { half };
                let v = v_row - v_col;
                let dev = &mut self.devices[r * self.cols + c];
                let before = dev.state;
                *dev = dev.step(v);
                let changed = dev.state != before;
                if v.abs() >= self.params.v_write {
                    report.full_selected += 1;
                    report.switched += changed as usize;
                } else {
                    if v.abs() == half {
                        report.half_selected += 1;
                    }
                    report.disturbed += changed as usize;
                }
            }
        }
        report
    }

    /// Writes one row using the set and reset cycles.
    pub fn write_row(&mut self, row: usize, target: &[bool]) -> Result<[CycleReport; 2], HwError> {
        self.check_index(row, 0)?;
        if target.len() != self.cols {
            return Err(HwError::DimensionMismatch {
                expected: self.cols,
                actual: target.len(),
            });
        }
        let set = self.cycle(row, WritePhase::Set, target);
        let reset = self.cycle(row, WritePhase::Reset, target);
        Ok([set, reset])
    }

    pub fn write_word(&mut self, row: usize, word: &BitWord) -> Result<[CycleReport; 2], HwError> {
        self.write_row(row, word.bits())
    }

    /// Writes a full bit matrix row by row and returns every cycle report.
    pub fn write(&mut self, bits: &[Vec<bool>]) -> Result<Vec<CycleReport>, HwError> {
        if bits.len() != self.rows {
            return Err(HwError::DimensionMismatch {
                expected: self.rows,
                actual: bits.len(),
            });
        }
        if let Some(bad) = bits.iter().find(|r| r.len() != self.cols) {
            return Err(HwError::DimensionMismatch {
                expected: self.cols,
                actual: bad.len(),
            });
        }
        let mut reports = Vec::with_capacity(2 * self.rows);
        for (r, target) in bits.iter().enumerate() {
            reports.extend(self.write_row(r, target)?);
        }
        Ok(reports)
    }

    /// Voltage at the load-resistor node when device `(row, col)` is read.
    pub fn node_voltage(&self, row: usize, col: usize) -> Result<f64, HwError> {
        let dev = self.device(row, col)?;
        Ok(self.params.divider(dev.resistance()))
    }

    pub fn read(&self, row: usize, col: usize) -> Result<bool, HwError> {
        let dev = self.device(row, col)?;
        debug_assert_eq!(dev.step(self.params.v_read).state, dev.state, "read pulse switched a device");
        Ok(self.params.divider(dev.resistance()) > self.params.v_t2)
    }

    pub fn read_row(&self, row: usize) -> Result<BitWord, HwError> {
        (0..self.cols)
            .map(|c| self.read(row, c))
            .collect::<Result<Vec<_>, _>>()
            .map(BitWord::from_bits)
    }

    pub fn read_all(&self) -> Vec<Vec<bool>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.read(r, c).expect("in range")).collect())
            .collect()
    }
}
