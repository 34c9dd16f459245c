use super::{HwError, LogicLevels};

/// Which Boolean function a cell's threshold placement realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellFunction {
    Inverter,
    Nor,
    Nand,
    /// Threshold between the NOR and NAND bands of a 3+ input cell.
    Other,
}

/// Memristive threshold logic cell.
///
/// Equal-weight memristors average the input voltages into `V_A`, which
/// drives an inverter: the output is high iff `V_A < inverter_threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MtlCell {
    input_count: usize,
    inverter_threshold: f64,
    levels: LogicLevels,
}

impl MtlCell {
    pub fn new(input_count: usize, inverter_threshold: f64, levels: LogicLevels) -> Result<Self, HwError> {
        if input_count == 0 {
            return Err(HwError::InvalidParameter {
                what: "MTL input count",
                reason: "must be positive".into(),
            });
        }
        if !(inverter_threshold > levels.v_low && inverter_threshold <= levels.v_high) {
            return Err(HwError::InvalidParameter {
                what: "inverter threshold",
                reason: format!(
                    "{inverter_threshold} V must lie in ({}, {}]",
                    levels.v_low, levels.v_high
                ),
            });
        }
        Ok(Self {
            input_count,
            inverter_threshold,
            levels,
        })
    }

    /// Threshold halfway between "no input high" and "one input high".
    pub fn nor(input_count: usize, levels: LogicLevels) -> Self {
        let step = (levels.v_high - levels.v_low) / input_count as f64;
        Self::new(input_count, levels.v_low + step / 2.0, levels).expect("threshold inside the rails")
    }

    /// Threshold halfway between "all but one high" and "all high".
    pub fn nand(input_count: usize, levels: LogicLevels) -> Self {
        let step = (levels.v_high - levels.v_low) / input_count as f64;
        Self::new(input_count, levels.v_high - step / 2.0, levels).expect("threshold inside the rails")
    }

    pub fn inverter(levels: LogicLevels) -> Self {
        Self::new(1, levels.midpoint(), levels).expect("midpoint inside the rails")
    }

    pub fn input_count(&self) -> usize {
        self.input_count
    }

    pub fn inverter_threshold(&self) -> f64 {
        self.inverter_threshold
    }

    pub fn levels(&self) -> LogicLevels {
        self.levels
    }

    pub fn average_voltage(&self, inputs: &[bool]) -> f64 {
        let sum: f64 = inputs.iter().map(|&b| self.levels.voltage(b)).sum();
        sum / inputs.len() as f64
    }

    pub fn eval(&self, inputs: &[bool]) -> bool {
        assert_eq!(inputs.len(), self.input_count, "MTL cell arity mismatch");
        self.average_voltage(inputs) < self.inverter_threshold
    }

    /// Classifies the cell by how many high inputs it takes to pull the output low.
    pub fn function(&self) -> CellFunction {
        let n = self.input_count;
        let span = self.levels.v_high - self.levels.v_low;
        let flips_at = (0..=n)
            .find(|&k| self.levels.v_low + span * k as f64 / n as f64 >= self.inverter_threshold)
            .unwrap_or(n + 1);
        match (n, flips_at) {
            (1, 1) => CellFunction::Inverter,
            (_, 1) => CellFunction::Nor,
            (_, k) if k == n => CellFunction::Nand,
            _ => CellFunction::Other,
        }
    }
}

pub fn mtl_eval(cell: &MtlCell, inputs: &[bool]) -> bool {
    cell.eval(inputs)
}
