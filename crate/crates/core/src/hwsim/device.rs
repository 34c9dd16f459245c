use super::HwError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResistanceState {
    /// Logic 1.
    LowResistance,
    /// Logic 0.
    HighResistance,
}

impl ResistanceState {
    pub fn bit(self) -> bool {
        matches!(self, ResistanceState::LowResistance)
    }

    pub fn from_bit(bit: bool) -> Self {
        if bit {
            ResistanceState::LowResistance
        } else {
            ResistanceState::HighResistance
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceParams {
    pub v_threshold: f64,
    pub r_on: f64,
    pub r_off: f64,
}

impl DeviceParams {
    pub fn validate(&self) -> Result<(), HwError> {
        if !(self.v_threshold > 0.0) {
            return Err(HwError::InvalidParameter {
                what: "switching threshold",
                reason: format!("{} V must be positive", self.v_threshold),
            });
        }
        if !(self.r_on > 0.0 && self.r_on < self.r_off) {
            return Err(HwError::InvalidParameter {
                what: "device resistances",
                reason: format!("need 0 < r_on ({}) < r_off ({})", self.r_on, self.r_off),
            });
        }
        Ok(())
    }
}

impl Default for DeviceParams {
    /// 1.088 V switching threshold, 0.125 MOhm on, 1.14 MOhm off.
    fn default() -> Self {
        Self {
            v_threshold: 1.088,
            r_on: 0.125e6,
            r_off: 1.14e6,
        }
    }
}

/// Two-state threshold-switching memristor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemristorDevice {
    pub state: ResistanceState,
    pub params: DeviceParams,
}

impl MemristorDevice {
    pub fn new(state: ResistanceState, params: DeviceParams) -> Self {
        Self { state, params }
    }

    pub fn resistance(&self) -> f64 {
        match self.state {
            ResistanceState::LowResistance => self.params.r_on,
            ResistanceState::HighResistance => self.params.r_off,
        }
    }

    /// Applies `v_applied` across the device (positive terminal minus negative).
    pub fn step(self, v_applied: f64) -> Self {
        device_step(self, v_applied)
    }
}

impl Default for MemristorDevice {
    fn default() -> Self {
        Self::new(ResistanceState::HighResistance, DeviceParams::default())
    }
}

pub fn device_step(d: MemristorDevice, v_applied: f64) -> MemristorDevice {
    let vt = d.params.v_threshold;
    let state = if v_applied >= vt {
        ResistanceState::LowResistance
    } else if v_applied <= -vt {
        ResistanceState::HighResistance
    } else {
        d.state
    };
    MemristorDevice { state, ..d }
}
