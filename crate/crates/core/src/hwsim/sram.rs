use super::HwError;

/// One-bit static RAM cell gated by a word line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SramCell {
    stored: bool,
    word_line: bool,
}

impl SramCell {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn assert_word_line(&mut self) {
        self.word_line = true;
    }

    pub fn deassert_word_line(&mut self) {
        self.word_line = false;
    }

    pub fn word_line(&self) -> bool {
        self.word_line
    }

    pub fn write(&mut self, bit: bool) -> Result<(), HwError> {
        if !self.word_line {
            return Err(HwError::WordLineLow);
        }
        self.stored = bit;
        Ok(())
    }

    pub fn read(&self) -> Result<bool, HwError> {
        if !self.word_line {
            return Err(HwError::WordLineLow);
        }
        Ok(self.stored)
    }

    /// Latched value, observed without a bit-line access.
    pub fn latched(&self) -> bool {
        self.stored
    }
}
