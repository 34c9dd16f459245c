//! PGM reader/writer for the P2 (ASCII) and P5 (binary) variants at maxval 255.

use std::fmt;

use thiserror::Error;

use super::GrayImage;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PgmErrorKind {
    BadMagic,
    BadHeader(&'static str),
    UnsupportedMaxval(u64),
    EmptyImage,
    SampleOutOfRange(u64),
    Truncated { expected: usize, found: usize },
}

impl fmt::Display for PgmErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BadMagic => f.write_str("expected magic number P2 or P5"),
            Self::BadHeader(what) => write!(f, "malformed header: {what}"),
            Self::UnsupportedMaxval(v) => write!(f, "unsupported maxval {v} (only 255)"),
            Self::EmptyImage => f.write_str("zero width or height"),
            Self::SampleOutOfRange(v) => write!(f, "sample {v} exceeds maxval 255"),
            Self::Truncated { expected, found } => {
                write!(f, "truncated payload: expected {expected} samples, found {found}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("PGM error at byte {offset}: {kind}")]
pub struct PgmError {
    pub offset: usize,
    pub kind: PgmErrorKind,
}

impl PgmError {
    fn new(offset: usize, kind: PgmErrorKind) -> Self {
        Self { offset, kind }
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Reads an unsigned decimal token. Returns the start offset with the value.
    fn read_uint(&mut self, what: &'static str) -> Result<(usize, u64), PgmError> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or_else(|| PgmError::new(start, PgmErrorKind::BadHeader(what)))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PgmError::new(start, PgmErrorKind::BadHeader(what)));
        }
        if let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_whitespace() && b != b'#' {
                return Err(PgmError::new(self.pos, PgmErrorKind::BadHeader(what)));
            }
        }
        Ok((start, value))
    }
}

pub fn load_pgm(bytes: &[u8]) -> Result<GrayImage, PgmError> {
    let binary = match bytes.get(..2) {
        Some(b"P2") => false,
        Some(b"P5") => true,
        _ => return Err(PgmError::new(0, PgmErrorKind::BadMagic)),
    };
    let mut cur = Cursor { bytes, pos: 2 };
    if !cur.bytes.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(PgmError::new(2, PgmErrorKind::BadMagic));
    }

    let (w_at, width) = cur.read_uint("width")?;
    let (_, height) = cur.read_uint("height")?;
    if width == 0 || height == 0 {
        return Err(PgmError::new(w_at, PgmErrorKind::EmptyImage));
    }
    let (m_at, maxval) = cur.read_uint("maxval")?;
    if maxval != 255 {
        return Err(PgmError::new(m_at, PgmErrorKind::UnsupportedMaxval(maxval)));
    }
    let count = usize::try_from(width)
        .ok()
        .zip(usize::try_from(height).ok())
        .and_then(|(w, h)| w.checked_mul(h))
        .ok_or_else(|| PgmError::new(w_at, PgmErrorKind::BadHeader("dimensions overflow")))?;

    let pixels = if binary {
        // exactly one whitespace byte separates maxval from the raster
        let start = cur.pos + 1;
        let available = bytes.len().saturating_sub(start);
        if available < count {
            return Err(PgmError::new(
                bytes.len(),
                PgmErrorKind::Truncated {
                    expected: count,
                    found: available,
                },
            ));
        }
        bytes[start..start + count].to_vec()
    } else {
        let mut px = Vec::with_capacity(count);
        for _ in 0..count {
            cur.skip_whitespace_and_comments();
            if cur.pos >= bytes.len() {
                return Err(PgmError::new(
                    cur.pos,
                    PgmErrorKind::Truncated {
                        expected: count,
                        found: px.len(),
                    },
                ));
            }
            let (at, v) = cur.read_uint("sample")?;
            if v > 255 {
                return Err(PgmError::new(at, PgmErrorKind::SampleOutOfRange(v)));
            }
            px.push(v as u8);
        }
        px
    };

    GrayImage::new(width as usize, height as usize, pixels)
        .map_err(|_| PgmError::new(w_at, PgmErrorKind::EmptyImage))
}

pub fn save_pgm(img: &GrayImage, binary: bool) -> Vec<u8> {
    let header = format!(
        "{}\n{} {}\n255\n",
        if binary { "P5" } else { "P2" },
        img.width(),
        img.height()
    );
    let mut out = header.into_bytes();
    if binary {
        out.extend_from_slice(img.pixels());
    } else {
        for y in 0..img.height() {
            let line = img
                .row(y)
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            out.extend_from_slice(line.as_bytes());
            out.push(b'\n');
        }
    }
    out
}
