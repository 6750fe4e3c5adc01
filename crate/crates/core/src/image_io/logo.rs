//! The 32x32 binary watermark payload.

use std::fmt;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ppm::decode_ppm;
use crate::error::{Error, Result};

pub const LOGO_SIDE: usize = 32;

/// A 32x32 binary watermark.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct WatermarkLogo {
    bits: [[bool; LOGO_SIDE]; LOGO_SIDE],
}

impl WatermarkLogo {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = [[false; LOGO_SIDE]; LOGO_SIDE];
        for (r, row) in bits.iter_mut().enumerate() {
            for (c, bit) in row.iter_mut().enumerate() {
                *bit = f(r, c);
            }
        }
        WatermarkLogo { bits }
    }

    pub fn ones() -> Self {
        Self::from_fn(|_, _| true)
    }

    pub fn zeros() -> Self {
        Self::from_fn(|_, _| false)
    }

    /// Alternating bits, 1 at the top-left corner.
    pub fn checkerboard() -> Self {
        Self::from_fn(|r, c| (r + c) % 2 == 0)
    }

    /// Uniform random bits from a seeded ChaCha8 stream.
    pub fn random(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::from_fn(|_, _| rng.random::<bool>())
    }

    /// Builds a logo from a 0/1 matrix; any other value is rejected.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.len() != LOGO_SIDE || rows.iter().any(|r| r.len() != LOGO_SIDE) {
            return Err(Error::LogoShape {
                width,
                height: rows.len(),
            });
        }
        let mut bits = [[false; LOGO_SIDE]; LOGO_SIDE];
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                bits[r][c] = match v {
                    0 => false,
                    1 => true,
                    other => return Err(Error::InvalidBit(other)),
                };
            }
        }
        Ok(WatermarkLogo { bits })
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row][col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, bit: bool) {
        self.bits[row][col] = bit;
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().flatten().copied()
    }

    pub fn count_ones(&self) -> usize {
        self.iter().filter(|&b| b).count()
    }

    /// Plain-text grid: 32 lines of 32 `0`/`1` characters, each newline-terminated.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(LOGO_SIDE * (LOGO_SIDE + 1));
        for row in &self.bits {
            out.extend(row.iter().map(|&b| if b { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(|line| line.trim_end_matches('\r'))
            .filter(|line| !line.is_empty())
            .map(|line| {
                line.chars()
                    .map(|ch| match ch {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        other => Err(Error::LogoContent(format!(
                            "unexpected character {other:?} in logo grid"
                        ))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }
}

impl fmt::Debug for WatermarkLogo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "WatermarkLogo(")?;
        f.write_str(&self.to_text())?;
        write!(f, ")")
    }
}

/// Reads a logo from a P5/P6 raster (thresholded at 128) or a text grid.
pub fn read_logo(path: impl AsRef<Path>) -> Result<WatermarkLogo> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_logo(&bytes)
}

pub(crate) fn decode_logo(bytes: &[u8]) -> Result<WatermarkLogo> {
    if bytes.starts_with(b"P5") || bytes.starts_with(b"P6") {
        let img = decode_ppm(bytes)?;
        if img.width() != LOGO_SIDE || img.height() != LOGO_SIDE {
            return Err(Error::LogoShape {
                width: img.width(),
                height: img.height(),
            });
        }
        let planes = img.byte_planes()?;
        let level = |x: usize, y: usize| -> u32 {
            match planes {
                [gray] => gray.get(x, y) as u32,
                // luma of the reversible transform
                [r, g, b] => (r.get(x, y) as u32 + 2 * g.get(x, y) as u32 + b.get(x, y) as u32) / 4,
                _ => unreachable!("decoder yields 1 or 3 planes"),
            }
        };
        return Ok(WatermarkLogo::from_fn(|r, c| level(c, r) >= 128));
    }
    let text = std::str::from_utf8(bytes)
        .map_err(|_| Error::LogoContent("logo is neither netpbm nor UTF-8 text".into()))?;
    WatermarkLogo::parse_text(text)
}

pub fn write_logo(logo: &WatermarkLogo, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, logo.to_text()).map_err(|e| Error::io(path, e))
}
