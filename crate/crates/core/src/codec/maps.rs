use std::fmt;

use crate::image_io::WatermarkLogo;

/// Band of a one-level decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Band {
    Ll,
    Lh,
    Hl,
    Hh,
}

/// One of the four embedding sites.
///
/// Names follow the YUV layout; in RGB mode channel 0 is R, 1 is G, 2 is B.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subband {
    HlY,
    LhY,
    LlU,
    LlV,
}

impl Subband {
    pub const ALL: [Subband; 4] = [Subband::HlY, Subband::LhY, Subband::LlU, Subband::LlV];

    pub fn channel(self) -> usize {
        match self {
            Subband::HlY | Subband::LhY => 0,
            Subband::LlU => 1,
            Subband::LlV => 2,
        }
    }

    pub fn band(self) -> Band {
        match self {
            Subband::HlY => Band::Hl,
            Subband::LhY => Band::Lh,
            Subband::LlU | Subband::LlV => Band::Ll,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Subband {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subband::HlY => "hl_y",
            Subband::LhY => "lh_y",
            Subband::LlU => "ll_u",
            Subband::LlV => "ll_v",
        })
    }
}

/// The four independently extracted copies of the watermark.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WatermarkMaps {
    pub maps: [WatermarkLogo; 4],
}

impl WatermarkMaps {
    pub fn get(&self, site: Subband) -> &WatermarkLogo {
        &self.maps[site.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subband, &WatermarkLogo)> {
        Subband::ALL.into_iter().zip(self.maps.iter())
    }
}

/// Majority vote: a bit is 1 when at least two of the four maps say 1.
pub fn vote(maps: &WatermarkMaps) -> WatermarkLogo {
    WatermarkLogo::from_fn(|r, c| maps.maps.iter().filter(|m| m.get(r, c)).count() > 1)
}
