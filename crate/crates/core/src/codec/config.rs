use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::transforms::BLOCK;

/// How the per-block margin is derived from the two selected coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StrengthRule {
    /// `(|c_a| + |c_b|) * beta`
    #[default]
    Grouped,
    /// `|c_a| + |c_b| * beta`, the formula read with ordinary precedence.
    Literal,
}

/// Planes the four embedding sites are taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ColorSpace {
    /// Reversible integer YUV: HL and LH of Y, LL of U, LL of V.
    #[default]
    Yuv,
    /// Baseline directly on R, G, B: HL and LH of R, LL of G, LL of B.
    Rgb,
}

impl fmt::Display for StrengthRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrengthRule::Grouped => "grouped",
            StrengthRule::Literal => "literal",
        })
    }
}

impl FromStr for StrengthRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grouped" => Ok(StrengthRule::Grouped),
            "literal" => Ok(StrengthRule::Literal),
            _ => Err(Error::InvalidParameter(format!(
                "unknown strength rule {s:?}"
            ))),
        }
    }
}

impl fmt::Display for ColorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColorSpace::Yuv => "yuv",
            ColorSpace::Rgb => "rgb",
        })
    }
}

impl FromStr for ColorSpace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "yuv" => Ok(ColorSpace::Yuv),
            "rgb" => Ok(ColorSpace::Rgb),
            _ => Err(Error::InvalidParameter(format!(
                "unknown color space {s:?}"
            ))),
        }
    }
}

/// Embedding parameters. Extraction must use the same coefficient
/// positions and color space.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbedConfig {
    pub beta_y: f64,
    pub beta_u: f64,
    pub beta_v: f64,
    /// Coefficient that must dominate for a 1 bit, `(row, col)`.
    pub coeff_a: (usize, usize),
    /// Its mirror across the block diagonal.
    pub coeff_b: (usize, usize),
    /// Absolute lower bound on the margin.
    pub alpha_floor: f64,
    /// Lower bound on `|c_a| + |c_b|` before scaling by beta, so flat blocks
    /// still get a margin proportional to their channel's beta.
    pub magnitude_floor: f64,
    pub wavelet_levels: usize,
    pub strength_rule: StrengthRule,
    pub color_space: ColorSpace,
    /// Closed-loop passes that widen the margin of blocks whose bit did not
    /// survive integer rounding. Zero disables the loop.
    pub repair_rounds: usize,
}

/// Defaults picked with `examples/tune_beta.rs` on the synthetic corpus.
impl Default for EmbedConfig {
    fn default() -> Self {
        EmbedConfig {
            beta_y: 0.16,
            beta_u: 0.7,
            beta_v: 0.7,
            coeff_a: (5, 6),
            coeff_b: (6, 5),
            alpha_floor: 0.05,
            magnitude_floor: 200.0,
            wavelet_levels: 1,
            strength_rule: StrengthRule::Grouped,
            color_space: ColorSpace::Yuv,
            repair_rounds: 6,
        }
    }
}

impl EmbedConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        for (name, beta) in [
            ("beta_y", self.beta_y),
            ("beta_u", self.beta_u),
            ("beta_v", self.beta_v),
        ] {
            if !(beta.is_finite() && beta > 0.0) {
                return bad(format!(
                    "{name} must be a positive finite number, got {beta}"
                ));
            }
        }
        if self.beta_y > self.beta_u || self.beta_y > self.beta_v {
            return bad(format!(
                "beta_y ({}) must not exceed beta_u ({}) or beta_v ({})",
                self.beta_y, self.beta_u, self.beta_v
            ));
        }
        let (a, b) = (self.coeff_a, self.coeff_b);
        if a.0 >= BLOCK || a.1 >= BLOCK || b.0 >= BLOCK || b.1 >= BLOCK {
            return bad(format!(
                "coefficients {a:?}/{b:?} fall outside the 8x8 block"
            ));
        }
        if a == b || a != (b.1, b.0) {
            return bad(format!(
                "coefficients {a:?} and {b:?} must be distinct mirrors across the diagonal"
            ));
        }
        if !(self.alpha_floor.is_finite() && self.alpha_floor >= 0.0) {
            return bad(format!(
                "alpha_floor must be >= 0, got {}",
                self.alpha_floor
            ));
        }
        if !(self.magnitude_floor.is_finite() && self.magnitude_floor >= 0.0) {
            return bad(format!(
                "magnitude_floor must be >= 0, got {}",
                self.magnitude_floor
            ));
        }
        if self.wavelet_levels != 1 {
            return bad(format!(
                "only one wavelet level is supported, got {}",
                self.wavelet_levels
            ));
        }
        Ok(())
    }
}
