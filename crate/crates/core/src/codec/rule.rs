//! Per-block strength factor and the coefficient-ordering rule.

use super::config::{EmbedConfig, StrengthRule};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::transforms::DctBlock;

/// Extra margin on the 0-bit branch, whose inequality is strict.
pub const EPS_STRICT: f64 = 1e-6;

/// Margin `alpha` for one block, never below `cfg.alpha_floor`.
///
/// With the grouped rule the magnitude sum is first raised to
/// `cfg.magnitude_floor`, so flat blocks get `beta * magnitude_floor`.
pub fn strength_factor<T: Real>(block: &DctBlock<T>, cfg: &EmbedConfig, beta: f64) -> T {
    let a = block.at(cfg.coeff_a).abs();
    let b = block.at(cfg.coeff_b).abs();
    let beta = T::lit(beta);
    let alpha = match cfg.strength_rule {
        StrengthRule::Grouped => (a + b).max(T::lit(cfg.magnitude_floor)) * beta,
        StrengthRule::Literal => a + b * beta,
    };
    alpha.max(T::lit(cfg.alpha_floor))
}

/// Whether the block already encodes `bit` with margin `alpha`:
/// `c_a - c_b >= alpha` for 1, `c_b - c_a > alpha` for 0.
pub fn satisfies_margin<T: Real>(
    block: &DctBlock<T>,
    bit: bool,
    alpha: T,
    cfg: &EmbedConfig,
) -> bool {
    let (a, b) = (block.at(cfg.coeff_a), block.at(cfg.coeff_b));
    if bit {
        a - b >= alpha
    } else {
        b - a > alpha
    }
}

/// Enforces the ordering rule for one bit. A block that already satisfies it
/// is returned unchanged; otherwise the two coefficients are rewritten around
/// their mean so that they differ by exactly the required margin.
pub fn embed_bit<T: Real>(
    block: &DctBlock<T>,
    bit: u8,
    alpha: T,
    cfg: &EmbedConfig,
) -> Result<DctBlock<T>> {
    let bit = match bit {
        0 => false,
        1 => true,
        other => return Err(Error::InvalidBit(other)),
    };
    if alpha.is_nan() || alpha <= T::zero() {
        return Err(Error::InvalidParameter(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if satisfies_margin(block, bit, alpha, cfg) {
        return Ok(*block);
    }
    let two = T::lit(2.0);
    let mean = (block.at(cfg.coeff_a) + block.at(cfg.coeff_b)) / two;
    let gap = if bit {
        alpha
    } else {
        alpha + T::lit(EPS_STRICT)
    };
    // signed offset of c_a from the mean
    let offset = if bit { gap / two } else { -gap / two };
    let mut out = *block;
    let (mut a, mut b) = (mean + offset, mean - offset);
    // absorb floating-point shortfall in the subtraction
    let mut step = T::epsilon() * (mean.abs() + gap).max(T::one());
    while !satisfies_margin_raw(a, b, bit, alpha) {
        if bit {
            a += step;
            b -= step;
        } else {
            a -= step;
            b += step;
        }
        step *= two;
    }
    out.set(cfg.coeff_a, a);
    out.set(cfg.coeff_b, b);
    Ok(out)
}

#[inline]
fn satisfies_margin_raw<T: Real>(a: T, b: T, bit: bool, alpha: T) -> bool {
    if bit {
        a - b >= alpha
    } else {
        b - a > alpha
    }
}
