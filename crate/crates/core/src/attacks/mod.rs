//! Deterministic signal-processing attacks on RGB byte images.

mod filter;
mod jpeg;
mod noise;

use std::fmt;
use std::str::FromStr;

pub use filter::{gaussian_filter, gaussian_kernel, median_filter, sharpen};
pub use jpeg::{jpeg_roundtrip, quant_tables, CHROMINANCE_BASE, LUMINANCE_BASE};
pub use noise::{gaussian_noise, salt_pepper};

use crate::error::{Error, Result};
use crate::image_io::PlanarImage;

pub const DEFAULT_WINDOW: usize = 3;
pub const DEFAULT_SIGMA: f64 = 0.5;
pub const DEFAULT_SHARPEN: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AttackSpec {
    /// No-op, used for the reference row of a benchmark.
    Identity,
    Jpeg {
        quality: u8,
    },
    /// Additive Gaussian noise; `variance` is on a [0, 1] intensity scale.
    GaussianNoise {
        variance: f64,
        seed: u64,
    },
    /// Fraction `density` of pixel positions forced to black or white.
    SaltPepper {
        density: f64,
        seed: u64,
    },
    MedianFilter {
        window: usize,
    },
    GaussianFilter {
        window: usize,
        sigma: f64,
    },
    /// Unsharp masking against the default Gaussian filter.
    Sharpen {
        amount: f64,
    },
}

impl AttackSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            AttackSpec::Identity => Ok(()),
            AttackSpec::Jpeg { quality } if !(1..=100).contains(&quality) => {
                bad(format!("JPEG quality must be in 1..=100, got {quality}"))
            }
            AttackSpec::GaussianNoise { variance, .. }
                if !(variance >= 0.0 && variance.is_finite()) =>
            {
                bad(format!("noise variance must be >= 0, got {variance}"))
            }
            AttackSpec::SaltPepper { density, .. } if !(0.0..=1.0).contains(&density) => bad(
                format!("salt-and-pepper density must be in [0, 1], got {density}"),
            ),
            AttackSpec::MedianFilter { window } | AttackSpec::GaussianFilter { window, .. }
                if window % 2 == 0 =>
            {
                bad(format!("filter window must be odd, got {window}"))
            }
            AttackSpec::GaussianFilter { sigma, .. } if !(sigma > 0.0 && sigma.is_finite()) => {
                bad(format!("Gaussian sigma must be > 0, got {sigma}"))
            }
            AttackSpec::Sharpen { amount } if !amount.is_finite() => {
                bad(format!("sharpen amount must be finite, got {amount}"))
            }
            _ => Ok(()),
        }
    }

    /// Short attack name as used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            AttackSpec::Identity => "none",
            AttackSpec::Jpeg { .. } => "jpeg",
            AttackSpec::GaussianNoise { .. } => "gn",
            AttackSpec::SaltPepper { .. } => "sp",
            AttackSpec::MedianFilter { .. } => "mf",
            AttackSpec::GaussianFilter { .. } => "gf",
            AttackSpec::Sharpen { .. } => "sh",
        }
    }

    /// Parameter list, `key=value` pairs joined by commas.
    pub fn params(&self) -> String {
        match *self {
            AttackSpec::Identity => String::new(),
            AttackSpec::Jpeg { quality } => format!("q={quality}"),
            AttackSpec::GaussianNoise { variance, seed } => format!("var={variance},seed={seed}"),
            AttackSpec::SaltPepper { density, seed } => format!("d={density},seed={seed}"),
            AttackSpec::MedianFilter { window } => format!("w={window}"),
            AttackSpec::GaussianFilter { window, sigma } => format!("w={window},sigma={sigma}"),
            AttackSpec::Sharpen { amount } => format!("amount={amount}"),
        }
    }

    /// Parses a spec, using `default_seed` for noise attacks that omit `seed`.
    pub fn parse_with_seed(s: &str, default_seed: u64) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = Vec::new();
        for pair in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = pair.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("expected key=value in {pair:?}"))
            })?;
            params.push((k.trim(), v.trim()));
        }
        let mut take = |key: &str| -> Option<&str> {
            let i = params.iter().position(|(k, _)| *k == key)?;
            Some(params.remove(i).1)
        };
        fn num<T: FromStr>(key: &str, v: Option<&str>, default: Option<T>) -> Result<T> {
            match v {
                Some(v) => v
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad value {v:?} for {key}"))),
                None => default.ok_or_else(|| Error::InvalidParameter(format!("missing {key}"))),
            }
        }
        let spec = match kind {
            "none" => AttackSpec::Identity,
            "jpeg" => AttackSpec::Jpeg {
                quality: num("q", take("q"), None)?,
            },
            "gn" => AttackSpec::GaussianNoise {
                variance: num("var", take("var"), None)?,
                seed: num("seed", take("seed"), Some(default_seed))?,
            },
            "sp" => AttackSpec::SaltPepper {
                density: num("d", take("d"), None)?,
                seed: num("seed", take("seed"), Some(default_seed))?,
            },
            "mf" => AttackSpec::MedianFilter {
                window: num("w", take("w"), Some(DEFAULT_WINDOW))?,
            },
            "gf" => AttackSpec::GaussianFilter {
                window: num("w", take("w"), Some(DEFAULT_WINDOW))?,
                sigma: num("sigma", take("sigma"), Some(DEFAULT_SIGMA))?,
            },
            "sh" => AttackSpec::Sharpen {
                amount: num("amount", take("amount"), Some(DEFAULT_SHARPEN))?,
            },
            other => return Err(Error::InvalidParameter(format!("unknown attack {other:?}"))),
        };
        if let Some((k, _)) = params.first() {
            return Err(Error::InvalidParameter(format!(
                "unknown parameter {k:?} for {kind}"
            )));
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for AttackSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttackSpec::Identity => f.write_str("none"),
            _ => write!(f, "{}:{}", self.kind(), self.params()),
        }
    }
}

impl FromStr for AttackSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_seed(s, 0)
    }
}

/// Applies one attack; the output has the input's size and byte domain.
pub fn apply_attack(img: &PlanarImage, spec: &AttackSpec) -> Result<PlanarImage> {
    spec.validate()?;
    img.rgb()?;
    match *spec {
        AttackSpec::Identity => Ok(img.clone()),
        AttackSpec::Jpeg { quality } => jpeg_roundtrip(img, quality),
        AttackSpec::GaussianNoise { variance, seed } => gaussian_noise(img, variance, seed),
        AttackSpec::SaltPepper { density, seed } => salt_pepper(img, density, seed),
        AttackSpec::MedianFilter { window } => median_filter(img, window),
        AttackSpec::GaussianFilter { window, sigma } => gaussian_filter(img, window, sigma),
        AttackSpec::Sharpen { amount } => sharpen(img, amount),
    }
}
