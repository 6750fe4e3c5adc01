//! Deterministic synthetic host images.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_host_dims, PlanarImage};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixtureKind {
    /// Gray diagonal ramp, `(x + y) mod 256` in every channel.
    Gradient,
    /// 24-pixel squares of two tinted grays.
    Checker,
    /// Fine luminance grain over a smooth field, lightly tinted.
    Noise(u64),
    /// Smooth shading, oriented stripes, grain and a slowly varying hue.
    Composite(u64),
    /// Concentric sinusoidal rings with a warm tint.
    Rings,
}

impl fmt::Display for FixtureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureKind::Gradient => write!(f, "gradient"),
            FixtureKind::Checker => write!(f, "checker"),
            FixtureKind::Noise(seed) => write!(f, "noise-{seed}"),
            FixtureKind::Composite(seed) => write!(f, "composite-{seed}"),
            FixtureKind::Rings => write!(f, "rings"),
        }
    }
}

impl FromStr for FixtureKind {
    type Err = Error;

    /// Accepts the `Display` form, with `:` or `-` before the seed.
    fn from_str(s: &str) -> Result<Self> {
        let (name, seed) = match s.split_once([':', '-']) {
            Some((name, seed)) => {
                let seed = seed
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad fixture seed in {s:?}")))?;
                (name, Some(seed))
            }
            None => (s, None),
        };
        match (name, seed) {
            ("gradient", None) => Ok(FixtureKind::Gradient),
            ("checker", None) => Ok(FixtureKind::Checker),
            ("rings", None) => Ok(FixtureKind::Rings),
            ("noise", Some(seed)) => Ok(FixtureKind::Noise(seed)),
            ("composite", Some(seed)) => Ok(FixtureKind::Composite(seed)),
            _ => Err(Error::InvalidParameter(format!("unknown fixture {s:?}"))),
        }
    }
}

/// The eight fixtures used when no corpus is given.
pub fn default_corpus() -> [FixtureKind; 8] {
    [
        FixtureKind::Gradient,
        FixtureKind::Checker,
        FixtureKind::Noise(1),
        FixtureKind::Noise(2),
        FixtureKind::Composite(1),
        FixtureKind::Composite(2),
        FixtureKind::Composite(3),
        FixtureKind::Rings,
    ]
}

/// Bilinear value noise on a lattice of seeded uniform values in [-1, 1].
struct ValueNoise {
    cell: f64,
    cols: usize,
    lattice: Vec<f64>,
}

impl ValueNoise {
    fn new(rng: &mut ChaCha8Rng, width: usize, height: usize, cell: usize) -> Self {
        let cols = width / cell + 2;
        let rows = height / cell + 2;
        let lattice = (0..cols * rows)
            .map(|_| rng.random_range(-1.0..=1.0))
            .collect();
        ValueNoise {
            cell: cell as f64,
            cols,
            lattice,
        }
    }

    fn at(&self, x: usize, y: usize) -> f64 {
        let fx = x as f64 / self.cell;
        let fy = y as f64 / self.cell;
        let (ix, iy) = (fx as usize, fy as usize);
        let smooth = |t: f64| t * t * (3.0 - 2.0 * t);
        let (tx, ty) = (smooth(fx - ix as f64), smooth(fy - iy as f64));
        let v = |cx: usize, cy: usize| self.lattice[cy * self.cols + cx];
        let top = v(ix, iy) * (1.0 - tx) + v(ix + 1, iy) * tx;
        let bottom = v(ix, iy + 1) * (1.0 - tx) + v(ix + 1, iy + 1) * tx;
        top * (1.0 - ty) + bottom * ty
    }
}

fn to_byte(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Generates a fixture; both sides must be multiples of 16.
pub fn synth_fixture(kind: FixtureKind, width: usize, height: usize) -> Result<PlanarImage> {
    check_host_dims(width, height)?;
    let img = match kind {
        FixtureKind::Gradient => PlanarImage::rgb_from_fn(width, height, |x, y| {
            let v = ((x + y) % 256) as u8;
            [v, v, v]
        }),
        FixtureKind::Checker => PlanarImage::rgb_from_fn(width, height, |x, y| {
            if (x / 24 + y / 24) % 2 == 0 {
                [72, 84, 96]
            } else {
                [184, 172, 160]
            }
        }),
        FixtureKind::Noise(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = ValueNoise::new(&mut rng, width, height, 64);
            PlanarImage::rgb_from_fn(width, height, |x, y| {
                let luma = 128.0 + 40.0 * field.at(x, y) + rng.random_range(-48.0..48.0);
                let jitter = [
                    rng.random_range(-4.0..4.0),
                    rng.random_range(-4.0..4.0),
                    rng.random_range(-4.0..4.0),
                ];
                [
                    to_byte(luma + 6.0 + jitter[0]),
                    to_byte(luma + jitter[1]),
                    to_byte(luma - 6.0 + jitter[2]),
                ]
            })
        }
        FixtureKind::Composite(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x9e37_79b9));
            let shade = ValueNoise::new(&mut rng, width, height, 96);
            let hue = ValueNoise::new(&mut rng, width, height, 160);
            let angle = rng.random_range(0.0..std::f64::consts::PI);
            let period = rng.random_range(7.0..13.0);
            let (ca, sa) = (angle.cos(), angle.sin());
            PlanarImage::rgb_from_fn(width, height, |x, y| {
                let (xf, yf) = (x as f64, y as f64);
                let stripes = (std::f64::consts::TAU * (xf * ca + yf * sa) / period).sin();
                let luma =
                    128.0 + 60.0 * shade.at(x, y) + 22.0 * stripes + rng.random_range(-14.0..14.0);
                let tint = 18.0 * hue.at(x, y);
                [
                    to_byte(luma + tint),
                    to_byte(luma - 0.3 * tint),
                    to_byte(luma - tint),
                ]
            })
        }
        FixtureKind::Rings => {
            let (cx, cy) = (width as f64 * 0.45, height as f64 * 0.55);
            PlanarImage::rgb_from_fn(width, height, |x, y| {
                let r = ((x as f64 - cx).powi(2) + (y as f64 - cy).powi(2)).sqrt();
                let luma = 128.0 + 70.0 * (r / 5.0).sin() * (-(r / 900.0)).exp();
                [
                    to_byte(luma + 14.0),
                    to_byte(luma + 2.0),
                    to_byte(luma - 12.0),
                ]
            })
        }
    };
    Ok(img)
}
