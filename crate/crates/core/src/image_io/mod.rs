//! In-memory images, netpbm I/O, binary logos and synthetic fixtures.

mod fixture;
mod logo;
mod ppm;

pub use fixture::{default_corpus, synth_fixture, FixtureKind};
pub use logo::{read_logo, write_logo, WatermarkLogo, LOGO_SIDE};
pub use ppm::{decode_ppm, encode_ppm, read_ppm, write_ppm};

use crate::error::{Error, Result};
use crate::plane::Plane;

/// Sample domain of a [`PlanarImage`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleDomain {
    Byte,
    SignedInt,
    Real,
}

impl SampleDomain {
    pub fn name(self) -> &'static str {
        match self {
            SampleDomain::Byte => "byte_0_255",
            SampleDomain::SignedInt => "signed_int",
            SampleDomain::Real => "real",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Planes {
    Byte(Vec<Plane<u8>>),
    SignedInt(Vec<Plane<i32>>),
    Real(Vec<Plane<f64>>),
}

/// A multi-plane image whose planes all share one size.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarImage {
    width: usize,
    height: usize,
    planes: Planes,
}

fn common_dims<T: Copy>(planes: &[Plane<T>]) -> Result<(usize, usize)> {
    let first = planes
        .first()
        .ok_or_else(|| Error::Dimensions("image has no planes".into()))?;
    let dims = first.dims();
    if planes.iter().any(|p| p.dims() != dims) {
        return Err(Error::Dimensions("planes differ in size".into()));
    }
    Ok(dims)
}

impl PlanarImage {
    pub fn new(planes: Planes) -> Result<Self> {
        let (width, height) = match &planes {
            Planes::Byte(p) => common_dims(p)?,
            Planes::SignedInt(p) => common_dims(p)?,
            Planes::Real(p) => common_dims(p)?,
        };
        Ok(PlanarImage {
            width,
            height,
            planes,
        })
    }

    pub fn from_bytes(planes: Vec<Plane<u8>>) -> Result<Self> {
        Self::new(Planes::Byte(planes))
    }

    /// Builds a 3-plane byte image from per-pixel RGB triples.
    pub fn rgb_from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> [u8; 3],
    ) -> Self {
        let mut planes = [
            Plane::filled(width, height, 0u8),
            Plane::filled(width, height, 0u8),
            Plane::filled(width, height, 0u8),
        ];
        for y in 0..height {
            for x in 0..width {
                let px = f(x, y);
                for (plane, v) in planes.iter_mut().zip(px) {
                    plane.set(x, y, v);
                }
            }
        }
        PlanarImage {
            width,
            height,
            planes: Planes::Byte(planes.into()),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn domain(&self) -> SampleDomain {
        match self.planes {
            Planes::Byte(_) => SampleDomain::Byte,
            Planes::SignedInt(_) => SampleDomain::SignedInt,
            Planes::Real(_) => SampleDomain::Real,
        }
    }

    pub fn plane_count(&self) -> usize {
        match &self.planes {
            Planes::Byte(p) => p.len(),
            Planes::SignedInt(p) => p.len(),
            Planes::Real(p) => p.len(),
        }
    }

    pub fn planes(&self) -> &Planes {
        &self.planes
    }

    pub fn byte_planes(&self) -> Result<&[Plane<u8>]> {
        match &self.planes {
            Planes::Byte(p) => Ok(p),
            _ => Err(Error::WrongDomain {
                expected: SampleDomain::Byte.name(),
                found: self.domain().name(),
            }),
        }
    }

    /// The three planes of a byte RGB image.
    pub fn rgb(&self) -> Result<[&Plane<u8>; 3]> {
        let planes = self.byte_planes()?;
        match planes {
            [r, g, b] => Ok([r, g, b]),
            _ => Err(Error::PlaneCount {
                expected: 3,
                found: planes.len(),
            }),
        }
    }

    pub fn into_byte_planes(self) -> Result<Vec<Plane<u8>>> {
        match self.planes {
            Planes::Byte(p) => Ok(p),
            other => Err(Error::WrongDomain {
                expected: SampleDomain::Byte.name(),
                found: PlanarImage {
                    width: 0,
                    height: 0,
                    planes: other,
                }
                .domain()
                .name(),
            }),
        }
    }
}

/// Rejects hosts whose sides are not multiples of 16.
pub fn check_host_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 || !width.is_multiple_of(16) || !height.is_multiple_of(16) {
        return Err(Error::Dimensions(format!(
            "host {width}x{height} must have both sides a non-zero multiple of 16"
        )));
    }
    Ok(())
}
