//! Reversible integer RGB <-> YUV:
//! `Y = floor((R + 2G + B) / 4)`, `U = R - G`, `V = B - G`, inverted by
//! `G = Y - floor((U + V) / 4)`, `R = U + G`, `B = V + G`.

use crate::error::{Error, Result};
use crate::image_io::{PlanarImage, Planes};
use crate::plane::Plane;
use crate::scalar::Real;

pub const CHROMA_MIN: i32 = -255;
pub const CHROMA_MAX: i32 = 255;

/// Integer YUV planes.
#[derive(Clone, Debug, PartialEq)]
pub struct YuvImage {
    pub y: Plane<i32>,
    pub u: Plane<i32>,
    pub v: Plane<i32>,
}

impl YuvImage {
    pub fn new(y: Plane<i32>, u: Plane<i32>, v: Plane<i32>) -> Result<Self> {
        if y.dims() != u.dims() || y.dims() != v.dims() {
            return Err(Error::Dimensions("Y, U and V planes differ in size".into()));
        }
        Ok(YuvImage { y, u, v })
    }

    /// Wraps a 3-plane signed-integer image; any other domain is rejected.
    pub fn from_planar(img: PlanarImage) -> Result<Self> {
        let domain = img.domain();
        match img.planes().clone() {
            Planes::SignedInt(p) => match <[Plane<i32>; 3]>::try_from(p) {
                Ok([y, u, v]) => YuvImage::new(y, u, v),
                Err(p) => Err(Error::PlaneCount {
                    expected: 3,
                    found: p.len(),
                }),
            },
            _ => Err(Error::WrongDomain {
                expected: "signed_int",
                found: domain.name(),
            }),
        }
    }

    pub fn width(&self) -> usize {
        self.y.width()
    }

    pub fn height(&self) -> usize {
        self.y.height()
    }

    pub fn planes(&self) -> [&Plane<i32>; 3] {
        [&self.y, &self.u, &self.v]
    }
}

#[inline]
pub fn rgb_to_yuv_pixel(r: i32, g: i32, b: i32) -> (i32, i32, i32) {
    ((r + 2 * g + b).div_euclid(4), r - g, b - g)
}

/// Inverse transform; the floor rounds toward negative infinity since `U + V`
/// may be negative.
#[inline]
pub fn yuv_to_rgb_pixel(y: i32, u: i32, v: i32) -> (i32, i32, i32) {
    let g = y - (u + v).div_euclid(4);
    (u + g, g, v + g)
}

pub fn rgb_to_yuv(img: &PlanarImage) -> Result<YuvImage> {
    let [r, g, b] = img.rgb()?;
    let (w, h) = r.dims();
    let mut y_plane = Plane::filled(w, h, 0);
    let mut u_plane = Plane::filled(w, h, 0);
    let mut v_plane = Plane::filled(w, h, 0);
    for (i, ((&r, &g), &b)) in r
        .as_slice()
        .iter()
        .zip(g.as_slice())
        .zip(b.as_slice())
        .enumerate()
    {
        let (y, u, v) = rgb_to_yuv_pixel(r as i32, g as i32, b as i32);
        y_plane.as_mut_slice()[i] = y;
        u_plane.as_mut_slice()[i] = u;
        v_plane.as_mut_slice()[i] = v;
    }
    Ok(YuvImage {
        y: y_plane,
        u: u_plane,
        v: v_plane,
    })
}

/// Result of an operation that may clamp samples into range.
#[derive(Clone, Debug, PartialEq)]
pub struct Clamped<T> {
    pub value: T,
    /// Number of individual samples that were clamped.
    pub clamped: usize,
}

/// Inverse transform followed by clamping to bytes.
pub fn yuv_to_rgb(yuv: &YuvImage) -> Clamped<PlanarImage> {
    let mut clamped = 0;
    let mut clamp = |v: i32| -> u8 {
        if !(0..=255).contains(&v) {
            clamped += 1;
        }
        v.clamp(0, 255) as u8
    };
    let (w, h) = yuv.y.dims();
    let mut planes = [
        Plane::filled(w, h, 0u8),
        Plane::filled(w, h, 0u8),
        Plane::filled(w, h, 0u8),
    ];
    for i in 0..w * h {
        let (r, g, b) = yuv_to_rgb_pixel(
            yuv.y.as_slice()[i],
            yuv.u.as_slice()[i],
            yuv.v.as_slice()[i],
        );
        planes[0].as_mut_slice()[i] = clamp(r);
        planes[1].as_mut_slice()[i] = clamp(g);
        planes[2].as_mut_slice()[i] = clamp(b);
    }
    let value = PlanarImage::from_bytes(planes.into()).expect("planes share dimensions");
    Clamped { value, clamped }
}

/// Rounds real YUV planes half away from zero, clamping Y to [0, 255] and
/// U, V to [-255, 255].
pub fn quantize_yuv<T: Real>(planes: &[Plane<T>; 3]) -> Result<Clamped<YuvImage>> {
    let mut clamped = 0;
    let mut quantize = |plane: &Plane<T>, lo: i32, hi: i32| -> Plane<i32> {
        plane.map(|v| {
            let r = v.round().as_f64();
            if r < lo as f64 || r > hi as f64 {
                clamped += 1;
            }
            r.clamp(lo as f64, hi as f64) as i32
        })
    };
    let y = quantize(&planes[0], 0, 255);
    let u = quantize(&planes[1], CHROMA_MIN, CHROMA_MAX);
    let v = quantize(&planes[2], CHROMA_MIN, CHROMA_MAX);
    Ok(Clamped {
        value: YuvImage::new(y, u, v)?,
        clamped,
    })
}
