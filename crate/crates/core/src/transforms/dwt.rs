use crate::error::{Error, Result};
use crate::plane::Plane;
use crate::scalar::Real;

/// The four sub-bands of a one-level 2D decomposition, each half the source
/// size per axis.
///
/// `hl` holds detail along rows (horizontal differences), `lh` detail along
/// columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SubbandSet<T> {
    pub ll: Plane<T>,
    pub lh: Plane<T>,
    pub hl: Plane<T>,
    pub hh: Plane<T>,
}

impl<T: Real> SubbandSet<T> {
    pub fn zeros(width: usize, height: usize) -> Self {
        let z = Plane::filled(width, height, T::zero());
        SubbandSet {
            ll: z.clone(),
            lh: z.clone(),
            hl: z.clone(),
            hh: z,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        self.ll.dims()
    }

    pub fn energy(&self) -> T {
        [&self.ll, &self.lh, &self.hl, &self.hh]
            .into_iter()
            .flat_map(|p| p.as_slice())
            .fold(T::zero(), |acc, &v| acc + v * v)
    }
}

/// Orthonormal Haar analysis: rows then columns with `(a ± b) / sqrt(2)`,
/// evaluated per 2x2 quad as `(±a ± b ± c ± d) / 2`.
pub fn dwt_forward<T: Real>(plane: &Plane<T>) -> Result<SubbandSet<T>> {
    let (w, h) = plane.dims();
    if w == 0 || h == 0 || w % 2 != 0 || h % 2 != 0 {
        return Err(Error::Dimensions(format!(
            "DWT needs even non-zero sides, got {w}x{h}"
        )));
    }
    let half = T::lit(0.5);
    let mut out = SubbandSet::zeros(w / 2, h / 2);
    for y in 0..h / 2 {
        for x in 0..w / 2 {
            let a = plane.get(2 * x, 2 * y);
            let b = plane.get(2 * x + 1, 2 * y);
            let c = plane.get(2 * x, 2 * y + 1);
            let d = plane.get(2 * x + 1, 2 * y + 1);
            out.ll.set(x, y, (a + b + c + d) * half);
            out.hl.set(x, y, (a - b + c - d) * half);
            out.lh.set(x, y, (a + b - c - d) * half);
            out.hh.set(x, y, (a - b - c + d) * half);
        }
    }
    Ok(out)
}

pub fn dwt_inverse<T: Real>(bands: &SubbandSet<T>) -> Result<Plane<T>> {
    let dims = bands.ll.dims();
    if [&bands.lh, &bands.hl, &bands.hh]
        .iter()
        .any(|p| p.dims() != dims)
    {
        return Err(Error::Dimensions("sub-bands differ in size".into()));
    }
    let (w, h) = dims;
    let half = T::lit(0.5);
    let mut plane = Plane::filled(2 * w, 2 * h, T::zero());
    for y in 0..h {
        for x in 0..w {
            let ll = bands.ll.get(x, y);
            let hl = bands.hl.get(x, y);
            let lh = bands.lh.get(x, y);
            let hh = bands.hh.get(x, y);
            plane.set(2 * x, 2 * y, (ll + hl + lh + hh) * half);
            plane.set(2 * x + 1, 2 * y, (ll - hl + lh - hh) * half);
            plane.set(2 * x, 2 * y + 1, (ll + hl - lh - hh) * half);
            plane.set(2 * x + 1, 2 * y + 1, (ll - hl - lh + hh) * half);
        }
    }
    Ok(plane)
}
