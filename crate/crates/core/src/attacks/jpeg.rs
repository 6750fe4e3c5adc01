//! In-memory model of baseline JPEG loss: 4:4:4 YCbCr, 8x8 DCT,
//! quantization with IJG-scaled Annex K tables. No entropy coding.

use crate::error::{Error, Result};
use crate::image_io::PlanarImage;
use crate::plane::Plane;
use crate::transforms::{dct2_8x8, idct2_8x8, Block, DctBlock, BLOCK};

/// ITU-T T.81 Table K.1, row-major.
pub const LUMINANCE_BASE: [u16; 64] = [
    16, 11, 10, 16, 24, 40, 51, 61, //
    12, 12, 14, 19, 26, 58, 60, 55, //
    14, 13, 16, 24, 40, 57, 69, 56, //
    14, 17, 22, 29, 51, 87, 80, 62, //
    18, 22, 37, 56, 68, 109, 103, 77, //
    24, 35, 55, 64, 81, 104, 113, 92, //
    49, 64, 78, 87, 103, 121, 120, 101, //
    72, 92, 95, 98, 112, 100, 103, 99,
];

/// ITU-T T.81 Table K.2, row-major.
pub const CHROMINANCE_BASE: [u16; 64] = [
    17, 18, 24, 47, 99, 99, 99, 99, //
    18, 21, 26, 66, 99, 99, 99, 99, //
    24, 26, 56, 99, 99, 99, 99, 99, //
    47, 66, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99,
];

fn scale_table(base: &[u16; 64], scale: u32) -> [u16; 64] {
    base.map(|q| ((q as f64 * scale as f64 / 100.0).round() as u32).clamp(1, 255) as u16)
}

/// Luminance and chrominance tables for `quality` in 1..=100.
pub fn quant_tables(quality: u8) -> Result<([u16; 64], [u16; 64])> {
    if !(1..=100).contains(&quality) {
        return Err(Error::InvalidParameter(format!(
            "JPEG quality must be in 1..=100, got {quality}"
        )));
    }
    let q = quality as u32;
    let scale = if q < 50 { 5000 / q } else { 200 - 2 * q };
    Ok((
        scale_table(&LUMINANCE_BASE, scale),
        scale_table(&CHROMINANCE_BASE, scale),
    ))
}

fn quantize_plane(plane: &Plane<f64>, table: &[u16; 64]) -> Plane<f64> {
    let (w, h) = plane.dims();
    let mut out = Plane::filled(w, h, 0.0);
    for by in (0..h).step_by(BLOCK) {
        for bx in (0..w).step_by(BLOCK) {
            // edge replication for partial blocks
            let block: Block<f64> = std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    plane.get_clamped((bx + j) as isize, (by + i) as isize) - 128.0
                })
            });
            let mut coeffs = dct2_8x8(&block).coeffs;
            for (i, row) in coeffs.iter_mut().enumerate() {
                for (j, c) in row.iter_mut().enumerate() {
                    let q = table[i * BLOCK + j] as f64;
                    *c = (*c / q).round() * q;
                }
            }
            let rec = idct2_8x8(&DctBlock { coeffs });
            for (i, row) in rec.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if bx + j < w && by + i < h {
                        out.set(bx + j, by + i, v + 128.0);
                    }
                }
            }
        }
    }
    out
}

/// Compresses and decompresses an RGB image through the quantizer only.
pub fn jpeg_roundtrip(img: &PlanarImage, quality: u8) -> Result<PlanarImage> {
    let (luma_table, chroma_table) = quant_tables(quality)?;
    let [r, g, b] = img.rgb()?;
    let (w, h) = r.dims();
    let px = |i: usize| {
        (
            r.as_slice()[i] as f64,
            g.as_slice()[i] as f64,
            b.as_slice()[i] as f64,
        )
    };
    let mut y = Plane::filled(w, h, 0.0);
    let mut cb = Plane::filled(w, h, 0.0);
    let mut cr = Plane::filled(w, h, 0.0);
    for i in 0..w * h {
        let (r, g, b) = px(i);
        y.as_mut_slice()[i] = 0.299 * r + 0.587 * g + 0.114 * b;
        cb.as_mut_slice()[i] = -0.168_736 * r - 0.331_264 * g + 0.5 * b + 128.0;
        cr.as_mut_slice()[i] = 0.5 * r - 0.418_688 * g - 0.081_312 * b + 128.0;
    }
    let y = quantize_plane(&y, &luma_table);
    let cb = quantize_plane(&cb, &chroma_table);
    let cr = quantize_plane(&cr, &chroma_table);
    let to_byte = |v: f64| v.round().clamp(0.0, 255.0) as u8;
    Ok(PlanarImage::rgb_from_fn(w, h, |x, yy| {
        let (l, u, v) = (y.get(x, yy), cb.get(x, yy) - 128.0, cr.get(x, yy) - 128.0);
        [
            to_byte(l + 1.402 * v),
            to_byte(l - 0.344_136 * u - 0.714_136 * v),
            to_byte(l + 1.772 * u),
        ]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image_io::{synth_fixture, FixtureKind};
    use crate::metrics::mse;

    #[test]
    fn quality_50_uses_base_tables() {
        let (l, c) = quant_tables(50).unwrap();
        assert_eq!(l, LUMINANCE_BASE);
        assert_eq!(c, CHROMINANCE_BASE);
    }

    #[test]
    fn quality_100_is_all_ones() {
        let (l, c) = quant_tables(100).unwrap();
        assert!(l.iter().chain(c.iter()).all(|&q| q == 1));
    }

    #[test]
    fn low_quality_saturates_at_255() {
        let (l, _) = quant_tables(1).unwrap();
        // scale 5000: 16 * 50 = 800 -> 255
        assert_eq!(l[0], 255);
        let (l10, _) = quant_tables(10).unwrap();
        assert_eq!(l10[0], 80);
        assert!(quant_tables(0).is_err());
    }

    #[test]
    fn quality_100_error_is_small() {
        for kind in [
            FixtureKind::Composite(1),
            FixtureKind::Noise(2),
            FixtureKind::Gradient,
        ] {
            let img = synth_fixture(kind, 128, 128).unwrap();
            let out = jpeg_roundtrip(&img, 100).unwrap();
            let (a, b) = (img.rgb().unwrap(), out.rgb().unwrap());
            let max_dev = a
                .iter()
                .zip(b.iter())
                .flat_map(|(p, q)| p.as_slice().iter().zip(q.as_slice()))
                .map(|(&u, &v)| (u as i32 - v as i32).abs())
                .max()
                .unwrap();
            assert!(max_dev <= 8, "{kind}: {max_dev}");
        }
    }

    #[test]
    fn error_shrinks_as_quality_rises() {
        let img = synth_fixture(FixtureKind::Composite(3), 128, 128).unwrap();
        let errs: Vec<f64> = [30u8, 50, 70, 90, 100]
            .iter()
            .map(|&q| mse(&img, &jpeg_roundtrip(&img, q).unwrap()).unwrap())
            .collect();
        for pair in errs.windows(2) {
            assert!(pair[1] <= pair[0], "{errs:?}");
        }
    }

    #[test]
    fn handles_sizes_not_divisible_by_8() {
        let img = synth_fixture(FixtureKind::Rings, 32, 32).unwrap();
        let [r, g, b] = img.rgb().unwrap();
        let crop = |p: &Plane<u8>| Plane::from_fn(13, 9, |x, y| p.get(x, y));
        let small = PlanarImage::from_bytes(vec![crop(r), crop(g), crop(b)]).unwrap();
        let out = jpeg_roundtrip(&small, 80).unwrap();
        assert_eq!((out.width(), out.height()), (13, 9));
    }
}
