use super::{DEFAULT_SIGMA, DEFAULT_WINDOW};
use crate::error::{Error, Result};
use crate::image_io::PlanarImage;
use crate::plane::Plane;

fn check_window(window: usize) -> Result<isize> {
    if window.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "filter window must be odd, got {window}"
        )));
    }
    Ok((window / 2) as isize)
}

fn map_planes(img: &PlanarImage, f: impl Fn(&Plane<u8>) -> Plane<u8>) -> Result<PlanarImage> {
    PlanarImage::from_bytes(img.rgb()?.iter().map(|p| f(p)).collect())
}

/// Per-channel `window x window` median with edge replication.
pub fn median_filter(img: &PlanarImage, window: usize) -> Result<PlanarImage> {
    let r = check_window(window)?;
    map_planes(img, |p| {
        let mut buf = Vec::with_capacity(window * window);
        Plane::from_fn(p.width(), p.height(), |x, y| {
            buf.clear();
            for dy in -r..=r {
                for dx in -r..=r {
                    buf.push(p.get_clamped(x as isize + dx, y as isize + dy));
                }
            }
            let mid = buf.len() / 2;
            *buf.select_nth_unstable(mid).1
        })
    })
}

/// Normalized `window x window` Gaussian kernel, row-major.
pub fn gaussian_kernel(window: usize, sigma: f64) -> Result<Vec<f64>> {
    let r = check_window(window)?;
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "Gaussian sigma must be > 0, got {sigma}"
        )));
    }
    let mut k = Vec::with_capacity(window * window);
    for dy in -r..=r {
        for dx in -r..=r {
            k.push((-((dx * dx + dy * dy) as f64) / (2.0 * sigma * sigma)).exp());
        }
    }
    let sum: f64 = k.iter().sum();
    Ok(k.into_iter().map(|v| v / sum).collect())
}

fn convolve(p: &Plane<u8>, kernel: &[f64], r: isize) -> Plane<f64> {
    Plane::from_fn(p.width(), p.height(), |x, y| {
        let mut acc = 0.0;
        let mut k = kernel.iter();
        for dy in -r..=r {
            for dx in -r..=r {
                acc += k.next().expect("kernel sized to window")
                    * p.get_clamped(x as isize + dx, y as isize + dy) as f64;
            }
        }
        acc
    })
}

fn to_byte(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

pub fn gaussian_filter(img: &PlanarImage, window: usize, sigma: f64) -> Result<PlanarImage> {
    let kernel = gaussian_kernel(window, sigma)?;
    let r = (window / 2) as isize;
    map_planes(img, |p| convolve(p, &kernel, r).map(to_byte))
}

/// Unsharp masking: `in + amount * (in - blur(in))` against the default
/// 3x3, sigma 0.5 Gaussian.
pub fn sharpen(img: &PlanarImage, amount: f64) -> Result<PlanarImage> {
    if !amount.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "sharpen amount must be finite, got {amount}"
        )));
    }
    let kernel = gaussian_kernel(DEFAULT_WINDOW, DEFAULT_SIGMA)?;
    let r = (DEFAULT_WINDOW / 2) as isize;
    map_planes(img, |p| {
        let blurred = convolve(p, &kernel, r);
        Plane::from_fn(p.width(), p.height(), |x, y| {
            let v = p.get(x, y) as f64;
            to_byte(v + amount * (v - blurred.get(x, y)))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image_io::{synth_fixture, FixtureKind};

    #[test]
    fn median_of_constant_is_constant() {
        let img = PlanarImage::rgb_from_fn(16, 16, |_, _| [9, 99, 199]);
        assert_eq!(median_filter(&img, 3).unwrap(), img);
    }

    #[test]
    fn median_removes_isolated_spike() {
        let img = PlanarImage::rgb_from_fn(
            8,
            8,
            |x, y| if (x, y) == (4, 4) { [255; 3] } else { [10; 3] },
        );
        let out = median_filter(&img, 3).unwrap();
        assert!(out.rgb().unwrap()[0].as_slice().iter().all(|&v| v == 10));
    }

    #[test]
    fn kernel_is_normalized_and_symmetric() {
        let k = gaussian_kernel(3, 0.5).unwrap();
        assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(k[0], k[8]);
        assert_eq!(k[1], k[7]);
        assert!(k[4] > k[1] && k[1] > k[0]);
        assert!(gaussian_kernel(4, 0.5).is_err());
        assert!(gaussian_kernel(3, 0.0).is_err());
    }

    #[test]
    fn gaussian_filter_keeps_constant_image() {
        let img = PlanarImage::rgb_from_fn(16, 16, |_, _| [40, 80, 120]);
        assert_eq!(gaussian_filter(&img, 3, 0.5).unwrap(), img);
        assert_eq!(gaussian_filter(&img, 5, 2.0).unwrap(), img);
    }

    #[test]
    fn sharpen_zero_is_identity_and_positive_adds_contrast() {
        let img = synth_fixture(FixtureKind::Checker, 48, 48).unwrap();
        assert_eq!(sharpen(&img, 0.0).unwrap(), img);
        let out = sharpen(&img, 1.0).unwrap();
        // dark side of an edge gets darker
        let before = img.rgb().unwrap()[1].get(23, 10);
        let after = out.rgb().unwrap()[1].get(23, 10);
        assert!(after < before, "{after} vs {before}");
    }
}
