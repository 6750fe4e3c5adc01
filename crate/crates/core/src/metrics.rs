//! Transparency (PSNR, SSIM) and robustness (BER, NC) scores.

use crate::color::rgb_to_yuv;
use crate::error::{Error, Result};
use crate::image_io::{PlanarImage, WatermarkLogo};
use crate::plane::Plane;

const SSIM_WINDOW: usize = 11;
const SSIM_SIGMA: f64 = 1.5;
const SSIM_K1: f64 = 0.01;
const SSIM_K2: f64 = 0.03;
const PEAK: f64 = 255.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QualityReport {
    pub psnr: f64,
    pub ssim: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RobustnessScores {
    pub ber: f64,
    pub nc_literal: f64,
    /// `None` when the reference logo has no 1 bits.
    pub nc_normalized: Option<f64>,
}

fn same_rgb_dims(a: &PlanarImage, b: &PlanarImage) -> Result<()> {
    a.rgb()?;
    b.rgb()?;
    if (a.width(), a.height()) != (b.width(), b.height()) {
        return Err(Error::Dimensions(format!(
            "images differ in size: {}x{} vs {}x{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )));
    }
    Ok(())
}

/// Mean squared error over all three channels jointly.
pub fn mse(a: &PlanarImage, b: &PlanarImage) -> Result<f64> {
    same_rgb_dims(a, b)?;
    let (pa, pb) = (a.rgb()?, b.rgb()?);
    let mut sum = 0.0;
    for (x, y) in pa.iter().zip(pb.iter()) {
        for (&u, &v) in x.as_slice().iter().zip(y.as_slice()) {
            let d = u as f64 - v as f64;
            sum += d * d;
        }
    }
    Ok(sum / (3 * a.width() * a.height()) as f64)
}

/// `10 log10(255^2 / MSE)`; identical images give `f64::INFINITY`.
pub fn psnr(a: &PlanarImage, b: &PlanarImage) -> Result<f64> {
    let mse = mse(a, b)?;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (PEAK * PEAK / mse).log10())
}

fn gaussian_taps() -> [f64; SSIM_WINDOW] {
    let half = (SSIM_WINDOW / 2) as f64;
    let mut taps = [0.0; SSIM_WINDOW];
    for (i, t) in taps.iter_mut().enumerate() {
        let d = i as f64 - half;
        *t = (-d * d / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
    }
    let sum: f64 = taps.iter().sum();
    taps.map(|t| t / sum)
}

/// Separable "valid" filtering: output is `(w - 10) x (h - 10)`.
fn filter_valid(plane: &Plane<f64>, taps: &[f64; SSIM_WINDOW]) -> Plane<f64> {
    let (w, h) = plane.dims();
    let (ow, oh) = (w + 1 - SSIM_WINDOW, h + 1 - SSIM_WINDOW);
    let rows = Plane::from_fn(ow, h, |x, y| {
        let row = plane.row(y);
        taps.iter()
            .enumerate()
            .map(|(k, t)| t * row[x + k])
            .sum::<f64>()
    });
    Plane::from_fn(ow, oh, |x, y| {
        taps.iter()
            .enumerate()
            .map(|(k, t)| t * rows.get(x, y + k))
            .sum()
    })
}

/// Single-scale SSIM of two planes: 11x11 Gaussian window (sigma 1.5),
/// K1 = 0.01, K2 = 0.03, L = 255, averaged over all window positions that
/// fit entirely inside the plane.
pub fn ssim_plane<T: Copy + Into<f64>>(a: &Plane<T>, b: &Plane<T>) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(Error::Dimensions("planes differ in size".into()));
    }
    let (w, h) = a.dims();
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::Dimensions(format!(
            "SSIM needs at least {SSIM_WINDOW}x{SSIM_WINDOW}, got {w}x{h}"
        )));
    }
    let a = a.map(Into::into);
    let b = b.map(Into::into);
    let taps = gaussian_taps();
    let mu_a = filter_valid(&a, &taps);
    let mu_b = filter_valid(&b, &taps);
    let aa = filter_valid(
        &Plane::from_fn(w, h, |x, y| a.get(x, y) * a.get(x, y)),
        &taps,
    );
    let bb = filter_valid(
        &Plane::from_fn(w, h, |x, y| b.get(x, y) * b.get(x, y)),
        &taps,
    );
    let ab = filter_valid(
        &Plane::from_fn(w, h, |x, y| a.get(x, y) * b.get(x, y)),
        &taps,
    );
    let c1 = (SSIM_K1 * PEAK).powi(2);
    let c2 = (SSIM_K2 * PEAK).powi(2);
    let n = mu_a.as_slice().len();
    let total: f64 = (0..n)
        .map(|i| {
            let (ma, mb) = (mu_a.as_slice()[i], mu_b.as_slice()[i]);
            let va = aa.as_slice()[i] - ma * ma;
            let vb = bb.as_slice()[i] - mb * mb;
            let cov = ab.as_slice()[i] - ma * mb;
            ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2))
        })
        .sum();
    Ok(total / n as f64)
}

/// SSIM on the luma `Y = floor((R + 2G + B) / 4)` of two RGB images.
pub fn ssim(a: &PlanarImage, b: &PlanarImage) -> Result<f64> {
    same_rgb_dims(a, b)?;
    let (ya, yb) = (rgb_to_yuv(a)?.y, rgb_to_yuv(b)?.y);
    ssim_plane(&ya.map(f64::from), &yb.map(f64::from))
}

/// SSIM of each of R, G and B.
pub fn ssim_per_channel(a: &PlanarImage, b: &PlanarImage) -> Result<[f64; 3]> {
    same_rgb_dims(a, b)?;
    let (pa, pb) = (a.rgb()?, b.rgb()?);
    Ok([
        ssim_plane(pa[0], pb[0])?,
        ssim_plane(pa[1], pb[1])?,
        ssim_plane(pa[2], pb[2])?,
    ])
}

pub fn quality(a: &PlanarImage, b: &PlanarImage) -> Result<QualityReport> {
    Ok(QualityReport {
        psnr: psnr(a, b)?,
        ssim: ssim(a, b)?,
    })
}

/// Fraction of the 1024 bits that differ.
pub fn ber(w: &WatermarkLogo, w_hat: &WatermarkLogo) -> f64 {
    let wrong = w.iter().zip(w_hat.iter()).filter(|(a, b)| a != b).count();
    wrong as f64 / 1024.0
}

/// Normalized correlation: the literal mean of bitwise products over all
/// 1024 positions, and the same sum divided by the reference's popcount.
pub fn nc(w: &WatermarkLogo, w_hat: &WatermarkLogo) -> (f64, Option<f64>) {
    let both = w.iter().zip(w_hat.iter()).filter(|&(a, b)| a && b).count();
    let ones = w.count_ones();
    let normalized = (ones > 0).then(|| both as f64 / ones as f64);
    (both as f64 / 1024.0, normalized)
}

pub fn robustness(w: &WatermarkLogo, w_hat: &WatermarkLogo) -> RobustnessScores {
    let (nc_literal, nc_normalized) = nc(w, w_hat);
    RobustnessScores {
        ber: ber(w, w_hat),
        nc_literal,
        nc_normalized,
    }
}
