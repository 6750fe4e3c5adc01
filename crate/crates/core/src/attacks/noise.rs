use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::image_io::PlanarImage;

/// Adds zero-mean Gaussian noise with standard deviation `255 * sqrt(variance)`,
/// then rounds and clamps. Samples are drawn plane by plane, row-major.
pub fn gaussian_noise(img: &PlanarImage, variance: f64, seed: u64) -> Result<PlanarImage> {
    if !(variance >= 0.0 && variance.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "noise variance must be >= 0, got {variance}"
        )));
    }
    if variance == 0.0 {
        return Ok(img.clone());
    }
    let normal = Normal::new(0.0, 255.0 * variance.sqrt())
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planes = img
        .rgb()?
        .iter()
        .map(|p| {
            p.map(|v| {
                (v as f64 + normal.sample(&mut rng))
                    .round()
                    .clamp(0.0, 255.0) as u8
            })
        })
        .collect();
    PlanarImage::from_bytes(planes)
}

/// Forces `round(density * pixels)` distinct pixel positions, chosen
/// uniformly, to black or white in all channels; the sampled positions
/// alternate between black and white.
pub fn salt_pepper(img: &PlanarImage, density: f64, seed: u64) -> Result<PlanarImage> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParameter(format!(
            "salt-and-pepper density must be in [0, 1], got {density}"
        )));
    }
    let n = img.width() * img.height();
    let count = (density * n as f64).round() as usize;
    let mut planes: Vec<_> = img.rgb()?.iter().map(|p| (*p).clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (k, pos) in rand::seq::index::sample(&mut rng, n, count)
        .into_iter()
        .enumerate()
    {
        let v = if k % 2 == 0 { 0 } else { 255 };
        for p in planes.iter_mut() {
            p.as_mut_slice()[pos] = v;
        }
    }
    PlanarImage::from_bytes(planes)
}
