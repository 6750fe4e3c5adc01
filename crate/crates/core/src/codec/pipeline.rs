//! Embedding and blind extraction over whole images.

use super::config::{ColorSpace, EmbedConfig};
use super::maps::{vote, Band, Subband, WatermarkMaps};
use super::rule::{embed_bit, satisfies_margin, strength_factor};
use crate::color::{quantize_yuv, rgb_to_yuv, yuv_to_rgb};
use crate::error::Result;
use crate::image_io::{check_host_dims, PlanarImage, WatermarkLogo, LOGO_SIDE};
use crate::plane::Plane;
use crate::scalar::Real;
use crate::transforms::{
    dct2_8x8, dwt_forward, dwt_inverse, idct2_8x8, partition_blocks, reassemble_blocks, SubbandSet,
    BLOCK,
};

/// Margin added per repair pass on top of doubling.
const REPAIR_STEP: f64 = 1.0;

/// Rows and columns of the logo a host of this size can carry: one bit per
/// 8x8 block of a half-size sub-band, capped at 32.
pub fn logo_extent(width: usize, height: usize) -> (usize, usize) {
    (
        (height / (2 * BLOCK)).min(LOGO_SIDE),
        (width / (2 * BLOCK)).min(LOGO_SIDE),
    )
}

/// `logo` with every bit outside the top-left `rows x cols` window cleared.
pub fn crop_logo(logo: &WatermarkLogo, (rows, cols): (usize, usize)) -> WatermarkLogo {
    WatermarkLogo::from_fn(|r, c| r < rows && c < cols && logo.get(r, c))
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EmbedReport {
    /// Embedded window of the logo, `(rows, cols)`; smaller than 32x32 when cropped.
    pub extent: (usize, usize),
    pub blocks_embedded: [usize; 4],
    /// Blocks whose coefficients had to be rewritten, per site.
    pub blocks_rewritten: [usize; 4],
    /// Samples clamped when rounding the real YUV planes.
    pub quantize_clamped: usize,
    /// Samples clamped when producing RGB bytes.
    pub rgb_clamped: usize,
    /// Repair passes run after the first embedding.
    pub repair_passes: usize,
    /// Map bits that still disagree with the logo after the last pass.
    pub residual_bit_errors: usize,
}

impl EmbedReport {
    pub fn cropped(&self) -> bool {
        self.extent != (LOGO_SIDE, LOGO_SIDE)
    }

    pub fn clamped(&self) -> usize {
        self.quantize_clamped + self.rgb_clamped
    }

    pub fn total_blocks(&self) -> usize {
        self.blocks_embedded.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Embedded {
    pub image: PlanarImage,
    pub report: EmbedReport,
}

/// Transform-domain state of one embedding pass, before synthesis.
#[derive(Clone, Debug)]
pub struct EmbedStage<T> {
    /// Host decomposition per channel.
    pub host: [SubbandSet<T>; 3],
    /// Same decomposition with the four sites marked.
    pub marked: [SubbandSet<T>; 3],
    /// Margin enforced per block, per site, row-major over `extent`.
    pub alphas: [Vec<T>; 4],
    pub extent: (usize, usize),
    pub rewritten: [usize; 4],
}

fn band<T>(set: &SubbandSet<T>, band: Band) -> &Plane<T> {
    match band {
        Band::Ll => &set.ll,
        Band::Lh => &set.lh,
        Band::Hl => &set.hl,
        Band::Hh => &set.hh,
    }
}

fn band_mut<T>(set: &mut SubbandSet<T>, band: Band) -> &mut Plane<T> {
    match band {
        Band::Ll => &mut set.ll,
        Band::Lh => &mut set.lh,
        Band::Hl => &mut set.hl,
        Band::Hh => &mut set.hh,
    }
}

fn beta_for(site: Subband, cfg: &EmbedConfig) -> f64 {
    match site {
        Subband::HlY | Subband::LhY => cfg.beta_y,
        Subband::LlU => cfg.beta_u,
        Subband::LlV => cfg.beta_v,
    }
}

/// Real-valued working planes: Y, U, V or R, G, B.
fn channel_planes<T: Real>(img: &PlanarImage, space: ColorSpace) -> Result<[Plane<T>; 3]> {
    match space {
        ColorSpace::Yuv => {
            let yuv = rgb_to_yuv(img)?;
            Ok(yuv.planes().map(|p| p.map(|v| T::lit(v as f64))))
        }
        ColorSpace::Rgb => Ok(img.rgb()?.map(|p| p.map(|v| T::lit(v as f64)))),
    }
}

fn analyze<T: Real>(img: &PlanarImage, space: ColorSpace) -> Result<[SubbandSet<T>; 3]> {
    let [a, b, c] = channel_planes::<T>(img, space)?;
    Ok([dwt_forward(&a)?, dwt_forward(&b)?, dwt_forward(&c)?])
}

/// Rounds working planes back to an RGB byte image.
fn synthesize<T: Real>(
    planes: &[Plane<T>; 3],
    space: ColorSpace,
) -> Result<(PlanarImage, usize, usize)> {
    match space {
        ColorSpace::Yuv => {
            let q = quantize_yuv(planes)?;
            let rgb = yuv_to_rgb(&q.value);
            Ok((rgb.value, q.clamped, rgb.clamped))
        }
        ColorSpace::Rgb => {
            let mut clamped = 0;
            let bytes = planes
                .iter()
                .map(|p| {
                    p.map(|v| {
                        let r = v.round().as_f64();
                        if !(0.0..=255.0).contains(&r) {
                            clamped += 1;
                        }
                        r.clamp(0.0, 255.0) as u8
                    })
                })
                .collect();
            Ok((PlanarImage::from_bytes(bytes)?, 0, clamped))
        }
    }
}

fn boosted<T: Real>(alpha: T, passes: u32) -> T {
    if passes == 0 {
        alpha
    } else {
        alpha * T::lit(2f64.powi(passes as i32)) + T::lit(REPAIR_STEP * passes as f64)
    }
}

fn embed_stage<T: Real>(
    host: &[SubbandSet<T>; 3],
    logo: &WatermarkLogo,
    extent: (usize, usize),
    cfg: &EmbedConfig,
    boosts: &[[u32; LOGO_SIDE * LOGO_SIDE]; 4],
) -> Result<EmbedStage<T>> {
    let mut marked = host.clone();
    let mut alphas: [Vec<T>; 4] = Default::default();
    let mut rewritten = [0; 4];
    for site in Subband::ALL {
        let plane = band_mut(&mut marked[site.channel()], site.band());
        let mut grid = partition_blocks(plane)?;
        let beta = beta_for(site, cfg);
        for r in 0..extent.0 {
            for c in 0..extent.1 {
                let block = grid.get_mut(r, c);
                let coeffs = dct2_8x8(block);
                let bit = logo.get(r, c);
                let alpha = boosted(
                    strength_factor(&coeffs, cfg, beta),
                    boosts[site.index()][r * LOGO_SIDE + c],
                );
                let out = embed_bit(&coeffs, bit as u8, alpha, cfg)?;
                assert!(
                    satisfies_margin(&out, bit, alpha, cfg),
                    "margin violated at {site} block ({r}, {c})"
                );
                if out != coeffs {
                    rewritten[site.index()] += 1;
                    *block = idct2_8x8(&out);
                }
                alphas[site.index()].push(alpha);
            }
        }
        *plane = reassemble_blocks(&grid);
    }
    Ok(EmbedStage {
        host: host.clone(),
        marked,
        alphas,
        extent,
        rewritten,
    })
}

/// Runs the transform-domain part of embedding once, with no repair.
pub fn embed_subbands<T: Real>(
    host: &PlanarImage,
    logo: &WatermarkLogo,
    cfg: &EmbedConfig,
) -> Result<EmbedStage<T>> {
    cfg.validate()?;
    check_host_dims(host.width(), host.height())?;
    let bands = analyze::<T>(host, cfg.color_space)?;
    let extent = logo_extent(host.width(), host.height());
    embed_stage(&bands, logo, extent, cfg, &[[0; LOGO_SIDE * LOGO_SIDE]; 4])
}

fn maps_from_bands<T: Real>(
    bands: &[SubbandSet<T>; 3],
    extent: (usize, usize),
    cfg: &EmbedConfig,
) -> Result<WatermarkMaps> {
    let mut maps = [WatermarkLogo::zeros(); 4];
    for site in Subband::ALL {
        let grid = partition_blocks(band(&bands[site.channel()], site.band()))?;
        let map = &mut maps[site.index()];
        for r in 0..extent.0 {
            for c in 0..extent.1 {
                let coeffs = dct2_8x8(grid.get(r, c));
                // ties decode as 1
                map.set(r, c, coeffs.at(cfg.coeff_a) >= coeffs.at(cfg.coeff_b));
            }
        }
    }
    Ok(WatermarkMaps { maps })
}

/// Embeds `logo` into an RGB byte host.
///
/// Hosts smaller than 512x512 carry only the top-left part of the logo that
/// fits; the report records the window. After each pass the output is decoded
/// again and blocks whose bit was flipped by rounding or clamping get a wider
/// margin, for up to `cfg.repair_rounds` extra passes.
pub fn embed<T: Real>(
    host: &PlanarImage,
    logo: &WatermarkLogo,
    cfg: &EmbedConfig,
) -> Result<Embedded> {
    cfg.validate()?;
    check_host_dims(host.width(), host.height())?;
    let bands = analyze::<T>(host, cfg.color_space)?;
    let extent = logo_extent(host.width(), host.height());
    let target = crop_logo(logo, extent);
    let mut boosts = [[0u32; LOGO_SIDE * LOGO_SIDE]; 4];
    let mut pass = 0;
    loop {
        let stage = embed_stage(&bands, logo, extent, cfg, &boosts)?;
        let planes = [
            dwt_inverse(&stage.marked[0])?,
            dwt_inverse(&stage.marked[1])?,
            dwt_inverse(&stage.marked[2])?,
        ];
        let (image, quantize_clamped, rgb_clamped) = synthesize(&planes, cfg.color_space)?;
        let maps = maps_from_bands(&analyze::<T>(&image, cfg.color_space)?, extent, cfg)?;
        let mut errors = 0;
        for (site, map) in maps.iter() {
            for r in 0..extent.0 {
                for c in 0..extent.1 {
                    if map.get(r, c) != target.get(r, c) {
                        errors += 1;
                        boosts[site.index()][r * LOGO_SIDE + c] += 1;
                    }
                }
            }
        }
        if errors == 0 || pass >= cfg.repair_rounds {
            let blocks = extent.0 * extent.1;
            return Ok(Embedded {
                image,
                report: EmbedReport {
                    extent,
                    blocks_embedded: [blocks; 4],
                    blocks_rewritten: stage.rewritten,
                    quantize_clamped,
                    rgb_clamped,
                    repair_passes: pass,
                    residual_bit_errors: errors,
                },
            });
        }
        pass += 1;
    }
}

/// Decodes the four per-site maps from a suspect image, using only the image
/// and the configuration. Bits outside the carried window are 0.
pub fn extract_maps<T: Real>(suspect: &PlanarImage, cfg: &EmbedConfig) -> Result<WatermarkMaps> {
    cfg.validate()?;
    check_host_dims(suspect.width(), suspect.height())?;
    let bands = analyze::<T>(suspect, cfg.color_space)?;
    maps_from_bands(&bands, logo_extent(suspect.width(), suspect.height()), cfg)
}

/// Decodes and majority-votes the watermark.
pub fn extract<T: Real>(suspect: &PlanarImage, cfg: &EmbedConfig) -> Result<WatermarkLogo> {
    Ok(vote(&extract_maps::<T>(suspect, cfg)?))
}
