//! Blind watermarking of color images.
//!
//! A 32x32 binary logo is hidden four times in a color image: in the HL and
//! LH Haar sub-bands of the luma plane of a reversible integer YUV transform,
//! and in the LL sub-bands of both chroma planes. Every sub-band is tiled
//! into 8x8 blocks and each block carries one bit through the ordering of two
//! mirrored DCT coefficients. Extraction needs only the marked image.
//!
//! The transform and codec code is generic over the float type ([`Real`],
//! implemented for `f32` and `f64`); the aliases below name the common
//! instantiations.

pub mod attacks;
pub mod bench;
pub mod codec;
pub mod color;
mod error;
pub mod image_io;
pub mod metrics;
mod plane;
mod scalar;
pub mod transforms;

pub use attacks::{apply_attack, AttackSpec};
pub use codec::{
    embed, extract, extract_maps, vote, ColorSpace, EmbedConfig, EmbedReport, Embedded,
    StrengthRule, Subband, WatermarkMaps,
};
pub use color::YuvImage;
pub use error::{Error, Result};
pub use image_io::{PlanarImage, SampleDomain, WatermarkLogo};
pub use plane::Plane;
pub use scalar::Real;

pub type Plane64 = Plane<f64>;
pub type Plane32 = Plane<f32>;
pub type SubbandSet64 = transforms::SubbandSet<f64>;
pub type SubbandSet32 = transforms::SubbandSet<f32>;
pub type DctBlock64 = transforms::DctBlock<f64>;
pub type DctBlock32 = transforms::DctBlock<f32>;
pub type EmbedStage64 = codec::EmbedStage<f64>;

/// [`embed`] in double precision.
pub fn embed_f64(host: &PlanarImage, logo: &WatermarkLogo, cfg: &EmbedConfig) -> Result<Embedded> {
    embed::<f64>(host, logo, cfg)
}

/// [`extract`] in double precision.
pub fn extract_f64(suspect: &PlanarImage, cfg: &EmbedConfig) -> Result<WatermarkLogo> {
    extract::<f64>(suspect, cfg)
}

/// [`extract_maps`] in double precision.
pub fn extract_maps_f64(suspect: &PlanarImage, cfg: &EmbedConfig) -> Result<WatermarkMaps> {
    extract_maps::<f64>(suspect, cfg)
}
