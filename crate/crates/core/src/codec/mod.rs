//! Watermark embedder and blind extractor.
//!
//! Each bit of the 32x32 logo is written four times: into one 8x8 DCT block
//! of the HL and LH sub-bands of Y and of the LL sub-bands of U and V. A bit
//! is carried by the order of two coefficients mirrored across the block
//! diagonal, `(5, 6)` and `(6, 5)` by default, separated by a margin that
//! scales with their magnitude. Extraction compares the pair in each block
//! and majority-votes the four resulting maps.

mod config;
mod maps;
mod pipeline;
mod rule;

pub use config::{ColorSpace, EmbedConfig, StrengthRule};
pub use maps::{vote, Band, Subband, WatermarkMaps};
pub use pipeline::{
    crop_logo, embed, embed_subbands, extract, extract_maps, logo_extent, EmbedReport, EmbedStage,
    Embedded,
};
pub use rule::{embed_bit, satisfies_margin, strength_factor, EPS_STRICT};
