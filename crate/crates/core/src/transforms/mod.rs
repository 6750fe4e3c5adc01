//! One-level Haar DWT, orthonormal 8x8 DCT-II and 8x8 block tiling.

mod blocks;
mod dct;
mod dwt;

pub use blocks::{partition_blocks, reassemble_blocks, Block, BlockGrid, BLOCK};
pub use dct::{dct2_8x8, dct2_from_slice, idct2_8x8, DctBlock};
pub use dwt::{dwt_forward, dwt_inverse, SubbandSet};
