use crate::error::{Error, Result};
use crate::plane::Plane;

pub const BLOCK: usize = 8;

/// An 8x8 tile indexed `[row][col]`.
pub type Block<T> = [[T; BLOCK]; BLOCK];

/// Row-major grid of non-overlapping 8x8 tiles covering a plane.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockGrid<T> {
    pub cols: usize,
    pub rows: usize,
    pub blocks: Vec<Block<T>>,
}

impl<T: Copy> BlockGrid<T> {
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> &Block<T> {
        &self.blocks[row * self.cols + col]
    }

    #[inline]
    pub fn get_mut(&mut self, row: usize, col: usize) -> &mut Block<T> {
        &mut self.blocks[row * self.cols + col]
    }
}

pub fn partition_blocks<T: Copy + Default>(plane: &Plane<T>) -> Result<BlockGrid<T>> {
    let (w, h) = plane.dims();
    if w % BLOCK != 0 || h % BLOCK != 0 {
        return Err(Error::Dimensions(format!(
            "{w}x{h} plane does not tile into 8x8 blocks"
        )));
    }
    let (cols, rows) = (w / BLOCK, h / BLOCK);
    let mut blocks = Vec::with_capacity(cols * rows);
    for br in 0..rows {
        for bc in 0..cols {
            let mut block = [[T::default(); BLOCK]; BLOCK];
            for (i, row) in block.iter_mut().enumerate() {
                row.copy_from_slice(&plane.row(br * BLOCK + i)[bc * BLOCK..(bc + 1) * BLOCK]);
            }
            blocks.push(block);
        }
    }
    Ok(BlockGrid { cols, rows, blocks })
}

pub fn reassemble_blocks<T: Copy + Default>(grid: &BlockGrid<T>) -> Plane<T> {
    let mut plane = Plane::filled(grid.cols * BLOCK, grid.rows * BLOCK, T::default());
    for br in 0..grid.rows {
        for bc in 0..grid.cols {
            for (i, row) in grid.get(br, bc).iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    plane.set(bc * BLOCK + j, br * BLOCK + i, v);
                }
            }
        }
    }
    plane
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sub_band_of_256_gives_32_by_32_grid() {
        let grid = partition_blocks(&Plane::filled(256, 256, 0.0f64)).unwrap();
        assert_eq!((grid.rows, grid.cols), (32, 32));
        assert_eq!(grid.blocks.len(), 1024);
    }

    #[test]
    fn grid_is_row_major() {
        let plane = Plane::from_fn(16, 16, |x, y| (y * 16 + x) as f64);
        let grid = partition_blocks(&plane).unwrap();
        assert_eq!((grid.rows, grid.cols), (2, 2));
        assert_eq!(grid.get(0, 1)[0][0], 8.0);
        assert_eq!(grid.get(1, 0)[0][0], 128.0);
        assert_eq!(grid.get(1, 1)[7][7], 255.0);
        assert_eq!(reassemble_blocks(&grid), plane);
    }

    #[test]
    fn indivisible_plane_is_rejected() {
        assert!(partition_blocks(&Plane::filled(20, 20, 0.0f64)).is_err());
        assert!(partition_blocks(&Plane::filled(16, 12, 0i32)).is_err());
    }

    proptest! {
        #[test]
        fn partition_is_a_bijection(c in 1usize..5, r in 1usize..5, seed in any::<i64>()) {
            let plane = Plane::from_fn(c * 8, r * 8, |x, y| seed.wrapping_mul((x * 31 + y * 17) as i64 + 1));
            prop_assert_eq!(reassemble_blocks(&partition_blocks(&plane).unwrap()), plane);
        }
    }
}
