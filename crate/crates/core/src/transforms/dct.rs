use std::sync::OnceLock;

use super::blocks::{Block, BLOCK};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Orthonormal 2D DCT-II coefficients of one 8x8 block, indexed `[row][col]`
/// (vertical then horizontal frequency).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DctBlock<T> {
    pub coeffs: Block<T>,
}

impl<T: Real> DctBlock<T> {
    #[inline]
    pub fn at(&self, (row, col): (usize, usize)) -> T {
        self.coeffs[row][col]
    }

    #[inline]
    pub fn set(&mut self, (row, col): (usize, usize), value: T) {
        self.coeffs[row][col] = value;
    }
}

/// `basis[k][n] = s(k) cos(pi (2n + 1) k / 16)`, `s(0) = sqrt(1/8)`, else `sqrt(2/8)`.
fn basis_f64() -> &'static [[f64; BLOCK]; BLOCK] {
    static BASIS: OnceLock<[[f64; BLOCK]; BLOCK]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let mut m = [[0.0; BLOCK]; BLOCK];
        for (k, row) in m.iter_mut().enumerate() {
            let scale = if k == 0 {
                (1.0 / 8.0f64).sqrt()
            } else {
                (2.0 / 8.0f64).sqrt()
            };
            for (n, v) in row.iter_mut().enumerate() {
                *v = scale * (std::f64::consts::PI * (2 * n + 1) as f64 * k as f64 / 16.0).cos();
            }
        }
        m
    })
}

fn basis<T: Real>() -> Block<T> {
    basis_f64().map(|row| row.map(T::lit))
}

/// `out = m * x * m^T` when `transpose` is false, `m^T * x * m` otherwise.
fn separable<T: Real>(x: &Block<T>, m: &Block<T>, transpose: bool) -> Block<T> {
    let at = |i: usize, j: usize| if transpose { m[j][i] } else { m[i][j] };
    let mut tmp = [[T::zero(); BLOCK]; BLOCK];
    for (i, row) in tmp.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (0..BLOCK).fold(T::zero(), |acc, k| acc + at(i, k) * x[k][j]);
        }
    }
    let mut out = [[T::zero(); BLOCK]; BLOCK];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (0..BLOCK).fold(T::zero(), |acc, k| acc + tmp[i][k] * at(j, k));
        }
    }
    out
}

pub fn dct2_8x8<T: Real>(block: &Block<T>) -> DctBlock<T> {
    DctBlock {
        coeffs: separable(block, &basis(), false),
    }
}

pub fn idct2_8x8<T: Real>(block: &DctBlock<T>) -> Block<T> {
    separable(&block.coeffs, &basis(), true)
}

/// DCT of a row-major slice, which must hold exactly 64 samples.
pub fn dct2_from_slice<T: Real>(samples: &[T]) -> Result<DctBlock<T>> {
    if samples.len() != BLOCK * BLOCK {
        return Err(Error::Dimensions(format!(
            "DCT block needs 64 samples, got {}",
            samples.len()
        )));
    }
    let mut block = [[T::zero(); BLOCK]; BLOCK];
    for (i, &v) in samples.iter().enumerate() {
        block[i / BLOCK][i % BLOCK] = v;
    }
    Ok(dct2_8x8(&block))
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Textbook quadruple sum, independent of the separable path.
    fn naive_dct(x: &Block<f64>) -> Block<f64> {
        let c = |k: usize| if k == 0 { (1.0 / 8.0f64).sqrt() } else { 0.5 };
        let mut out = [[0.0; 8]; 8];
        for (u, row) in out.iter_mut().enumerate() {
            for (v, o) in row.iter_mut().enumerate() {
                let mut s = 0.0;
                for (m, xr) in x.iter().enumerate() {
                    for (n, &val) in xr.iter().enumerate() {
                        s += val
                            * (std::f64::consts::PI * (2 * m + 1) as f64 * u as f64 / 16.0).cos()
                            * (std::f64::consts::PI * (2 * n + 1) as f64 * v as f64 / 16.0).cos();
                    }
                }
                *o = c(u) * c(v) * s;
            }
        }
        out
    }

    #[test]
    fn constant_block_has_dc_8c() {
        let d = dct2_8x8(&[[3.0f64; 8]; 8]);
        assert!((d.coeffs[0][0] - 24.0).abs() < 1e-12);
        for (i, row) in d.coeffs.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if (i, j) != (0, 0) {
                    assert!(v.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn zero_in_zero_out() {
        assert_eq!(dct2_8x8(&[[0.0f64; 8]; 8]).coeffs, [[0.0; 8]; 8]);
        assert_eq!(
            idct2_8x8(&DctBlock {
                coeffs: [[0.0f64; 8]; 8]
            }),
            [[0.0; 8]; 8]
        );
    }

    #[test]
    fn dc_eight_inverts_to_ones() {
        let mut coeffs = [[0.0f64; 8]; 8];
        coeffs[0][0] = 8.0;
        for row in idct2_8x8(&DctBlock { coeffs }) {
            for v in row {
                assert!((v - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn slice_input_must_be_64() {
        assert!(dct2_from_slice(&[0.0f64; 63]).is_err());
        let d = dct2_from_slice(&[1.0f64; 64]).unwrap();
        assert!((d.at((0, 0)) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn single_precision_agrees_with_double() {
        let x = std::array::from_fn(|i| std::array::from_fn(|j| ((i * 8 + j) as f32).sin() * 50.0));
        let x64 = x.map(|r: [f32; 8]| r.map(f64::from));
        let (d32, d64) = (dct2_8x8(&x), dct2_8x8(&x64));
        for i in 0..8 {
            for j in 0..8 {
                assert!((d32.coeffs[i][j] as f64 - d64.coeffs[i][j]).abs() < 1e-3);
            }
        }
    }

    fn block_strategy() -> impl Strategy<Value = Block<f64>> {
        proptest::collection::vec(-255.0f64..255.0, 64)
            .prop_map(|v| std::array::from_fn(|i| std::array::from_fn(|j| v[i * 8 + j])))
    }

    proptest! {
        #[test]
        fn matches_naive_sum(x in block_strategy()) {
            let fast = dct2_8x8(&x);
            let slow = naive_dct(&x);
            for i in 0..8 {
                for j in 0..8 {
                    prop_assert!((fast.coeffs[i][j] - slow[i][j]).abs() < 1e-9);
                }
            }
        }

        #[test]
        fn round_trip_and_parseval(x in block_strategy()) {
            let d = dct2_8x8(&x);
            let back = idct2_8x8(&d);
            let mut e_pix = 0.0;
            let mut e_coef = 0.0;
            for i in 0..8 {
                for j in 0..8 {
                    prop_assert!((back[i][j] - x[i][j]).abs() <= 1e-9);
                    e_pix += x[i][j] * x[i][j];
                    e_coef += d.coeffs[i][j] * d.coeffs[i][j];
                }
            }
            prop_assert!((e_pix - e_coef).abs() <= 1e-9 * e_pix.max(1.0));
        }
    }
}
