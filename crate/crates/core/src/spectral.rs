//! Discrete Fourier transforms on periodic lattices.
//!
//! Power-of-two lengths use an iterative radix-2 transform; other lengths fall
//! back to a direct O(n^2) sum. Twiddle factors are evaluated directly rather
//! than by recurrence so that round-off does not grow with the index.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// A precomputed 1D transform of fixed length.
#[derive(Debug, Clone)]
pub struct Fft1d {
    len: usize,
    // exp(-2 pi i k / len), k < len
    twiddles: Vec<Complex64>,
}

impl Fft1d {
    pub fn new(len: usize) -> Self {
        let twiddles = (0..len)
            .map(|k| {
                let theta = -2.0 * PI * (k as f64) / (len as f64);
                Complex64::new(theta.cos(), theta.sin())
            })
            .collect();
        Fft1d { len, twiddles }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// In-place forward transform, F_m = sum_j f_j exp(-2 pi i j m / n).
    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, false);
    }

    /// In-place inverse transform including the 1/n normalization.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, true);
        let scale = 1.0 / self.len as f64;
        for x in data.iter_mut() {
            *x *= scale;
        }
    }

    fn twiddle(&self, k: usize, inverse: bool) -> Complex64 {
        let t = self.twiddles[k % self.len];
        if inverse {
            t.conj()
        } else {
            t
        }
    }

    fn transform(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.len;
        assert_eq!(data.len(), n, "transform length mismatch");
        if n <= 1 {
            return;
        }
        if n.is_power_of_two() {
            self.radix2(data, inverse);
        } else {
            self.direct(data, inverse);
        }
    }

    fn direct(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.len;
        let input = data.to_vec();
        for (m, out) in data.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, x) in input.iter().enumerate() {
                acc += x * self.twiddle((j * m) % n, inverse);
            }
            *out = acc;
        }
    }

    fn radix2(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.len;
        let bits = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if j > i {
                data.swap(i, j);
            }
        }
        let mut size = 2;
        while size <= n {
            let half = size / 2;
            let stride = n / size;
            for start in (0..n).step_by(size) {
                for k in 0..half {
                    let w = self.twiddle(k * stride, inverse);
                    let a = data[start + k];
                    let b = data[start + k + half] * w;
                    data[start + k] = a + b;
                    data[start + k + half] = a - b;
                }
            }
            size *= 2;
        }
    }
}

/// Transform along every axis of a row-major array with `shape.len()` axes
/// of equal length.
#[derive(Debug, Clone)]
pub struct FftNd {
    fft: Fft1d,
    dims: usize,
}

impl FftNd {
    pub fn new(points_per_axis: usize, dims: usize) -> Self {
        FftNd { fft: Fft1d::new(points_per_axis), dims }
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        self.apply(data, false);
    }

    pub fn inverse(&self, data: &mut [Complex64]) {
        self.apply(data, true);
    }

    fn apply(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.fft.len();
        let total = n.pow(self.dims as u32);
        assert_eq!(data.len(), total, "array size does not match grid");
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        for axis in 0..self.dims {
            // elements along `axis` are `stride` apart
            let stride = n.pow((self.dims - 1 - axis) as u32);
            for base in 0..total {
                if (base / stride) % n != 0 {
                    continue;
                }
                for (k, slot) in line.iter_mut().enumerate() {
                    *slot = data[base + k * stride];
                }
                if inverse {
                    self.fft.inverse(&mut line);
                } else {
                    self.fft.forward(&mut line);
                }
                for (k, value) in line.iter().enumerate() {
                    data[base + k * stride] = *value;
                }
            }
        }
    }
}

/// Signed mode index for DFT bin `m` of an `n`-point transform,
/// in the range [-n/2, n/2).
#[inline]
pub fn signed_mode(m: usize, n: usize) -> i64 {
    let m = m as i64;
    let n = n as i64;
    if m >= n - n / 2 {
        m - n
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(data: &[Complex64]) -> Vec<Complex64> {
        let n = data.len();
        (0..n)
            .map(|m| {
                data.iter()
                    .enumerate()
                    .map(|(j, x)| {
                        let th = -2.0 * PI * (j * m) as f64 / n as f64;
                        x * Complex64::new(th.cos(), th.sin())
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn radix2_matches_direct_sum() {
        for &n in &[1usize, 2, 8, 64] {
            let data: Vec<Complex64> =
                (0..n).map(|j| Complex64::new((j as f64 * 0.37).sin(), (j as f64 * 1.3).cos())).collect();
            let mut out = data.clone();
            Fft1d::new(n).forward(&mut out);
            for (a, b) in out.iter().zip(naive(&data)) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn non_power_of_two_round_trip() {
        let n = 12;
        let data: Vec<Complex64> = (0..n).map(|j| Complex64::new(j as f64, -(j as f64))).collect();
        let fft = Fft1d::new(n);
        let mut work = data.clone();
        fft.forward(&mut work);
        fft.inverse(&mut work);
        for (a, b) in work.iter().zip(&data) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn signed_modes_are_symmetric_window() {
        let modes: Vec<i64> = (0..8).map(|m| signed_mode(m, 8)).collect();
        assert_eq!(modes, [0, 1, 2, 3, -4, -3, -2, -1]);
        let modes: Vec<i64> = (0..5).map(|m| signed_mode(m, 5)).collect();
        assert_eq!(modes, [0, 1, 2, -2, -1]);
    }

    #[test]
    fn two_dimensional_transform_separates() {
        let n = 4;
        let plan = FftNd::new(n, 2);
        // exp(2 pi i (j0 + 2 j1) / 4) lands in bin (1, 2)
        let mut data: Vec<Complex64> = (0..n * n)
            .map(|idx| {
                let (j0, j1) = (idx / n, idx % n);
                let th = 2.0 * PI * (j0 + 2 * j1) as f64 / n as f64;
                Complex64::new(th.cos(), th.sin())
            })
            .collect();
        plan.forward(&mut data);
        for (idx, v) in data.iter().enumerate() {
            let expected = if idx == n + 2 { 16.0 } else { 0.0 };
            assert!((v - Complex64::new(expected, 0.0)).norm() < 1e-12);
        }
    }
}
