//! Complex FFTs on periodic boxes of dimension 1 to 3 (row-major layout,
//! last axis fastest) plus wavenumber tables.

use crate::C64;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::sync::Arc;

/// Plans for an n-dimensional periodic grid.
pub struct FftNd {
    shape: Vec<usize>,
    forward: Vec<Arc<dyn Fft<f64>>>,
    inverse: Vec<Arc<dyn Fft<f64>>>,
}

impl std::fmt::Debug for FftNd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FftNd").field("shape", &self.shape).finish()
    }
}

impl Clone for FftNd {
    fn clone(&self) -> Self {
        Self {
            shape: self.shape.clone(),
            forward: self.forward.clone(),
            inverse: self.inverse.clone(),
        }
    }
}

impl FftNd {
    pub fn new(shape: &[usize]) -> Self {
        let mut planner = FftPlanner::new();
        let forward = shape.iter().map(|&n| planner.plan_fft_forward(n)).collect();
        let inverse = shape.iter().map(|&n| planner.plan_fft_inverse(n)).collect();
        Self { shape: shape.to_vec(), forward, inverse }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Unnormalised forward transform in place.
    pub fn forward(&self, data: &mut [C64]) {
        self.apply(data, &self.forward);
    }

    /// Inverse transform in place, normalised so that `inverse(forward(u)) = u`.
    pub fn inverse(&self, data: &mut [C64]) {
        self.apply(data, &self.inverse);
        let s = 1.0 / self.len() as f64;
        for z in data.iter_mut() {
            *z *= s;
        }
    }

    fn apply(&self, data: &mut [C64], plans: &[Arc<dyn Fft<f64>>]) {
        assert_eq!(data.len(), self.len(), "field size does not match FFT shape");
        let d = self.shape.len();
        for axis in 0..d {
            let n = self.shape[axis];
            let stride: usize = self.shape[axis + 1..].iter().product();
            let outer: usize = self.shape[..axis].iter().product();
            let plan = &plans[axis];
            if stride == 1 {
                plan.process(data);
                continue;
            }
            let mut line = vec![C64::default(); n];
            for o in 0..outer {
                for s in 0..stride {
                    let base = o * n * stride + s;
                    for (i, z) in line.iter_mut().enumerate() {
                        *z = data[base + i * stride];
                    }
                    plan.process(&mut line);
                    for (i, z) in line.iter().enumerate() {
                        data[base + i * stride] = *z;
                    }
                }
            }
        }
    }
}

/// Angular wavenumbers of an `n`-point periodic grid of length `len`, in FFT order.
pub fn wavenumbers(n: usize, len: f64) -> Vec<f64> {
    let dk = 2.0 * PI / len;
    (0..n)
        .map(|i| {
            let m = if i < n.div_ceil(2) { i as isize } else { i as isize - n as isize };
            dk * m as f64
        })
        .collect()
}

/// Like [`wavenumbers`] but with the Nyquist mode set to zero, which keeps
/// translations of real fields real.
pub fn shift_wavenumbers(n: usize, len: f64) -> Vec<f64> {
    let mut ks = wavenumbers(n, len);
    if n % 2 == 0 && n > 0 {
        ks[n / 2] = 0.0;
    }
    ks
}

/// Node coordinates `-len/2 + i*len/n`.
pub fn nodes(n: usize, len: f64) -> Vec<f64> {
    let h = len / n as f64;
    (0..n).map(|i| -0.5 * len + h * i as f64).collect()
}

/// Periodic representative of `y` in `[-len/2, len/2)`.
pub fn wrap(y: f64, len: f64) -> f64 {
    let mut r = (y + 0.5 * len).rem_euclid(len) - 0.5 * len;
    if r >= 0.5 * len {
        r -= len;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_2d() {
        let fft = FftNd::new(&[8, 16]);
        let orig: Vec<C64> = (0..128).map(|i| C64::new((i as f64).sin(), (i as f64 * 0.3).cos())).collect();
        let mut u = orig.clone();
        fft.forward(&mut u);
        fft.inverse(&mut u);
        for (a, b) in u.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn single_mode_lands_on_its_wavenumber() {
        let n = 32;
        let len = 10.0;
        let ks = wavenumbers(n, len);
        let ys = nodes(n, len);
        let m = 3;
        let mut u: Vec<C64> = ys.iter().map(|&y| C64::from_polar(1.0, ks[m] * y)).collect();
        FftNd::new(&[n]).forward(&mut u);
        let peak = (0..n).max_by(|&a, &b| u[a].norm().partial_cmp(&u[b].norm()).unwrap()).unwrap();
        assert_eq!(peak, m);
    }

    #[test]
    fn wrap_is_periodic() {
        assert!((wrap(21.0, 40.0) + 19.0).abs() < 1e-12);
        assert!((wrap(-20.0, 40.0) + 20.0).abs() < 1e-12);
        assert!((wrap(3.0, 40.0) - 3.0).abs() < 1e-12);
    }
}
