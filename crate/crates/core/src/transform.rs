//! Complex 3D FFT over an n³ cube, built from 1D rustfft plans.
//!
//! Normalization: `forward` divides by n³ so that
//! `u(x) = Σ_k û_k e^{ik·x}` is recovered by the unscaled `inverse`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

pub struct Transform3 {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Transform3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Transform3").field("n", &self.n).finish()
    }
}

static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Transform3>>>> = OnceLock::new();

impl Transform3 {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
        }
    }

    /// Shared plan for grid size `n`.
    pub fn cached(n: usize) -> Arc<Transform3> {
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(Transform3::new(n)))
            .clone()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        self.apply(&*self.fwd, data);
        let scale = 1.0 / (self.n * self.n * self.n) as f64;
        data.iter_mut().for_each(|c| *c *= scale);
    }

    pub fn inverse(&self, data: &mut [Complex64]) {
        self.apply(&*self.inv, data);
    }

    fn apply(&self, plan: &dyn Fft<f64>, data: &mut [Complex64]) {
        let n = self.n;
        let plane = n * n;
        assert_eq!(data.len(), n * plane, "buffer is not n^3");
        let mut scratch = vec![Complex64::default(); plan.get_inplace_scratch_len()];
        let mut buf = vec![Complex64::default(); data.len()];

        // last axis is contiguous: every length-n chunk is one line
        plan.process_with_scratch(data, &mut scratch);

        // middle axis: transpose each (j, l) plane so lines run along j
        for (src, dst) in data.chunks_exact(plane).zip(buf.chunks_exact_mut(plane)) {
            transpose(src, dst, n, n);
        }
        plan.process_with_scratch(&mut buf, &mut scratch);
        for (src, dst) in buf.chunks_exact(plane).zip(data.chunks_exact_mut(plane)) {
            transpose(src, dst, n, n);
        }

        // first axis: view as an n × n² matrix and transpose it
        transpose(data, &mut buf, n, plane);
        plan.process_with_scratch(&mut buf, &mut scratch);
        transpose(&buf, data, plane, n);
    }
}

/// Writes the transpose of the `rows × cols` row-major matrix `src` to `dst`.
fn transpose(src: &[Complex64], dst: &mut [Complex64], rows: usize, cols: usize) {
    for r in 0..rows {
        for c in 0..cols {
            dst[c * rows + r] = src[r * cols + c];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_mode_forward() {
        // u(x) = e^{i(x1 + 2 x3)} on the 2π box
        let n = 8;
        let t = Transform3::new(n);
        let h = 2.0 * std::f64::consts::PI / n as f64;
        let mut data = vec![Complex64::default(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let phase = (i as f64 + 2.0 * l as f64) * h;
                    data[(i * n + j) * n + l] = Complex64::from_polar(1.0, phase);
                }
            }
        }
        t.forward(&mut data);
        let target = (1 * n) * n + 2;
        for (idx, c) in data.iter().enumerate() {
            let expect = if idx == target { 1.0 } else { 0.0 };
            assert!((c.re - expect).abs() < 1e-14 && c.im.abs() < 1e-14, "{idx}: {c}");
        }
    }

    #[test]
    fn inverse_undoes_forward() {
        let n = 6;
        let t = Transform3::cached(n);
        let orig: Vec<Complex64> = (0..n * n * n)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let mut data = orig.clone();
        t.forward(&mut data);
        t.inverse(&mut data);
        for (a, b) in data.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-13);
        }
    }
}
