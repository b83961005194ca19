//! Cubic wave-number lattice of the truncated Fourier representation.
//!
//! Modes are stored in FFT order along each axis: `0, 1, …, n/2−1, −n/2, …, −1`,
//! and flattened row-major with the first axis slowest.

use std::f64::consts::PI;

use crate::error::{AdmError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveLattice {
    n: usize,
    box_size: f64,
}

impl WaveLattice {
    pub fn new(n: usize, box_size: f64) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(AdmError::InvalidLattice(format!(
                "grid size must be even and >= 4, got {n}"
            )));
        }
        if !(box_size.is_finite() && box_size > 0.0) {
            return Err(AdmError::InvalidLattice(format!(
                "box size must be positive, got {box_size}"
            )));
        }
        Ok(Self { n, box_size })
    }

    /// Lattice on the 2π-periodic box, where integer modes are wave vectors.
    pub fn periodic(n: usize) -> Result<Self> {
        Self::new(n, 2.0 * PI)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_size(&self) -> f64 {
        self.box_size
    }

    /// Number of modes (and collocation points) per component.
    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// 2π / L.
    pub fn base_wavenumber(&self) -> f64 {
        2.0 * PI / self.box_size
    }

    pub fn grid_spacing(&self) -> f64 {
        self.box_size / self.n as f64
    }

    /// Signed integer mode for FFT position `i` along one axis.
    #[inline]
    pub fn signed_mode(&self, i: usize) -> i64 {
        let n = self.n as i64;
        let i = i as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    /// FFT position of a signed mode; `None` when outside `[−n/2, n/2−1]`.
    #[inline]
    pub fn position(&self, m: i64) -> Option<usize> {
        let n = self.n as i64;
        if m < -n / 2 || m >= n / 2 {
            None
        } else {
            Some(m.rem_euclid(n) as usize)
        }
    }

    #[inline]
    pub fn flat(&self, i: usize, j: usize, l: usize) -> usize {
        (i * self.n + j) * self.n + l
    }

    #[inline]
    pub fn unflat(&self, idx: usize) -> (usize, usize, usize) {
        let n = self.n;
        (idx / (n * n), (idx / n) % n, idx % n)
    }

    pub fn index_of(&self, m: [i64; 3]) -> Option<usize> {
        Some(self.flat(
            self.position(m[0])?,
            self.position(m[1])?,
            self.position(m[2])?,
        ))
    }

    #[inline]
    pub fn mode(&self, idx: usize) -> [i64; 3] {
        let (i, j, l) = self.unflat(idx);
        [self.signed_mode(i), self.signed_mode(j), self.signed_mode(l)]
    }

    #[inline]
    pub fn wavevector(&self, idx: usize) -> [f64; 3] {
        let m = self.mode(idx);
        let b = self.base_wavenumber();
        [m[0] as f64 * b, m[1] as f64 * b, m[2] as f64 * b]
    }

    #[inline]
    pub fn k2(&self, idx: usize) -> f64 {
        let k = self.wavevector(idx);
        k[0] * k[0] + k[1] * k[1] + k[2] * k[2]
    }

    /// Index of the mode −m. Only meaningful for non-Nyquist modes.
    #[inline]
    pub fn conjugate_index(&self, idx: usize) -> usize {
        let n = self.n;
        let (i, j, l) = self.unflat(idx);
        self.flat((n - i) % n, (n - j) % n, (n - l) % n)
    }

    /// True when any component of the mode equals −n/2.
    #[inline]
    pub fn is_nyquist(&self, idx: usize) -> bool {
        let half = self.n / 2;
        let (i, j, l) = self.unflat(idx);
        i == half || j == half || l == half
    }

    /// Largest retained |m| per axis under the 2/3 rule.
    pub fn dealias_cutoff(&self) -> i64 {
        // keep 3|m| < n
        ((self.n - 1) / 3) as i64
    }

    /// True when the mode survives 2/3-rule truncation.
    #[inline]
    pub fn is_dealiased(&self, idx: usize) -> bool {
        let m = self.mode(idx);
        let n = self.n as i64;
        m.iter().all(|&c| 3 * c.abs() < n)
    }

    /// k² for every mode, in storage order.
    pub fn k2_table(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.k2(i)).collect()
    }

    pub fn same_as(&self, other: &WaveLattice) -> Result<()> {
        if self.n == other.n && self.box_size == other.box_size {
            Ok(())
        } else {
            Err(AdmError::LatticeMismatch {
                left_n: self.n,
                left_l: self.box_size,
                right_n: other.n,
                right_l: other.box_size,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_and_small() {
        assert!(WaveLattice::periodic(7).is_err());
        assert!(WaveLattice::periodic(2).is_err());
        assert!(WaveLattice::new(8, 0.0).is_err());
        assert!(WaveLattice::periodic(4).is_ok());
    }

    #[test]
    fn mode_positions_round_trip() {
        let lat = WaveLattice::periodic(8).unwrap();
        for i in 0..8 {
            assert_eq!(lat.position(lat.signed_mode(i)), Some(i));
        }
        assert_eq!(lat.signed_mode(4), -4);
        assert_eq!(lat.position(4), None);
        assert_eq!(lat.index_of([0, 0, 0]), Some(0));
    }

    #[test]
    fn conjugate_pairs() {
        let lat = WaveLattice::periodic(8).unwrap();
        for idx in 0..lat.len() {
            if lat.is_nyquist(idx) {
                continue;
            }
            let c = lat.conjugate_index(idx);
            let (m, mc) = (lat.mode(idx), lat.mode(c));
            assert_eq!([-m[0], -m[1], -m[2]], mc);
        }
    }

    #[test]
    fn dealias_cutoff_matches_two_thirds() {
        let lat = WaveLattice::periodic(16).unwrap();
        assert_eq!(lat.dealias_cutoff(), 5);
        assert!(lat.is_dealiased(lat.index_of([5, -5, 0]).unwrap()));
        assert!(!lat.is_dealiased(lat.index_of([6, 0, 0]).unwrap()));
    }

    #[test]
    fn wavevectors_scale_with_box() {
        let lat = WaveLattice::new(8, 1.0).unwrap();
        let idx = lat.index_of([1, 0, -2]).unwrap();
        let k = lat.wavevector(idx);
        assert!((k[0] - 2.0 * PI).abs() < 1e-15);
        assert!((k[2] + 4.0 * PI).abs() < 1e-15);
    }
}
