//! Spectral and physical representations of periodic vector fields.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;

use crate::error::{AdmError, Result};
use crate::lattice::WaveLattice;
use crate::transform::Transform3;

/// Fourier coefficients of a real, zero-mean vector field on the torus.
///
/// Storage follows [`WaveLattice`] ordering, one array per component.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    lattice: WaveLattice,
    coeffs: [Vec<Complex64>; 3],
    divergence_free: bool,
}

/// Samples of a real vector field on the n³ collocation grid `x = L·(i,j,l)/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalField {
    lattice: WaveLattice,
    samples: [Vec<f64>; 3],
}

/// Tolerances used by [`SpectralField::validate`].
pub const MEAN_TOL: f64 = 1e-14;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const DIVERGENCE_TOL: f64 = 1e-12;

impl SpectralField {
    pub fn zeros(lattice: WaveLattice) -> Self {
        let len = lattice.len();
        Self {
            lattice,
            coeffs: [
                vec![Complex64::default(); len],
                vec![Complex64::default(); len],
                vec![Complex64::default(); len],
            ],
            divergence_free: true,
        }
    }

    /// Wraps raw coefficients. The mean and Nyquist modes are zeroed; other
    /// invariants are the caller's responsibility (see [`Self::validate`]).
    pub fn from_coeffs(
        lattice: WaveLattice,
        coeffs: [Vec<Complex64>; 3],
        divergence_free: bool,
    ) -> Result<Self> {
        if coeffs.iter().any(|c| c.len() != lattice.len()) {
            return Err(AdmError::InvalidLattice(format!(
                "coefficient arrays must have n^3 = {} entries",
                lattice.len()
            )));
        }
        let mut f = Self {
            lattice,
            coeffs,
            divergence_free,
        };
        f.enforce_structure();
        Ok(f)
    }

    /// Zeroes the mean and every Nyquist mode.
    fn enforce_structure(&mut self) {
        let lat = self.lattice;
        for c in self.coeffs.iter_mut() {
            c[0] = Complex64::default();
            for (idx, v) in c.iter_mut().enumerate() {
                if lat.is_nyquist(idx) {
                    *v = Complex64::default();
                }
            }
        }
    }

    /// Taylor-Green vortex `(A sin x cos y cos z, −A cos x sin y cos z, 0)` on
    /// the 2π box (the z dependence is dropped when `planar`).
    pub fn taylor_green(lattice: WaveLattice, amplitude: f64, planar: bool) -> Result<Self> {
        let b = lattice.base_wavenumber();
        let phys = PhysicalField::from_fn(lattice, |x| {
            let (sx, cx) = (b * x[0]).sin_cos();
            let (sy, cy) = (b * x[1]).sin_cos();
            let cz = if planar { 1.0 } else { (b * x[2]).cos() };
            [amplitude * sx * cy * cz, -amplitude * cx * sy * cz, 0.0]
        });
        let mut f = phys.to_spectral();
        f.chop(1e-15);
        f.divergence_free = true;
        Ok(f)
    }

    /// Random solenoidal field with `|û_k|² ∝ |k|^{−decay}`, supported on the
    /// 2/3-rule band, scaled so that `||u||₀² = energy`. Deterministic in `seed`.
    pub fn random(lattice: WaveLattice, decay: f64, energy: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = lattice.len();
        let mut coeffs: [Vec<Complex64>; 3] = [
            Vec::with_capacity(len),
            Vec::with_capacity(len),
            Vec::with_capacity(len),
        ];
        for idx in 0..len {
            let k2 = lattice.k2(idx);
            let keep = idx != 0 && !lattice.is_nyquist(idx) && lattice.is_dealiased(idx);
            let amp = if keep { k2.powf(-decay / 4.0) } else { 0.0 };
            for c in coeffs.iter_mut() {
                let (re, im): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                c.push(Complex64::new(re, im) * amp);
            }
        }
        let mut f = Self {
            lattice,
            coeffs,
            divergence_free: false,
        };
        f.symmetrize();
        let mut f = crate::spectral::leray_project(&f);
        let norm = crate::spectral::sobolev_norm(&f, 0.0);
        if norm > 0.0 {
            f.scale_mut(energy.sqrt() / norm);
        }
        f
    }

    pub fn lattice(&self) -> &WaveLattice {
        &self.lattice
    }

    pub fn component(&self, c: usize) -> &[Complex64] {
        &self.coeffs[c]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut [Complex64] {
        &mut self.coeffs[c]
    }

    pub fn components(&self) -> &[Vec<Complex64>; 3] {
        &self.coeffs
    }

    pub fn into_components(self) -> [Vec<Complex64>; 3] {
        self.coeffs
    }

    pub fn is_divergence_free(&self) -> bool {
        self.divergence_free
    }

    pub fn set_divergence_free(&mut self, flag: bool) {
        self.divergence_free = flag;
    }

    /// Coefficient vector at storage index `idx`.
    #[inline]
    pub fn at(&self, idx: usize) -> [Complex64; 3] {
        [self.coeffs[0][idx], self.coeffs[1][idx], self.coeffs[2][idx]]
    }

    #[inline]
    pub fn set(&mut self, idx: usize, v: [Complex64; 3]) {
        for c in 0..3 {
            self.coeffs[c][idx] = v[c];
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .flat_map(|c| c.iter())
            .fold(0.0, |m, v| m.max(v.norm()))
    }

    /// Replaces each coefficient by the Hermitian average `(û_k + conj û_{−k})/2`.
    pub fn symmetrize(&mut self) {
        let lat = self.lattice;
        for c in self.coeffs.iter_mut() {
            let src = c.clone();
            for (idx, v) in c.iter_mut().enumerate() {
                if lat.is_nyquist(idx) {
                    *v = Complex64::default();
                } else {
                    *v = 0.5 * (src[idx] + src[lat.conjugate_index(idx)].conj());
                }
            }
            c[0] = Complex64::default();
        }
    }

    /// Zeroes coefficients smaller than `tol · max|û|`.
    pub fn chop(&mut self, tol: f64) {
        let cut = tol * self.max_abs();
        for c in self.coeffs.iter_mut() {
            for v in c.iter_mut() {
                if v.re.abs() <= cut {
                    v.re = 0.0;
                }
                if v.im.abs() <= cut {
                    v.im = 0.0;
                }
            }
        }
    }

    /// Zeroes every mode outside the 2/3-rule band.
    pub fn dealias_mut(&mut self) {
        let lat = self.lattice;
        for c in self.coeffs.iter_mut() {
            for (idx, v) in c.iter_mut().enumerate() {
                if !lat.is_dealiased(idx) {
                    *v = Complex64::default();
                }
            }
        }
    }

    pub fn scale_mut(&mut self, s: f64) {
        for c in self.coeffs.iter_mut() {
            c.iter_mut().for_each(|v| *v *= s);
        }
    }

    /// Multiplies every mode by `symbol(k²)` (a real Fourier multiplier).
    pub fn map_symbol(&self, symbol: impl Fn(f64) -> f64) -> Self {
        let lat = self.lattice;
        let table: Vec<f64> = (0..lat.len()).map(|i| symbol(lat.k2(i))).collect();
        self.map_table(&table)
    }

    /// Multiplies mode `i` by `table[i]`.
    pub fn map_table(&self, table: &[f64]) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            for (v, s) in c.iter_mut().zip(table) {
                *v *= *s;
            }
        }
        out
    }

    pub fn axpy(&mut self, a: f64, other: &SpectralField) -> Result<()> {
        self.lattice.same_as(&other.lattice)?;
        for (c, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            for (v, w) in c.iter_mut().zip(o) {
                *v += a * w;
            }
        }
        self.divergence_free &= other.divergence_free;
        Ok(())
    }

    pub fn sub(&self, other: &SpectralField) -> Result<SpectralField> {
        let mut out = self.clone();
        out.axpy(-1.0, other)?;
        Ok(out)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.iter().all(|v| v.re.is_finite() && v.im.is_finite()))
    }

    /// Largest `|k·û_k| / (|k| |û_k|)` over nonzero modes.
    pub fn max_divergence_ratio(&self) -> f64 {
        let lat = self.lattice;
        let mut worst: f64 = 0.0;
        for idx in 1..lat.len() {
            let k = lat.wavevector(idx);
            let u = self.at(idx);
            let mag = (u[0].norm_sqr() + u[1].norm_sqr() + u[2].norm_sqr()).sqrt();
            if mag == 0.0 {
                continue;
            }
            let div = k[0] * u[0] + k[1] * u[1] + k[2] * u[2];
            let kn = lat.k2(idx).sqrt();
            worst = worst.max(div.norm() / (kn * mag));
        }
        worst
    }

    /// Checks zero mean, Hermitian symmetry and, when flagged, solenoidality.
    pub fn validate(&self) -> Result<()> {
        let lat = self.lattice;
        let scale = self.max_abs();
        if scale == 0.0 {
            return Ok(());
        }
        for c in 0..3 {
            if self.coeffs[c][0].norm() > MEAN_TOL * scale {
                return Err(AdmError::Domain(format!("component {c} has nonzero mean")));
            }
            for idx in 0..lat.len() {
                let v = self.coeffs[c][idx];
                if lat.is_nyquist(idx) {
                    if v.norm() != 0.0 {
                        return Err(AdmError::Domain("nonzero Nyquist mode".into()));
                    }
                    continue;
                }
                let w = self.coeffs[c][lat.conjugate_index(idx)].conj();
                if (v - w).norm() > HERMITIAN_TOL * scale {
                    return Err(AdmError::Domain(format!(
                        "Hermitian symmetry broken at mode {:?}",
                        lat.mode(idx)
                    )));
                }
            }
        }
        if self.divergence_free && self.max_divergence_ratio() > DIVERGENCE_TOL {
            return Err(AdmError::Domain("field flagged divergence-free is not".into()));
        }
        Ok(())
    }

    /// Evaluates the field on the collocation grid.
    pub fn to_physical(&self) -> PhysicalField {
        let lat = self.lattice;
        let plan = Transform3::cached(lat.n());
        let samples = std::array::from_fn(|c| {
            let mut buf = self.coeffs[c].clone();
            plan.inverse(&mut buf);
            buf.into_iter().map(|v| v.re).collect()
        });
        PhysicalField {
            lattice: lat,
            samples,
        }
    }
}

impl PhysicalField {
    pub fn new(lattice: WaveLattice, samples: [Vec<f64>; 3]) -> Result<Self> {
        if samples.iter().any(|s| s.len() != lattice.len()) {
            return Err(AdmError::InvalidLattice(format!(
                "sample arrays must have n^3 = {} entries",
                lattice.len()
            )));
        }
        Ok(Self { lattice, samples })
    }

    pub fn from_fn(lattice: WaveLattice, f: impl Fn([f64; 3]) -> [f64; 3]) -> Self {
        let h = lattice.grid_spacing();
        let mut samples: [Vec<f64>; 3] = Default::default();
        for idx in 0..lattice.len() {
            let (i, j, l) = lattice.unflat(idx);
            let v = f([i as f64 * h, j as f64 * h, l as f64 * h]);
            for c in 0..3 {
                samples[c].push(v[c]);
            }
        }
        Self { lattice, samples }
    }

    pub fn lattice(&self) -> &WaveLattice {
        &self.lattice
    }

    pub fn component(&self, c: usize) -> &[f64] {
        &self.samples[c]
    }

    pub fn max_speed(&self) -> f64 {
        (0..self.lattice.len())
            .map(|i| {
                let (a, b, c) = (self.samples[0][i], self.samples[1][i], self.samples[2][i]);
                (a * a + b * b + c * c).sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Grid mean of `|u|²`, equal to `||u||₀²` by Parseval.
    pub fn mean_square(&self) -> f64 {
        let sum: f64 = self
            .samples
            .iter()
            .flat_map(|s| s.iter())
            .map(|v| v * v)
            .sum();
        sum / self.lattice.len() as f64
    }

    /// Forward transform. The result is Hermitian-symmetrized with the mean
    /// and Nyquist modes removed; it is not flagged divergence-free.
    pub fn to_spectral(&self) -> SpectralField {
        let lat = self.lattice;
        let plan = Transform3::cached(lat.n());
        let coeffs = std::array::from_fn(|c| {
            let mut buf: Vec<Complex64> = self.samples[c]
                .iter()
                .map(|&v| Complex64::new(v, 0.0))
                .collect();
            plan.forward(&mut buf);
            buf
        });
        let mut f = SpectralField {
            lattice: lat,
            coeffs,
            divergence_free: false,
        };
        f.symmetrize();
        f
    }
}
