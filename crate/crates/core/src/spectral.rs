//! Sobolev norms, Leray projection and the dealiased pseudo-spectral
//! nonlinear term `∇·(u ⊗ v)`.

use rustfft::num_complex::Complex64;

use crate::error::Result;
use crate::field::{PhysicalField, SpectralField};
use crate::lattice::WaveLattice;
use crate::transform::Transform3;

/// `( Σ_{k≠0} |k|^{2s} |û_k|² )^{1/2}`, summed serially in storage order.
pub fn sobolev_norm(f: &SpectralField, s: f64) -> f64 {
    sobolev_norm_sq(f, s).sqrt()
}

pub fn sobolev_norm_sq(f: &SpectralField, s: f64) -> f64 {
    let lat = f.lattice();
    let mut acc = 0.0;
    for idx in 1..lat.len() {
        let u = f.at(idx);
        let mag2 = u[0].norm_sqr() + u[1].norm_sqr() + u[2].norm_sqr();
        if mag2 == 0.0 {
            continue;
        }
        acc += lat.k2(idx).powf(s) * mag2;
    }
    acc
}

/// Squared weighted norm `Σ_{k≠0} w(k²) |û_k|²`.
pub fn weighted_norm_sq(f: &SpectralField, weight: impl Fn(f64) -> f64) -> f64 {
    let lat = f.lattice();
    let mut acc = 0.0;
    for idx in 1..lat.len() {
        let u = f.at(idx);
        let mag2 = u[0].norm_sqr() + u[1].norm_sqr() + u[2].norm_sqr();
        if mag2 == 0.0 {
            continue;
        }
        acc += weight(lat.k2(idx)) * mag2;
    }
    acc
}

/// Orthogonal projection onto divergence-free fields:
/// `û_k ← û_k − k (k·û_k)/|k|²`.
pub fn leray_project(f: &SpectralField) -> SpectralField {
    let mut out = f.clone();
    leray_project_mut(&mut out);
    out
}

pub fn leray_project_mut(f: &mut SpectralField) {
    let lat = *f.lattice();
    for idx in 1..lat.len() {
        let k = lat.wavevector(idx);
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        let u = f.at(idx);
        let dot = (k[0] * u[0] + k[1] * u[1] + k[2] * u[2]) / k2;
        f.set(
            idx,
            [u[0] - k[0] * dot, u[1] - k[1] * dot, u[2] - k[2] * dot],
        );
    }
    f.set_divergence_free(true);
}

/// Spectral coefficients of `∇·(u ⊗ v)`, i.e. component `i` is
/// `Σ_j ∂_j (u_i v_j)`, with 2/3-rule truncation of the result.
pub fn nonlinear_term(u: &SpectralField, v: &SpectralField) -> Result<SpectralField> {
    u.lattice().same_as(v.lattice())?;
    let lat = *u.lattice();
    let pu = u.to_physical();
    let pv = if std::ptr::eq(u, v) {
        None
    } else {
        Some(v.to_physical())
    };
    let pv = pv.as_ref().unwrap_or(&pu);
    let products = pointwise_products(&pu, pv);
    Ok(divergence_of_tensor(&lat, products))
}

/// Forward transforms of the nine products `u_i v_j` (row-major in `i, j`).
/// When `u` and `v` are the same field only the six distinct products are
/// transformed.
fn pointwise_products(pu: &PhysicalField, pv: &PhysicalField) -> Vec<Vec<Complex64>> {
    let lat = *pu.lattice();
    let plan = Transform3::cached(lat.n());
    let symmetric = std::ptr::eq(pu, pv);
    let mut out: Vec<Vec<Complex64>> = vec![Vec::new(); 9];
    for i in 0..3 {
        for j in 0..3 {
            if symmetric && j < i {
                out[3 * i + j] = out[3 * j + i].clone();
                continue;
            }
            let mut buf: Vec<Complex64> = pu
                .component(i)
                .iter()
                .zip(pv.component(j))
                .map(|(a, b)| Complex64::new(a * b, 0.0))
                .collect();
            plan.forward(&mut buf);
            out[3 * i + j] = buf;
        }
    }
    out
}

fn divergence_of_tensor(lat: &WaveLattice, products: Vec<Vec<Complex64>>) -> SpectralField {
    let len = lat.len();
    let mut out: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![Complex64::default(); len]);
    let i_unit = Complex64::new(0.0, 1.0);
    for idx in 0..len {
        if !lat.is_dealiased(idx) || lat.is_nyquist(idx) {
            continue;
        }
        let k = lat.wavevector(idx);
        for (i, comp) in out.iter_mut().enumerate() {
            let mut acc = Complex64::default();
            for (j, kj) in k.iter().enumerate() {
                acc += kj * products[3 * i + j][idx];
            }
            comp[idx] = i_unit * acc;
        }
    }
    let mut f = SpectralField::from_coeffs(*lat, out, false)
        .expect("coefficient arrays sized from lattice");
    f.symmetrize();
    f
}

/// Grid-mean squared Frobenius norm of `a ⊗ a − b ⊗ b` (including its mean
/// mode). Exact: the quartic integrand is sampled on a grid padded past
/// four times the spectral support.
pub fn tensor_difference_norm_sq(a: &SpectralField, b: &SpectralField) -> Result<f64> {
    a.lattice().same_as(b.lattice())?;
    let n = a.lattice().n();
    let m = quartic_grid_size(n, support_radius(a).max(support_radius(b)));
    let pa = padded_samples(a, m);
    let pb = padded_samples(b, m);
    let len = m * m * m;
    let mut acc = 0.0;
    for x in 0..len {
        for i in 0..3 {
            for j in 0..3 {
                let t = pa[i][x] * pa[j][x] - pb[i][x] * pb[j][x];
                acc += t * t;
            }
        }
    }
    Ok(acc / len as f64)
}

/// Largest `|m_axis|` over nonzero coefficients.
pub fn support_radius(f: &SpectralField) -> usize {
    let lat = f.lattice();
    let mut r = 0;
    for idx in 0..lat.len() {
        let u = f.at(idx);
        if u.iter().any(|v| v.norm_sqr() != 0.0) {
            let m = lat.mode(idx);
            r = r.max(m.iter().map(|c| c.unsigned_abs() as usize).max().unwrap_or(0));
        }
    }
    r
}

/// Even grid size, at least `n`, on which quartic products of fields with
/// support radius `radius` are integrated without aliasing.
pub fn quartic_grid_size(n: usize, radius: usize) -> usize {
    let m = (4 * radius + 2).max(n);
    m + (m % 2)
}

/// Samples of `f` on an `m³` grid (m ≥ n) by zero-padding the spectrum.
pub fn padded_samples(f: &SpectralField, m: usize) -> [Vec<f64>; 3] {
    let lat = f.lattice();
    assert!(m >= lat.n() && m % 2 == 0);
    let plan = Transform3::cached(m);
    let pad = WaveLattice::new(m, lat.box_size()).expect("padded lattice is valid");
    std::array::from_fn(|c| {
        let mut buf = vec![Complex64::default(); m * m * m];
        for (idx, v) in f.component(c).iter().enumerate() {
            if v.norm_sqr() == 0.0 {
                continue;
            }
            let dst = pad
                .index_of(lat.mode(idx))
                .expect("every source mode fits on the padded grid");
            buf[dst] = *v;
        }
        plan.inverse(&mut buf);
        buf.into_iter().map(|v| v.re).collect()
    })
}
