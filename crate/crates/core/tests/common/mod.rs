//! Reference implementations that share no code with the library: direct
//! trigonometric sums instead of FFTs, explicit series instead of closed
//! forms.

#![allow(dead_code)]

use std::f64::consts::PI;

use adm_core::SpectralField;
use rustfft::num_complex::Complex64;

pub type C = Complex64;

/// Signed mode of FFT position `i` on an `n`-point axis.
pub fn signed(i: usize, n: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

/// Applies `out[a] = Σ_b kernel(a, b) in[b]` along each of the three axes of a
/// cube, mapping extent `n_in` to `n_out`. Storage is row-major, first axis
/// slowest.
fn separable(data: &[C], n_in: usize, n_out: usize, kernel: &dyn Fn(usize, usize) -> C) -> Vec<C> {
    let k: Vec<Vec<C>> = (0..n_out)
        .map(|a| (0..n_in).map(|b| kernel(a, b)).collect())
        .collect();
    // last axis
    let mut s1 = vec![C::default(); n_in * n_in * n_out];
    for i in 0..n_in {
        for j in 0..n_in {
            for a in 0..n_out {
                let mut acc = C::default();
                for b in 0..n_in {
                    acc += k[a][b] * data[(i * n_in + j) * n_in + b];
                }
                s1[(i * n_in + j) * n_out + a] = acc;
            }
        }
    }
    // middle axis
    let mut s2 = vec![C::default(); n_in * n_out * n_out];
    for i in 0..n_in {
        for a in 0..n_out {
            for l in 0..n_out {
                let mut acc = C::default();
                for b in 0..n_in {
                    acc += k[a][b] * s1[(i * n_in + b) * n_out + l];
                }
                s2[(i * n_out + a) * n_out + l] = acc;
            }
        }
    }
    // first axis
    let mut s3 = vec![C::default(); n_out * n_out * n_out];
    for a in 0..n_out {
        for j in 0..n_out {
            for l in 0..n_out {
                let mut acc = C::default();
                for b in 0..n_in {
                    acc += k[a][b] * s2[(b * n_out + j) * n_out + l];
                }
                s3[(a * n_out + j) * n_out + l] = acc;
            }
        }
    }
    s3
}

/// `u(x_p) = Σ_k û_k e^{ik·x_p}` on a uniform `m³` grid (any m) from the
/// coefficients of an `n³` lattice.
pub fn synthesize(coeffs: &[C], n: usize, m: usize) -> Vec<f64> {
    let kernel = move |p: usize, i: usize| {
        let phase = 2.0 * PI * signed(i, n) as f64 * p as f64 / m as f64;
        C::from_polar(1.0, phase)
    };
    separable(coeffs, n, m, &kernel).into_iter().map(|c| c.re).collect()
}

/// `f̂_k = n⁻³ Σ_x f(x) e^{−ik·x}` on an `n³` grid.
pub fn analyze(samples: &[f64], n: usize) -> Vec<C> {
    let data: Vec<C> = samples.iter().map(|&v| C::new(v, 0.0)).collect();
    let kernel = move |i: usize, p: usize| {
        let phase = -2.0 * PI * signed(i, n) as f64 * p as f64 / n as f64;
        C::from_polar(1.0, phase)
    };
    let scale = 1.0 / (n * n * n) as f64;
    separable(&data, n, n, &kernel)
        .into_iter()
        .map(|c| c * scale)
        .collect()
}

/// Signed modes of storage index `idx`.
pub fn modes(idx: usize, n: usize) -> [i64; 3] {
    [
        signed(idx / (n * n), n),
        signed((idx / n) % n, n),
        signed(idx % n, n),
    ]
}

pub fn flat(m: [i64; 3], n: usize) -> usize {
    let pos = |v: i64| v.rem_euclid(n as i64) as usize;
    (pos(m[0]) * n + pos(m[1])) * n + pos(m[2])
}

/// Wave vector of storage index `idx` on a box of side `l`.
pub fn wavevector(idx: usize, n: usize, l: f64) -> [f64; 3] {
    let b = 2.0 * PI / l;
    let m = modes(idx, n);
    [b * m[0] as f64, b * m[1] as f64, b * m[2] as f64]
}

/// 2/3-rule retention, written as |m| ≤ (n − 1)/3 rather than 3|m| < n.
pub fn retained(idx: usize, n: usize) -> bool {
    let cut = (n as i64 - 1) / 3;
    modes(idx, n).iter().all(|m| m.abs() <= cut)
}

/// Explicit van Cittert sum `Σ_{i=0}^{N} (1 − g)^i`.
pub fn deconv_sum(g: f64, order: u32) -> f64 {
    let mut acc = 0.0;
    let mut term = 1.0;
    for _ in 0..=order {
        acc += term;
        term *= 1.0 - g;
    }
    acc
}

/// `û − k (k·û)/|k|²`.
pub fn project(u: &mut [Vec<C>; 3], n: usize, l: f64) {
    for idx in 1..n * n * n {
        let k = wavevector(idx, n, l);
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        let dot = k[0] * u[0][idx] + k[1] * u[1][idx] + k[2] * u[2][idx];
        for c in 0..3 {
            u[c][idx] -= k[c] * dot / k2;
        }
    }
}

pub fn max_diff(a: &SpectralField, b: &[Vec<C>; 3]) -> f64 {
    (0..3)
        .flat_map(|c| a.component(c).iter().zip(&b[c]).map(|(x, y)| (x - y).norm()))
        .fold(0.0, f64::max)
}

/// `∇·(u⊗v)` by direct convolution over all pairs of modes in the support.
pub fn convolution_divergence(u: &SpectralField, v: &SpectralField) -> [Vec<C>; 3] {
    let lat = u.lattice();
    let n = lat.n();
    let len = n * n * n;
    let support = |f: &SpectralField| -> Vec<usize> {
        (0..len)
            .filter(|&i| (0..3).any(|c| f.component(c)[i].norm() > 0.0))
            .collect()
    };
    let (su, sv) = (support(u), support(v));
    let mut out: [Vec<C>; 3] = std::array::from_fn(|_| vec![C::default(); len]);
    for &p in &su {
        let mp = modes(p, n);
        for &q in &sv {
            let mq = modes(q, n);
            let m = [mp[0] + mq[0], mp[1] + mq[1], mp[2] + mq[2]];
            let cut = (n as i64 - 1) / 3;
            if m.iter().any(|x| x.abs() > cut) {
                continue;
            }
            let k = idx_wave(m, lat.box_size());
            let target = flat(m, n);
            for i in 0..3 {
                for j in 0..3 {
                    out[i][target] += C::new(0.0, k[j]) * u.component(i)[p] * v.component(j)[q];
                }
            }
        }
    }
    out
}

pub fn idx_wave(m: [i64; 3], l: f64) -> [f64; 3] {
    let b = 2.0 * PI / l;
    [b * m[0] as f64, b * m[1] as f64, b * m[2] as f64]
}

/// One integrating-factor SSP-RK3 step of the ADM, written from the model
/// equations with direct trigonometric sums and the explicit van Cittert
/// series.
pub fn oracle_adm_step(w: &[Vec<C>; 3], n: usize, l: f64, nu: f64, dt: f64, alpha: f64, order: u32) -> [Vec<C>; 3] {
    let len = n * n * n;
    let k2: Vec<f64> = (0..len)
        .map(|i| wavevector(i, n, l).iter().map(|k| k * k).sum())
        .collect();
    let g: Vec<f64> = k2.iter().map(|&k| 1.0 / (1.0 + alpha * alpha * k)).collect();
    let d: Vec<f64> = g.iter().map(|&gk| deconv_sum(gk, order)).collect();

    let rhs = |w: &[Vec<C>; 3]| -> [Vec<C>; 3] {
        let phys: Vec<Vec<f64>> = (0..3)
            .map(|c| {
                let dw: Vec<C> = w[c].iter().zip(&d).map(|(x, dk)| x * dk).collect();
                synthesize(&dw, n, n)
            })
            .collect();
        let mut prod = vec![vec![C::default(); len]; 9];
        for i in 0..3 {
            for j in 0..3 {
                let s: Vec<f64> = (0..len).map(|p| phys[i][p] * phys[j][p]).collect();
                prod[3 * i + j] = analyze(&s, n);
            }
        }
        let mut out: [Vec<C>; 3] = std::array::from_fn(|_| vec![C::default(); len]);
        for idx in 1..len {
            if !retained(idx, n) {
                continue;
            }
            let k = wavevector(idx, n, l);
            for i in 0..3 {
                let mut div = C::default();
                for j in 0..3 {
                    div += C::new(0.0, k[j]) * prod[3 * i + j][idx];
                }
                out[i][idx] = -g[idx] * div;
            }
        }
        project(&mut out, n, l);
        out
    };
    let e = |h: f64| -> Vec<f64> { k2.iter().map(|k| (-nu * k * h).exp()).collect() };
    let (e1, eh, em) = (e(dt), e(0.5 * dt), e(-0.5 * dt));
    let comb = |a: &[Vec<C>; 3], s: f64, b: &[Vec<C>; 3], t: f64, mult: &[f64]| -> [Vec<C>; 3] {
        std::array::from_fn(|c| {
            (0..len)
                .map(|i| (s * a[c][i] + t * b[c][i]) * mult[i])
                .collect()
        })
    };
    let ones = vec![1.0; len];

    let n0 = rhs(w);
    let u1 = comb(w, 1.0, &n0, dt, &e1);
    let n1 = rhs(&u1);
    let a = comb(w, 0.75, w, 0.0, &eh);
    let b = comb(&u1, 0.25, &n1, 0.25 * dt, &em);
    let u2 = comb(&a, 1.0, &b, 1.0, &ones);
    let n2 = rhs(&u2);
    let a = comb(w, 1.0 / 3.0, w, 0.0, &e1);
    let b = comb(&u2, 2.0 / 3.0, &n2, 2.0 / 3.0 * dt, &eh);
    comb(&a, 1.0, &b, 1.0, &ones)
}
