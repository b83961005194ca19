//! Residual stress, modeling error, the a-priori error bounds and empirical
//! convergence rates.
//!
//! Bounds with a Gronwall factor `exp(||u||⁴_{L⁴H¹}/ν³)` overflow `f64` for
//! any realistic flow, so they are carried as base-10 logarithms
//! ([`LogBound`]).

use rayon::prelude::*;
use serde::Serialize;

use crate::deconvolution::DeconvOp;
use crate::error::{AdmError, Result};
use crate::field::SpectralField;
use crate::filters::FilterSpec;
use crate::solver::ExperimentOutput;
use crate::spectral::{sobolev_norm, sobolev_norm_sq, tensor_difference_norm_sq, weighted_norm_sq};

/// `||τ_N||₀` for `τ_N = u⊗u − D_N ū ⊗ D_N ū`, `ū = G u`.
///
/// The Frobenius norm is the grid mean over the torus (all modes, including
/// the mean of τ), evaluated exactly on a padded grid. A Helmholtz filter
/// with `alpha = 0` is accepted and gives τ = 0.
pub fn residual_stress_norm(u: &SpectralField, spec: &FilterSpec, order: u32) -> Result<f64> {
    let recovered = DeconvOp::new(*spec, order).apply(&spec.apply(u));
    Ok(tensor_difference_norm_sq(u, &recovered)?.sqrt())
}

/// `||u − D_N ū||²_{1/2} = Σ (1 − Ĝ)^{2(N+1)} |k| |û_k|²` for any filter.
pub fn defect_half_norm_sq(u: &SpectralField, spec: &FilterSpec, order: u32) -> f64 {
    let op = DeconvOp::new(*spec, order);
    let power = 2.0 * (order as f64 + 1.0);
    weighted_norm_sq(u, |k2| (power * op.ln_residual(k2)).exp() * k2.sqrt())
}

/// `||u − D_N ū||_{1/2}` for a Helmholtz filter.
pub fn half_norm_defect(u: &SpectralField, spec: &FilterSpec, order: u32) -> Result<f64> {
    if !matches!(spec, FilterSpec::Helmholtz { .. }) {
        return Err(AdmError::NotHelmholtz(spec.to_string()));
    }
    Ok(defect_half_norm_sq(u, spec, order).sqrt())
}

/// `α (2p(N+1))^{−1/(2p)}`, the rate factor shared by the Helmholtz bounds.
pub fn helmholtz_rate_factor(alpha: f64, p: f64, order: u32) -> f64 {
    alpha * (2.0 * p * (order as f64 + 1.0)).powf(-1.0 / (2.0 * p))
}

/// Right-hand side of the defect estimate: `α (2p(N+1))^{−1/(2p)} ||u||₁²`.
pub fn bound_fin(u_h1: f64, alpha: f64, p: f64, order: u32) -> f64 {
    helmholtz_rate_factor(alpha, p, order) * u_h1 * u_h1
}

/// Residual-stress estimate `2Cα (2p(N+1))^{−1/(2p)} ||u||₁⁴`.
pub fn bound_residual(u_h1: f64, c: f64, alpha: f64, p: f64, order: u32) -> f64 {
    2.0 * c * helmholtz_rate_factor(alpha, p, order) * u_h1.powi(4)
}

/// A nonnegative quantity stored as `log₁₀`; `−∞` encodes zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogBound {
    pub log10: f64,
}

impl LogBound {
    pub fn from_ln(ln: f64) -> Self {
        Self {
            log10: ln / std::f64::consts::LN_10,
        }
    }

    pub fn zero() -> Self {
        Self {
            log10: f64::NEG_INFINITY,
        }
    }

    /// Plain value when it fits in an `f64`.
    pub fn value(&self) -> Option<f64> {
        let v = 10f64.powf(self.log10);
        v.is_finite().then_some(v)
    }

    /// `x ≤ self` for a plain nonnegative `x`.
    pub fn dominates(&self, x: f64) -> bool {
        if x <= 0.0 {
            return true;
        }
        x.log10() <= self.log10
    }
}

/// `ln(prefactor · u⁴ · exp(gronwall · u⁴/ν³))`.
fn gronwall_ln(prefactor: f64, u: f64, nu: f64, gronwall: f64) -> f64 {
    let u4_ln = 4.0 * u.ln();
    prefactor.ln() + u4_ln + gronwall * (u4_ln - 3.0 * nu.ln()).exp()
}

/// Main Helmholtz estimate
/// `16Cα / (ν (2p(N+1))^{1/(2p)}) · u⁴ · exp(u⁴/ν³)` with `u = ||u||_{L⁴H¹}`.
pub fn bound_main(u_l4h1: f64, nu: f64, c: f64, alpha: f64, p: f64, order: u32) -> LogBound {
    if u_l4h1 == 0.0 {
        return LogBound::zero();
    }
    let pre = 16.0 * c * helmholtz_rate_factor(alpha, p, order) / nu;
    LogBound::from_ln(gronwall_ln(pre, u_l4h1, nu, 1.0))
}

/// Variant with the alternative energy-inequality constants `4/ν`, `27/ν³`:
/// `8Cα / (ν (2p(N+1))^{1/(2p)}) · u⁴ · exp(27 u⁴/ν³)`.
pub fn bound_main_alt(u_l4h1: f64, nu: f64, c: f64, alpha: f64, p: f64, order: u32) -> LogBound {
    if u_l4h1 == 0.0 {
        return LogBound::zero();
    }
    let pre = 8.0 * c * helmholtz_rate_factor(alpha, p, order) / nu;
    LogBound::from_ln(gronwall_ln(pre, u_l4h1, nu, 27.0))
}

/// Estimate for the m-th Helmholtz power filter and its Gaussian limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerBound {
    /// `14Cμ√m / (ν (4(N+1))^{1/(2m)}) · u⁴ e^{u⁴/ν³}`
    pub theorem: LogBound,
    /// `70Cα / (ν (4(N+1))^{1/(2m)}) · u⁴ e^{u⁴/ν³}` with `α = μ√(24m)`,
    /// the form used when passing to the Gaussian limit.
    pub limit: LogBound,
}

pub fn bound_main_hm(u_l4h1: f64, nu: f64, c: f64, mu: f64, m: u32, order: u32) -> PowerBound {
    if u_l4h1 == 0.0 {
        return PowerBound {
            theorem: LogBound::zero(),
            limit: LogBound::zero(),
        };
    }
    let mf = m as f64;
    let rate = (4.0 * (order as f64 + 1.0)).powf(-1.0 / (2.0 * mf));
    let alpha = mu * (24.0 * mf).sqrt();
    let theorem = 14.0 * c * mu * mf.sqrt() * rate / nu;
    let limit = 70.0 * c * alpha * rate / nu;
    PowerBound {
        theorem: LogBound::from_ln(gronwall_ln(theorem, u_l4h1, nu, 1.0)),
        limit: LogBound::from_ln(gronwall_ln(limit, u_l4h1, nu, 1.0)),
    }
}

/// Energy bound `(8/ν) e^{u⁴/ν³} ∫₀ᵗ ||τ_N||₀²` from a measured
/// residual-stress integral.
pub fn bound_from_stress(tau_integral: f64, u_l4h1: f64, nu: f64) -> LogBound {
    if tau_integral <= 0.0 {
        return LogBound::zero();
    }
    let u4_ln = 4.0 * u_l4h1.ln();
    LogBound::from_ln((8.0 / nu).ln() + (u4_ln - 3.0 * nu.ln()).exp() + tau_integral.ln())
}

/// `log₁₀ κ` for `κ = (1/ν) u⁴ e^{u⁴/ν³}`; `−∞` when `u = 0`.
pub fn kappa_log10(u_l4h1: f64, nu: f64) -> f64 {
    if u_l4h1 == 0.0 {
        return f64::NEG_INFINITY;
    }
    let u4_ln = 4.0 * u_l4h1.ln();
    (u4_ln - nu.ln()) / std::f64::consts::LN_10
        + (u4_ln - 3.0 * nu.ln()).exp() / std::f64::consts::LN_10
}

/// Least-squares fit of `ln e = c − β ln(N+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateFit {
    pub beta: f64,
    pub r2: f64,
}

pub fn fit_rate(series: &[(u32, f64)]) -> Result<RateFit> {
    if series.len() < 4 {
        return Err(AdmError::Domain(format!(
            "rate fit needs at least 4 points, got {}",
            series.len()
        )));
    }
    if let Some(&(n, e)) = series.iter().find(|(_, e)| !(*e > 0.0 && e.is_finite())) {
        return Err(AdmError::Domain(format!(
            "rate fit needs positive values, got e = {e} at N = {n}"
        )));
    }
    let pts: Vec<(f64, f64)> = series
        .iter()
        .map(|&(n, e)| ((n as f64 + 1.0).ln(), e.ln()))
        .collect();
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(AdmError::Domain("rate fit needs distinct N".into()));
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(RateFit { beta: -slope, r2 })
}

/// Largest `||τ_N||₀² / (2 ||u||₁² ||u − D_N ū||²_{1/2})` over the given
/// fields and orders: the smallest C for which the residual-stress estimate
/// holds on this data.
pub fn calibrate_sobolev_constant(
    fields: &[SpectralField],
    spec: &FilterSpec,
    orders: &[u32],
) -> Result<f64> {
    let ratios: Vec<f64> = fields
        .par_iter()
        .map(|u| -> Result<f64> {
            let h1 = sobolev_norm_sq(u, 1.0);
            let mut worst: f64 = 0.0;
            for &n in orders {
                let defect = defect_half_norm_sq(u, spec, n);
                if h1 == 0.0 || defect == 0.0 {
                    continue;
                }
                let tau = residual_stress_norm(u, spec, n)?;
                worst = worst.max(tau * tau / (2.0 * h1 * defect));
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    Ok(ratios.into_iter().fold(0.0, f64::max))
}

/// Filter parameters entering the bounds: `(weight, order)` is `(α^{2p}, p)`
/// for Helmholtz filters and `(μ^{2m}, m)` for Helmholtz powers.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Theory {
    Helmholtz { alpha: f64, p: f64 },
    Power { mu: f64, m: u32 },
    None,
}

impl Theory {
    fn of(spec: &FilterSpec) -> Self {
        match *spec {
            FilterSpec::Helmholtz { alpha, p } => Theory::Helmholtz { alpha, p },
            FilterSpec::HelmholtzPower { mu, m } => Theory::Power { mu, m },
            FilterSpec::GaussianApprox { m, .. } => Theory::Power {
                mu: spec.mu_squared().expect("approximant has mu").sqrt(),
                m,
            },
            FilterSpec::Gaussian { .. } => Theory::None,
        }
    }

    fn weight_and_order(&self) -> (f64, f64) {
        match *self {
            Theory::Helmholtz { alpha, p } => (alpha.powf(2.0 * p), p),
            Theory::Power { mu, m } => (mu.powi(2 * m as i32), m as f64),
            // plain L² error for the Gaussian
            Theory::None => (0.0, 1.0),
        }
    }
}

/// Per-(N, t) diagnostics row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRow {
    pub order: u32,
    pub step: u64,
    pub t: f64,
    /// `||ε_N||₀`
    pub eps_l2: f64,
    /// `||ε_N||_p` (p → m for Helmholtz powers)
    pub eps_hp: f64,
    /// `∫₀ᵗ (||∇ε||₀² + α^{2p} ||∇ε||_p²)`, trapezoid rule
    pub grad_integral: f64,
    /// `||ε||₀² + α^{2p}||ε||_p² + ν · grad_integral`
    pub lhs: f64,
    /// `||τ_N||₀`
    pub tau_l2: f64,
    /// `||u − D_N ū||_{1/2}`
    pub half_norm: f64,
    /// `α(2p(N+1))^{−1/(2p)} ||u||₁²`; NaN without a Helmholtz filter
    pub bound_fin: f64,
    /// `2Cα(2p(N+1))^{−1/(2p)} ||u||₁⁴`; NaN without a Helmholtz filter
    pub bound_tau: f64,
    /// `(8/ν) e^{u⁴/ν³} ∫₀ᵗ ||τ||₀²`
    pub bound_stress: LogBound,
    /// Main bound (Helmholtz or Helmholtz-power form)
    pub bound_main: LogBound,
    /// Same with the alternative constants 4/ν, 27/ν³ (Helmholtz only)
    pub bound_main_alt: LogBound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorSummary {
    pub order: u32,
    pub eps_l2_final: f64,
    pub lhs_final: f64,
    pub bound_main_log10: f64,
    /// Every row of this order satisfies `lhs ≤ bound_main`.
    pub bound_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constants {
    /// C used in the bounds: `max(configured, calibrated)`.
    pub c: f64,
    pub c_configured: f64,
    pub c_calibrated: f64,
    pub nu: f64,
    pub alpha: f64,
    pub p: f64,
    /// `(Σ_t ||u(t)||₁⁴ Δt)^{1/4}` over the DNS samples
    pub u_norm: f64,
    pub kappa_log10: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub rows: Vec<ErrorRow>,
    pub summary: Vec<ErrorSummary>,
    /// Fitted rate of `||ε_N(T)||₀` against N; `None` with fewer than 4
    /// orders or a vanishing error.
    pub beta: Option<RateFit>,
    pub constants: Constants,
}

/// `(Σ_i ||u(t_i)||₁⁴ Δt_i)^{1/4}` with `Δt_i` the spacing to the next sample
/// (the last sample reuses the previous spacing).
pub fn l4h1_norm(times: &[f64], fields: &[SpectralField]) -> f64 {
    if times.len() < 2 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..times.len() {
        let dt = if i + 1 < times.len() {
            times[i + 1] - times[i]
        } else {
            times[i] - times[i - 1]
        };
        acc += sobolev_norm_sq(&fields[i], 1.0).powi(2) * dt;
    }
    acc.powf(0.25)
}

/// Trapezoid-rule running integral.
fn cumulative_trapezoid(times: &[f64], values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..values.len() {
        acc += 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
        out.push(acc);
    }
    out
}

/// Diagnostics over an experiment: modeling error `ε_N = G u − w_N`, residual
/// stress and every bound, per order and sample time.
pub fn error_report(output: &ExperimentOutput) -> Result<ErrorReport> {
    let cfg = &output.config;
    let spec = cfg.filter;
    let nu = cfg.nu;
    let theory = Theory::of(&spec);
    let (weight, sob_order) = theory.weight_and_order();
    let times = output.times();
    let dns = &output.dns.fields;

    let filtered: Vec<SpectralField> = dns.iter().map(|u| spec.apply(u)).collect();
    let h1: Vec<f64> = dns.iter().map(|u| sobolev_norm(u, 1.0)).collect();
    let u_norm = l4h1_norm(times, dns);

    let c_calibrated = match theory {
        Theory::None => 0.0,
        _ => calibrate_sobolev_constant(dns, &spec, &cfg.n_list)?,
    };
    let c = cfg.sobolev_constant.max(c_calibrated);

    let per_order: Vec<(Vec<ErrorRow>, ErrorSummary)> = output
        .adm
        .par_iter()
        .map(|run| -> Result<(Vec<ErrorRow>, ErrorSummary)> {
            let order = run.order.expect("ADM runs carry an order");
            let mut eps_l2 = Vec::with_capacity(times.len());
            let mut eps_hp = Vec::with_capacity(times.len());
            let mut grad = Vec::with_capacity(times.len());
            let mut tau_sq = Vec::with_capacity(times.len());
            let mut half = Vec::with_capacity(times.len());
            for (i, w) in run.fields.iter().enumerate() {
                let eps = filtered[i].sub(w)?;
                eps_l2.push(sobolev_norm(&eps, 0.0));
                eps_hp.push(sobolev_norm(&eps, sob_order));
                grad.push(
                    sobolev_norm_sq(&eps, 1.0) + weight * sobolev_norm_sq(&eps, sob_order + 1.0),
                );
                let tau = residual_stress_norm(&dns[i], &spec, order)?;
                tau_sq.push(tau * tau);
                half.push(defect_half_norm_sq(&dns[i], &spec, order).sqrt());
            }
            let grad_int = cumulative_trapezoid(times, &grad);
            let tau_int = cumulative_trapezoid(times, &tau_sq);
            let (main, alt) = match theory {
                Theory::Helmholtz { alpha, p } => (
                    bound_main(u_norm, nu, c, alpha, p, order),
                    bound_main_alt(u_norm, nu, c, alpha, p, order),
                ),
                Theory::Power { mu, m } => (
                    bound_main_hm(u_norm, nu, c, mu, m, order).theorem,
                    LogBound { log10: f64::NAN },
                ),
                Theory::None => (LogBound { log10: f64::NAN }, LogBound { log10: f64::NAN }),
            };
            let rows: Vec<ErrorRow> = (0..times.len())
                .map(|i| {
                    let (fin, tau_bound) = match theory {
                        Theory::Helmholtz { alpha, p } => (
                            bound_fin(h1[i], alpha, p, order),
                            bound_residual(h1[i], c, alpha, p, order),
                        ),
                        _ => (f64::NAN, f64::NAN),
                    };
                    ErrorRow {
                        order,
                        step: run.steps[i],
                        t: times[i],
                        eps_l2: eps_l2[i],
                        eps_hp: eps_hp[i],
                        grad_integral: grad_int[i],
                        lhs: eps_l2[i].powi(2) + weight * eps_hp[i].powi(2) + nu * grad_int[i],
                        tau_l2: tau_sq[i].sqrt(),
                        half_norm: half[i],
                        bound_fin: fin,
                        bound_tau: tau_bound,
                        bound_stress: bound_from_stress(tau_int[i], u_norm, nu),
                        bound_main: main,
                        bound_main_alt: alt,
                    }
                })
                .collect();
            let last = rows.last().expect("at least two samples");
            let summary = ErrorSummary {
                order,
                eps_l2_final: last.eps_l2,
                lhs_final: last.lhs,
                bound_main_log10: main.log10,
                bound_holds: rows.iter().all(|r| main.dominates(r.lhs)),
            };
            Ok((rows, summary))
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for (r, s) in per_order {
        rows.extend(r);
        summary.push(s);
    }
    let series: Vec<(u32, f64)> = summary.iter().map(|s| (s.order, s.eps_l2_final)).collect();
    let beta = fit_rate(&series).ok();
    let (alpha, p) = match theory {
        Theory::Helmholtz { alpha, p } => (alpha, p),
        Theory::Power { mu, m } => (mu, m as f64),
        Theory::None => match spec {
            FilterSpec::Gaussian { alpha } => (alpha, f64::NAN),
            _ => (f64::NAN, f64::NAN),
        },
    };
    Ok(ErrorReport {
        rows,
        summary,
        beta,
        constants: Constants {
            c,
            c_configured: cfg.sobolev_constant,
            c_calibrated,
            nu,
            alpha,
            p,
            u_norm,
            kappa_log10: kappa_log10(u_norm, nu),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::WaveLattice;
    use approx::assert_relative_eq;
    use rustfft::num_complex::Complex64;

    const H1: FilterSpec = FilterSpec::Helmholtz { alpha: 1.0, p: 1.0 };

    #[test]
    fn zero_field_has_no_stress() {
        let lat = WaveLattice::periodic(8).unwrap();
        let z = SpectralField::zeros(lat);
        assert_eq!(residual_stress_norm(&z, &H1, 3).unwrap(), 0.0);
        assert_eq!(half_norm_defect(&z, &H1, 3).unwrap(), 0.0);
    }

    #[test]
    fn identity_filter_has_no_stress() {
        let lat = WaveLattice::periodic(8).unwrap();
        let u = SpectralField::random(lat, 1.0, 1.0, 8);
        let id = FilterSpec::Helmholtz { alpha: 0.0, p: 1.0 };
        assert_eq!(residual_stress_norm(&u, &id, 2).unwrap(), 0.0);
    }

    #[test]
    fn one_mode_defect() {
        // û = ±(1/√2) e_2 at k = ±e_1: ||u||_{1/2}² = 2 · 1/2 · |k| = 1 ... scaled to √2
        let lat = WaveLattice::periodic(8).unwrap();
        let mut u = SpectralField::zeros(lat);
        let one = Complex64::new(1.0, 0.0);
        let z = Complex64::default();
        u.set(lat.index_of([1, 0, 0]).unwrap(), [z, one, z]);
        u.set(lat.index_of([-1, 0, 0]).unwrap(), [z, one, z]);
        assert_relative_eq!(sobolev_norm(&u, 0.5), 2f64.sqrt(), max_relative = 1e-15);
        let d = half_norm_defect(&u, &H1, 0).unwrap();
        assert_relative_eq!(d, 2f64.sqrt() * 0.5, max_relative = 1e-15);
        assert!(half_norm_defect(&u, &FilterSpec::Gaussian { alpha: 1.0 }, 0).is_err());
    }

    #[test]
    fn residual_bound_values() {
        assert_eq!(bound_residual(0.0, 1.0, 1.0, 1.0, 1), 0.0);
        assert_relative_eq!(bound_residual(1.0, 1.0, 1.0, 1.0, 1), 1.0, max_relative = 1e-15);
        assert!(bound_residual(1.0, 1.0, 1.0, 1.0, 8) < bound_residual(1.0, 1.0, 1.0, 1.0, 1));
    }

    #[test]
    fn main_bound_values() {
        assert_eq!(bound_main(0.0, 1.0, 1.0, 1.0, 1.0, 1), LogBound::zero());
        let b = bound_main(1.0, 1.0, 1.0, 1.0, 1.0, 1);
        assert_relative_eq!(b.value().unwrap(), 8.0 * std::f64::consts::E, max_relative = 1e-14);
        assert!((b.value().unwrap() - 21.7463).abs() < 1e-4);
        // decay at rate (N+1)^{-1/(2p)}
        let p = 2.0;
        let r = bound_main(1.0, 1.0, 1.0, 1.0, p, 15).log10 - bound_main(1.0, 1.0, 1.0, 1.0, p, 0).log10;
        assert_relative_eq!(r, -(16f64).log10() / (2.0 * p), max_relative = 1e-12);
    }

    #[test]
    fn main_bound_is_monotone() {
        for alpha in [0.1, 0.5, 2.0] {
            for p in [0.75, 1.0, 4.0] {
                let mut prev = f64::INFINITY;
                for n in 0..64 {
                    let b = bound_main(3.0, 0.1, 2.0, alpha, p, n).log10;
                    assert!(b < prev);
                    prev = b;
                    assert!(bound_main(3.0, 0.1, 2.0, alpha * 1.1, p, n).log10 > b);
                }
            }
        }
    }

    #[test]
    fn huge_gronwall_factor_stays_finite_in_logs() {
        let b = bound_main(3.0, 0.05, 2.0, 0.5, 1.0, 8);
        assert!(b.log10.is_finite() && b.log10 > 300.0);
        assert!(b.value().is_none());
        assert!(b.dominates(1e300));
    }

    #[test]
    fn power_bound_values() {
        let b = bound_main_hm(0.0, 1.0, 1.0, 1.0, 1, 0);
        assert_eq!(b.theorem, LogBound::zero());
        let b = bound_main_hm(1.0, 1.0, 1.0, 1.0, 1, 0);
        assert_relative_eq!(
            b.theorem.value().unwrap(),
            7.0 * std::f64::consts::E,
            max_relative = 1e-14
        );
        // μ√m = α/√24 ≤ 5α, so the limit form dominates
        assert!(b.limit.log10 > b.theorem.log10);
        // large m: the N dependence disappears
        let spread = |m: u32| {
            bound_main_hm(1.0, 1.0, 1.0, 0.1, m, 1000).theorem.log10
                - bound_main_hm(1.0, 1.0, 1.0, 0.1, m, 0).theorem.log10
        };
        assert!(spread(1000).abs() < 0.01 * spread(1).abs());
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa_log10(0.0, 1.0), f64::NEG_INFINITY);
        assert_relative_eq!(
            kappa_log10(1.0, 1.0),
            1.0 / std::f64::consts::LN_10,
            max_relative = 1e-15
        );
        assert!((kappa_log10(1.0, 1.0) - 0.4343).abs() < 1e-4);
    }

    #[test]
    fn fit_recovers_power_laws() {
        let s: Vec<(u32, f64)> = (0..8).map(|n| (n, (n as f64 + 1.0).powf(-0.5))).collect();
        let fit = fit_rate(&s).unwrap();
        assert_relative_eq!(fit.beta, 0.5, max_relative = 1e-12);
        assert_relative_eq!(fit.r2, 1.0, max_relative = 1e-12);
        let s: Vec<(u32, f64)> = (0..8).map(|n| (n, 3.0 * (n as f64 + 1.0).powf(-0.25))).collect();
        assert_relative_eq!(fit_rate(&s).unwrap().beta, 0.25, max_relative = 1e-12);
    }

    #[test]
    fn fit_rejects_bad_input() {
        assert!(fit_rate(&[(0, 1.0), (1, 0.5), (2, 0.3)]).is_err());
        assert!(fit_rate(&[(0, 1.0), (1, 0.5), (2, 0.0), (3, 0.1)]).is_err());
    }

    #[test]
    fn calibrated_constant_makes_chain_hold() {
        let lat = WaveLattice::periodic(8).unwrap();
        let fields: Vec<_> = (0..4).map(|s| SpectralField::random(lat, 2.0, 1.0, s)).collect();
        let orders = [0, 1, 4];
        let c = calibrate_sobolev_constant(&fields, &H1, &orders).unwrap();
        assert!(c > 0.0);
        for u in &fields {
            let h1 = sobolev_norm_sq(u, 1.0);
            for &n in &orders {
                let tau = residual_stress_norm(u, &H1, n).unwrap();
                let d = defect_half_norm_sq(u, &H1, n);
                assert!(tau * tau <= 2.0 * c * h1 * d * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn trapezoid_integral() {
        let t = [0.0, 0.5, 1.0];
        let v = [0.0, 1.0, 2.0];
        assert_eq!(cumulative_trapezoid(&t, &v), vec![0.0, 0.25, 1.0]);
    }
}
