//! Spectral filters: generalized Helmholtz, Gaussian, the Gaussian
//! approximants `(1 + α²|k|²/(24m))^{−m}` and powers of the second-order
//! Helmholtz operator `(1 + μ²|k|²)^{−m}`.
//!
//! Every symbol is evaluated through its logarithm so large exponents and
//! wave numbers neither overflow nor lose the small complement `1 − Ĝ`.

use serde::{Deserialize, Serialize};

use crate::error::{AdmError, Result};
use crate::field::SpectralField;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FilterSpec {
    /// `1 / (1 + α^{2p}|k|^{2p})`
    Helmholtz { alpha: f64, p: f64 },
    /// `exp(−α²|k|²/24)`
    Gaussian { alpha: f64 },
    /// `(1 + α²|k|²/(24m))^{−m}`
    GaussianApprox { alpha: f64, m: u32 },
    /// `(1 + μ²|k|²)^{−m}`
    HelmholtzPower { mu: f64, m: u32 },
}

impl Default for FilterSpec {
    fn default() -> Self {
        FilterSpec::Helmholtz { alpha: 0.5, p: 1.0 }
    }
}

impl std::fmt::Display for FilterSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FilterSpec::Helmholtz { alpha, p } => write!(f, "helmholtz(alpha={alpha}, p={p})"),
            FilterSpec::Gaussian { alpha } => write!(f, "gaussian(alpha={alpha})"),
            FilterSpec::GaussianApprox { alpha, m } => {
                write!(f, "gaussian_approx(alpha={alpha}, m={m})")
            }
            FilterSpec::HelmholtzPower { mu, m } => write!(f, "helmholtz_power(mu={mu}, m={m})"),
        }
    }
}

/// `1 / (1 + e^t)` without overflow.
#[inline]
fn logistic_complement(t: f64) -> f64 {
    if t > 0.0 {
        let e = (-t).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + t.exp())
    }
}

impl FilterSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(AdmError::InvalidFilter(msg));
        match *self {
            FilterSpec::Helmholtz { alpha, p } => {
                if !(alpha > 0.0 && alpha.is_finite()) {
                    return bad(format!("alpha must be > 0, got {alpha}"));
                }
                if !(p >= 0.75 && p.is_finite()) {
                    return bad(format!("Helmholtz order p must be >= 3/4, got {p}"));
                }
            }
            FilterSpec::Gaussian { alpha } | FilterSpec::GaussianApprox { alpha, .. } => {
                if !(alpha > 0.0 && alpha.is_finite()) {
                    return bad(format!("alpha must be > 0, got {alpha}"));
                }
            }
            FilterSpec::HelmholtzPower { mu, .. } => {
                if !(mu > 0.0 && mu.is_finite()) {
                    return bad(format!("mu must be > 0, got {mu}"));
                }
            }
        }
        match *self {
            FilterSpec::GaussianApprox { m: 0, .. } | FilterSpec::HelmholtzPower { m: 0, .. } => {
                bad("m must be >= 1".into())
            }
            _ => Ok(()),
        }
    }

    /// For `GaussianApprox`, the equivalent Helmholtz-power width
    /// `μ² = α²/(24m)`.
    pub fn mu_squared(&self) -> Option<f64> {
        match *self {
            FilterSpec::GaussianApprox { alpha, m } => Some(alpha * alpha / (24.0 * m as f64)),
            FilterSpec::HelmholtzPower { mu, .. } => Some(mu * mu),
            _ => None,
        }
    }

    /// `ln(α^{2p}|k|^{2p})` for Helmholtz filters.
    #[inline]
    fn helmholtz_log_x(alpha: f64, p: f64, k2: f64) -> f64 {
        p * (alpha * alpha * k2).ln()
    }

    /// `ln Ĝ(k²)`; always ≤ 0, and 0 exactly at k² = 0.
    pub fn ln_symbol(&self, k2: f64) -> f64 {
        if k2 == 0.0 {
            return 0.0;
        }
        match *self {
            FilterSpec::Helmholtz { alpha, p } => {
                let t = Self::helmholtz_log_x(alpha, p, k2);
                // −ln(1 + e^t)
                if t > 0.0 {
                    -(t + (-t).exp().ln_1p())
                } else {
                    -t.exp().ln_1p()
                }
            }
            FilterSpec::Gaussian { alpha } => -alpha * alpha * k2 / 24.0,
            FilterSpec::GaussianApprox { alpha, m } => {
                let m = m as f64;
                -m * (alpha * alpha * k2 / (24.0 * m)).ln_1p()
            }
            FilterSpec::HelmholtzPower { mu, m } => -(m as f64) * (mu * mu * k2).ln_1p(),
        }
    }

    /// Transfer function Ĝ(k²) ∈ (0, 1], equal to 1 at k² = 0.
    pub fn symbol(&self, k2: f64) -> f64 {
        if k2 == 0.0 {
            return 1.0;
        }
        match *self {
            FilterSpec::Helmholtz { alpha, p } => {
                logistic_complement(Self::helmholtz_log_x(alpha, p, k2))
            }
            _ => self.ln_symbol(k2).exp(),
        }
    }

    /// `1 − Ĝ(k²)`, accurate when Ĝ is close to 1.
    pub fn complement(&self, k2: f64) -> f64 {
        if k2 == 0.0 {
            return 0.0;
        }
        match *self {
            FilterSpec::Helmholtz { alpha, p } => {
                logistic_complement(-Self::helmholtz_log_x(alpha, p, k2))
            }
            _ => -self.ln_symbol(k2).exp_m1(),
        }
    }

    pub fn is_invertible(&self) -> bool {
        !matches!(self, FilterSpec::Gaussian { .. })
    }

    /// Â = 1/Ĝ.
    pub fn inverse_symbol(&self, k2: f64) -> Result<f64> {
        match *self {
            FilterSpec::Gaussian { .. } => Err(AdmError::NonInvertibleFilter(format!(
                "{self}: the inverse of the Gaussian filter is unbounded on every Sobolev space"
            ))),
            FilterSpec::Helmholtz { alpha, p } => {
                if k2 == 0.0 {
                    Ok(1.0)
                } else {
                    Ok(1.0 + Self::helmholtz_log_x(alpha, p, k2).exp())
                }
            }
            _ => Ok((-self.ln_symbol(k2)).exp()),
        }
    }

    pub fn apply(&self, f: &SpectralField) -> SpectralField {
        f.map_symbol(|k2| self.symbol(k2))
    }

    pub fn apply_inverse(&self, f: &SpectralField) -> Result<SpectralField> {
        // error for the Gaussian before touching the field
        self.inverse_symbol(1.0)?;
        Ok(f.map_symbol(|k2| self.inverse_symbol(k2).expect("invertible filter")))
    }
}

pub fn filter_symbol(spec: &FilterSpec, k2: f64) -> f64 {
    spec.symbol(k2)
}

pub fn apply_filter(spec: &FilterSpec, f: &SpectralField) -> SpectralField {
    spec.apply(f)
}

pub fn apply_inverse(spec: &FilterSpec, f: &SpectralField) -> Result<SpectralField> {
    spec.apply_inverse(f)
}

/// `|G̃(k²) − G̃_m(k²)|`, the gap between the Gaussian symbol and its m-th
/// Helmholtz-power approximant. Bounded by 2/m.
pub fn gaussian_approx_error(alpha: f64, m: u32, k2: f64) -> f64 {
    let gauss = FilterSpec::Gaussian { alpha }.symbol(k2);
    let approx = FilterSpec::GaussianApprox { alpha, m }.symbol(k2);
    (gauss - approx).abs()
}

/// Bounds of the m-th Helmholtz power symbol:
/// `1/(2^{m−1}(1 + (μ|k|)^{2m})) ≤ Ĥ_m ≤ 1/(1 + (μ|k|)^{2m})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sandwich {
    pub lo: f64,
    pub mid: f64,
    pub hi: f64,
}

impl Sandwich {
    /// Ordering check with a relative floating-point slack.
    pub fn holds(&self, rel: f64) -> bool {
        self.lo <= self.mid * (1.0 + rel) && self.mid <= self.hi * (1.0 + rel)
    }
}

pub fn helmholtz_power_sandwich(mu: f64, m: u32, k2: f64) -> Sandwich {
    let mf = m as f64;
    // (μ|k|)^{2m} = exp(m ln(μ²k²))
    let hi = if k2 == 0.0 {
        1.0
    } else {
        logistic_complement(mf * (mu * mu * k2).ln())
    };
    let lo = hi / 2f64.powi(m as i32 - 1);
    let mid = FilterSpec::HelmholtzPower { mu, m }.symbol(k2);
    Sandwich { lo, mid, hi }
}
