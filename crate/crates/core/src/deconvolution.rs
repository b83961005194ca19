//! Van Cittert deconvolution `D_N = Σ_{n=0}^{N} (I − G)^n`, applied through
//! its closed-form symbol `(1 − (1 − Ĝ)^{N+1}) / Ĝ`.

use serde::Serialize;

use crate::error::{AdmError, Result};
use crate::field::SpectralField;
use crate::filters::FilterSpec;

/// Below this filter value the closed form is replaced by its binomial series.
const SERIES_THRESHOLD: f64 = 1e-8;
/// Relative slack for the structural property checks.
pub const PROPERTY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeconvOp {
    spec: FilterSpec,
    order: u32,
}

impl DeconvOp {
    pub fn new(spec: FilterSpec, order: u32) -> Self {
        Self { spec, order }
    }

    pub fn spec(&self) -> &FilterSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `ln(1 − Ĝ)`, the log of the per-iteration residual factor.
    pub(crate) fn ln_residual(&self, k2: f64) -> f64 {
        match self.spec {
            FilterSpec::Helmholtz { alpha, p } => {
                // ln(x/(1+x)) with t = ln x
                let t = p * (alpha * alpha * k2).ln();
                if t < 0.0 {
                    t - t.exp().ln_1p()
                } else {
                    -(-t).exp().ln_1p()
                }
            }
            _ => {
                let g = self.spec.symbol(k2);
                if g > 0.5 {
                    self.spec.complement(k2).ln()
                } else {
                    (-g).ln_1p()
                }
            }
        }
    }

    /// D̂_N(k²), the symbol of `D_N`; exactly 1 at k² = 0 and for N = 0.
    pub fn symbol(&self, k2: f64) -> f64 {
        if k2 == 0.0 || self.order == 0 {
            return 1.0;
        }
        let terms = self.order as f64 + 1.0;
        let g = self.spec.symbol(k2);
        if g == 0.0 {
            return terms;
        }
        if g < SERIES_THRESHOLD && terms * g < 1e-6 {
            // Σ_{j≥1} C(N+1, j) (−Ĝ)^{j−1}, three terms
            let n = self.order as f64;
            return terms - g * terms * n / 2.0 + g * g * terms * n * (n - 1.0) / 6.0;
        }
        let numerator = -(terms * self.ln_residual(k2)).exp_m1();
        numerator / g
    }

    /// `ρ = 1 − (α^{2p}|k|^{2p}/(1+α^{2p}|k|^{2p}))^{N+1}`, the symbol of
    /// `D_N G`. Helmholtz filters only.
    pub fn rho(&self, k2: f64) -> Result<f64> {
        if !matches!(self.spec, FilterSpec::Helmholtz { .. }) {
            return Err(AdmError::NotHelmholtz(self.spec.to_string()));
        }
        if k2 == 0.0 {
            return Ok(1.0);
        }
        let terms = self.order as f64 + 1.0;
        Ok(-(terms * self.ln_residual(k2)).exp_m1())
    }

    pub fn apply(&self, f: &SpectralField) -> SpectralField {
        if self.order == 0 {
            return f.clone();
        }
        f.map_symbol(|k2| self.symbol(k2))
    }

    /// Checks the structural properties of `D_N` on a k² grid.
    pub fn check_properties(&self, k2_grid: &[f64]) -> Result<PropertyReport> {
        let (alpha, p) = match self.spec {
            FilterSpec::Helmholtz { alpha, p } => (alpha, p),
            other => return Err(AdmError::NotHelmholtz(other.to_string())),
        };
        if k2_grid.is_empty() {
            return Err(AdmError::EmptyGrid);
        }
        let terms = self.order as f64 + 1.0;
        let mut rows = Vec::with_capacity(4 * k2_grid.len());
        let le = |lhs: f64, rhs: f64| lhs <= rhs + PROPERTY_SLACK * rhs.abs().max(1.0);
        let mut largest = f64::NEG_INFINITY;
        for &k2 in k2_grid {
            largest = largest.max(k2);
            let d = self.symbol(k2);
            let a = self.spec.inverse_symbol(k2)?;
            rows.push(PropertyRow::asserted(Property::LowerBound, k2, 1.0, d, le(1.0, d)));
            rows.push(PropertyRow::asserted(Property::UpperBound, k2, d, terms, le(d, terms)));
            rows.push(PropertyRow::asserted(Property::InverseBound, k2, d, a, le(d, a)));
            if k2 > 0.0 {
                // large-|k| equivalence D̂ ≈ (N+1)(1+x)/x
                let x = (alpha * alpha * k2).powf(p);
                let reference = terms * (1.0 + x) / x;
                rows.push(PropertyRow {
                    property: Property::LargeKEquivalence,
                    k2,
                    lhs: d,
                    rhs: reference,
                    pass: None,
                });
            }
        }
        if largest > 1e12 {
            let d = self.symbol(largest);
            let dev = (d - terms).abs();
            rows.push(PropertyRow::asserted(
                Property::Limit,
                largest,
                dev,
                1e-6 * terms,
                dev <= 1e-6 * terms,
            ));
        }
        Ok(PropertyReport {
            order: self.order,
            spec: self.spec,
            rows,
        })
    }
}

pub fn deconv_symbol(op: &DeconvOp, k2: f64) -> f64 {
    op.symbol(k2)
}

pub fn rho(op: &DeconvOp, k2: f64) -> Result<f64> {
    op.rho(k2)
}

pub fn apply_deconv(op: &DeconvOp, f: &SpectralField) -> SpectralField {
    op.apply(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// 1 ≤ D̂
    LowerBound,
    /// D̂ ≤ N + 1
    UpperBound,
    /// D̂ → (N+1)(1+x)/x for large |k|; reported, not asserted
    LargeKEquivalence,
    /// |D̂ − (N+1)| small at the largest grid point
    Limit,
    /// D̂ ≤ Â
    InverseBound,
}

impl Property {
    pub fn label(&self) -> &'static str {
        match self {
            Property::LowerBound => "p1_lower",
            Property::UpperBound => "p1_upper",
            Property::LargeKEquivalence => "p2_equivalence",
            Property::Limit => "p3_limit",
            Property::InverseBound => "p4_inverse_bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyRow {
    pub property: Property,
    pub k2: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `None` for diagnostic rows.
    pub pass: Option<bool>,
}

impl PropertyRow {
    fn asserted(property: Property, k2: f64, lhs: f64, rhs: f64, pass: bool) -> Self {
        Self {
            property,
            k2,
            lhs,
            rhs,
            pass: Some(pass),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub order: u32,
    pub spec: FilterSpec,
    pub rows: Vec<PropertyRow>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass != Some(false))
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyRow> {
        self.rows.iter().filter(|r| r.pass == Some(false))
    }

    /// Largest `|D̂ / reference − 1|` of the large-|k| diagnostic over grid
    /// points with `k2 ≥ k2_min`.
    pub fn equivalence_deviation(&self, k2_min: f64) -> Option<f64> {
        self.rows
            .iter()
            .filter(|r| r.property == Property::LargeKEquivalence && r.k2 >= k2_min)
            .map(|r| (r.lhs / r.rhs - 1.0).abs())
            .reduce(f64::max)
    }
}
