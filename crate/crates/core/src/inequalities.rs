//! Verifiers for the scalar inequalities behind the residual-stress and
//! Gaussian-approximation estimates:
//!
//! * `inq_tech2`: `(1 − (1+x)^{−m})^a ≤ m x / a^{1/m}`
//! * `inq_tech3`: `(1 − (1+x²)^{−m})^a ≤ √m x / (2a)^{1/(2m)}`
//! * `inq_tech1`: `(x²/(1+x²))^a ≤ x/√(2a) ≤ x/√a`
//! * `transf_est`: `|(1+x/n)^{−n} − e^{−x}| ≤ 2/n`
//!
//! Powers of `1 + x` go through `log1p`/`expm1` so the tight region near
//! `x = 0` keeps its significant digits.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AdmError, Result};

/// Relative slack: a case fails when `margin < −SLACK · max(1, rhs)`.
pub const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    InqTech2,
    InqTech3,
    InqTech1,
    TransfEst,
}

impl Inequality {
    pub const ALL: [Inequality; 4] = [
        Inequality::InqTech2,
        Inequality::InqTech3,
        Inequality::InqTech1,
        Inequality::TransfEst,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Inequality::InqTech2 => "inq_tech2",
            Inequality::InqTech3 => "inq_tech3",
            Inequality::InqTech1 => "inq_tech1",
            Inequality::TransfEst => "transf_est",
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Inequality {
    type Err = AdmError;

    fn from_str(s: &str) -> Result<Self> {
        Inequality::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| AdmError::UnknownInequality(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Params {
    Xam { x: f64, a: f64, m: f64 },
    Xa { x: f64, a: f64 },
    Xn { x: f64, n: u32 },
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::Xam { x, a, m } => write!(f, "x={x:e};a={a};m={m}"),
            Params::Xa { x, a } => write!(f, "x={x:e};a={a}"),
            Params::Xn { x, n } => write!(f, "x={x:e};n={n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IneqCase {
    pub name: Inequality,
    pub params: Params,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// Side condition checked alongside the main inequality: the weaker
    /// `x/√a` bound for `inq_tech1`, the ordering `(1+x/n)^{−n} ≥ e^{−x}`
    /// for `transf_est`; `true` otherwise.
    pub side_ok: bool,
}

impl IneqCase {
    fn new(name: Inequality, params: Params, lhs: f64, rhs: f64, side_ok: bool) -> Self {
        Self {
            name,
            params,
            lhs,
            rhs,
            margin: rhs - lhs,
            side_ok,
        }
    }

    pub fn passes(&self) -> bool {
        self.margin >= -SLACK * self.rhs.max(1.0) && self.side_ok && self.lhs.is_finite()
    }
}

fn check_domain(x: f64, a: f64, m: f64) -> Result<()> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(AdmError::Domain(format!("x must be >= 0, got {x}")));
    }
    if !(a >= 1.0 && a.is_finite()) {
        return Err(AdmError::Domain(format!("a must be >= 1, got {a}")));
    }
    if !(m >= 1.0 && m.is_finite()) {
        return Err(AdmError::Domain(format!("m must be >= 1, got {m}")));
    }
    Ok(())
}

/// `1 − (1+y)^{−m}` for `y ≥ 0`.
#[inline]
fn one_minus_inv_power(y: f64, m: f64) -> f64 {
    -(-m * y.ln_1p()).exp_m1()
}

/// `b^a` for `b ∈ [0, 1]`.
#[inline]
fn unit_power(b: f64, a: f64) -> f64 {
    if b == 0.0 {
        0.0
    } else {
        (a * b.ln()).exp()
    }
}

pub fn check_inq_tech2(x: f64, a: f64, m: f64) -> Result<IneqCase> {
    check_domain(x, a, m)?;
    let lhs = unit_power(one_minus_inv_power(x, m), a);
    let rhs = m * x * (-a.ln() / m).exp();
    Ok(IneqCase::new(
        Inequality::InqTech2,
        Params::Xam { x, a, m },
        lhs,
        rhs,
        true,
    ))
}

pub fn check_inq_tech3(x: f64, a: f64, m: f64) -> Result<IneqCase> {
    check_domain(x, a, m)?;
    let lhs = unit_power(one_minus_inv_power(x * x, m), a);
    let rhs = m.sqrt() * x * (-(2.0 * a).ln() / (2.0 * m)).exp();
    Ok(IneqCase::new(
        Inequality::InqTech3,
        Params::Xam { x, a, m },
        lhs,
        rhs,
        true,
    ))
}

pub fn check_inq_tech1(x: f64, a: f64) -> Result<IneqCase> {
    check_domain(x, a, 1.0)?;
    // (x²/(1+x²))^a = exp(−a ln(1 + 1/x²))
    let lhs = if x == 0.0 {
        0.0
    } else {
        (-a * (1.0 / (x * x)).ln_1p()).exp()
    };
    let rhs = x / (2.0 * a).sqrt();
    let weaker = x / a.sqrt();
    Ok(IneqCase::new(
        Inequality::InqTech1,
        Params::Xa { x, a },
        lhs,
        rhs,
        rhs <= weaker,
    ))
}

pub fn check_transf_est(x: f64, n: u32) -> Result<IneqCase> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(AdmError::Domain(format!("x must be >= 0, got {x}")));
    }
    if n == 0 {
        return Err(AdmError::Domain("n must be >= 1".into()));
    }
    let nf = n as f64;
    let approx = (-nf * (x / nf).ln_1p()).exp();
    let exact = (-x).exp();
    let lhs = (approx - exact).abs();
    let ordered = approx >= exact - SLACK * exact;
    Ok(IneqCase::new(
        Inequality::TransfEst,
        Params::Xn { x, n },
        lhs,
        2.0 / nf,
        ordered,
    ))
}

/// Parameter grid for a sweep. Unused axes are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub x: Vec<f64>,
    pub a: Vec<f64>,
    pub m: Vec<f64>,
    pub n: Vec<u32>,
}

/// `{1, 1.5, 2, 4, 8, …, 1024}`.
pub fn exponent_ladder() -> Vec<f64> {
    let mut v = vec![1.0, 1.5];
    v.extend((1..=10).map(|e| 2f64.powi(e)));
    v
}

/// `{0} ∪` `count` log-spaced points in `[1e-6, 1e6]`.
pub fn x_grid(count: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(count + 1);
    v.push(0.0);
    let span = 12.0;
    let steps = count.max(2) - 1;
    v.extend((0..count).map(|i| 10f64.powf(-6.0 + span * i as f64 / steps as f64)));
    v
}

impl GridSpec {
    /// The standard sweep: at least 10⁵ tuples per inequality, ten times
    /// denser in x with `dense`.
    pub fn standard(which: Inequality, dense: bool) -> Self {
        let scale = if dense { 10 } else { 1 };
        let ladder = exponent_ladder();
        match which {
            Inequality::InqTech2 | Inequality::InqTech3 => GridSpec {
                x: x_grid(1000 * scale),
                a: ladder.clone(),
                m: ladder,
                n: vec![],
            },
            Inequality::InqTech1 => GridSpec {
                x: x_grid(10_000 * scale),
                a: ladder,
                m: vec![],
                n: vec![],
            },
            Inequality::TransfEst => GridSpec {
                x: x_grid(100 * scale),
                a: vec![],
                m: vec![],
                n: (1..=1024).collect(),
            },
        }
    }

    pub fn tuple_count(&self, which: Inequality) -> usize {
        match which {
            Inequality::InqTech2 | Inequality::InqTech3 => self.x.len() * self.a.len() * self.m.len(),
            Inequality::InqTech1 => self.x.len() * self.a.len(),
            Inequality::TransfEst => self.x.len() * self.n.len(),
        }
    }
}

/// Evaluates every tuple of `grid`. Order is deterministic: x slowest.
pub fn sweep(which: Inequality, grid: &GridSpec) -> Result<Vec<IneqCase>> {
    if grid.tuple_count(which) == 0 {
        return Err(AdmError::EmptyGrid);
    }
    let per_x: Result<Vec<Vec<IneqCase>>> = grid
        .x
        .par_iter()
        .map(|&x| -> Result<Vec<IneqCase>> {
            let mut out = Vec::new();
            match which {
                Inequality::InqTech2 | Inequality::InqTech3 => {
                    for &a in &grid.a {
                        for &m in &grid.m {
                            out.push(if which == Inequality::InqTech2 {
                                check_inq_tech2(x, a, m)?
                            } else {
                                check_inq_tech3(x, a, m)?
                            });
                        }
                    }
                }
                Inequality::InqTech1 => {
                    for &a in &grid.a {
                        out.push(check_inq_tech1(x, a)?);
                    }
                }
                Inequality::TransfEst => {
                    for &n in &grid.n {
                        out.push(check_transf_est(x, n)?);
                    }
                }
            }
            Ok(out)
        })
        .collect();
    Ok(per_x?.into_iter().flatten().collect())
}

pub fn sweep_by_name(name: &str, grid: &GridSpec) -> Result<Vec<IneqCase>> {
    sweep(name.parse()?, grid)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub name: Inequality,
    pub cases: usize,
    pub failures: Vec<IneqCase>,
    pub min_margin: f64,
}

impl SweepSummary {
    pub fn from_cases(name: Inequality, cases: &[IneqCase]) -> Self {
        Self {
            name,
            cases: cases.len(),
            failures: cases.iter().filter(|c| !c.passes()).copied().collect(),
            min_margin: cases.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
