//! Time integration of the projected Navier–Stokes equations (DNS) and of the
//! approximate deconvolution model (ADM)
//!
//! ```text
//! ∂_t w + G ∇·(D_N w ⊗ D_N w) − νΔw + ∇q = G f,   w(0) = G u₀
//! ```
//!
//! Both share one code path: a [`Stepper`] carries an optional pre-operator
//! (D_N) applied before the quadratic product and an optional post-operator
//! (G) applied after it. Pressure is eliminated by Leray projection; the
//! scheme is SSP-RK3 with an exact integrating factor for diffusion.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::deconvolution::DeconvOp;
use crate::error::{AdmError, Result};
use crate::field::SpectralField;
use crate::filters::FilterSpec;
use crate::lattice::WaveLattice;
use crate::snapshot;
use crate::spectral::{leray_project_mut, nonlinear_term, sobolev_norm_sq, weighted_norm_sq};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InitialCondition {
    TaylorGreen {
        #[serde(default = "one")]
        amplitude: f64,
    },
    RandomSpectrum {
        decay: f64,
        seed: u64,
        #[serde(default = "half")]
        energy: f64,
    },
    Snapshot {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Forcing {
    #[default]
    None,
    Snapshot {
        path: PathBuf,
    },
}

fn one() -> f64 {
    1.0
}
fn half() -> f64 {
    0.5
}

/// Simulation parameters, read from and written back as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    /// Grid points per axis.
    pub n: usize,
    /// Box size L.
    #[serde(rename = "L", alias = "box_size")]
    pub box_size: f64,
    pub nu: f64,
    pub filter: FilterSpec,
    #[serde(rename = "N_list", alias = "n_list")]
    pub n_list: Vec<u32>,
    #[serde(rename = "T", alias = "t_final")]
    pub t_final: f64,
    pub dt: f64,
    pub init: InitialCondition,
    pub forcing: Forcing,
    pub output_dir: PathBuf,
    /// Keep a sample every this many steps (t = 0 and T are always kept).
    pub sample_every: usize,
    /// Write snapshots every this many samples; 0 writes only t = 0 and T.
    pub snapshot_every: usize,
    /// Sobolev product constant C used by the error bounds.
    pub sobolev_constant: f64,
    /// Print progress lines to standard error.
    pub progress: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            n: 16,
            box_size: 2.0 * std::f64::consts::PI,
            nu: 0.05,
            filter: FilterSpec::Helmholtz { alpha: 0.5, p: 1.0 },
            n_list: vec![0, 1, 2, 4, 8],
            t_final: 1.0,
            dt: 0.005,
            init: InitialCondition::TaylorGreen { amplitude: 1.0 },
            forcing: Forcing::None,
            output_dir: PathBuf::from("out"),
            sample_every: 1,
            snapshot_every: 0,
            sobolev_constant: 2.0,
            progress: false,
        }
    }
}

impl SimConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SimConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AdmError::io(format!("reading config {}", path.display()), e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn lattice(&self) -> Result<WaveLattice> {
        WaveLattice::new(self.n, self.box_size)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(AdmError::Config(m));
        self.lattice()?;
        self.filter.validate()?;
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return bad(format!("nu must be > 0, got {}", self.nu));
        }
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return bad(format!("T must be > 0, got {}", self.t_final));
        }
        if !(self.dt > 0.0 && self.dt <= self.t_final) {
            return bad(format!("dt must be in (0, T], got {}", self.dt));
        }
        if self.sample_every == 0 {
            return bad("sample_every must be >= 1".into());
        }
        if !(self.sobolev_constant > 0.0) {
            return bad("sobolev_constant must be > 0".into());
        }
        Ok(())
    }

    /// Number of fixed steps; the last sample lands on `steps · dt ≈ T`.
    pub fn steps(&self) -> u64 {
        (self.t_final / self.dt - 1e-9).ceil().max(1.0) as u64
    }

    /// SHA-256 of the canonical JSON encoding.
    pub fn hash(&self) -> String {
        crate::harness::sha256_hex(serde_json::to_string(self).expect("config serializes"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    pub t: f64,
    pub step: u64,
    pub field: SpectralField,
}

impl SolverState {
    pub fn new(field: SpectralField) -> Self {
        Self {
            t: 0.0,
            step: 0,
            field,
        }
    }
}

/// Right-hand side `P[−post(∇·(pre w ⊗ pre w)) + forcing]` plus the
/// integrating-factor RK3 update.
#[derive(Debug, Clone)]
pub struct Stepper {
    lattice: WaveLattice,
    nu: f64,
    dt: f64,
    pre: Option<Vec<f64>>,
    post: Option<Vec<f64>>,
    forcing: Option<SpectralField>,
    decay_full: Vec<f64>,
    decay_half: Vec<f64>,
    growth_half: Vec<f64>,
}

impl Stepper {
    fn build(
        lattice: WaveLattice,
        nu: f64,
        dt: f64,
        pre: Option<Vec<f64>>,
        post: Option<Vec<f64>>,
        forcing: Option<SpectralField>,
    ) -> Self {
        let k2 = lattice.k2_table();
        let table = |h: f64| k2.iter().map(|k| (-nu * k * h).exp()).collect::<Vec<_>>();
        Self {
            lattice,
            nu,
            dt,
            pre,
            post,
            forcing,
            decay_full: table(dt),
            decay_half: table(0.5 * dt),
            growth_half: table(-0.5 * dt),
        }
    }

    /// Navier–Stokes with forcing `f`.
    pub fn dns(lattice: WaveLattice, nu: f64, dt: f64, forcing: Option<SpectralField>) -> Self {
        let forcing = forcing.map(|f| prepare_forcing(f, None));
        Self::build(lattice, nu, dt, None, None, forcing)
    }

    /// ADM of order `order` with filter `spec`; the forcing is filtered here.
    pub fn adm(
        lattice: WaveLattice,
        nu: f64,
        dt: f64,
        spec: FilterSpec,
        order: u32,
        forcing: Option<SpectralField>,
    ) -> Self {
        let op = DeconvOp::new(spec, order);
        let k2 = lattice.k2_table();
        let pre = (order > 0).then(|| k2.iter().map(|&k| op.symbol(k)).collect());
        let post = Some(k2.iter().map(|&k| spec.symbol(k)).collect());
        let forcing = forcing.map(|f| prepare_forcing(f, Some(&spec)));
        Self::build(lattice, nu, dt, pre, post, forcing)
    }

    pub fn lattice(&self) -> &WaveLattice {
        &self.lattice
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Projected nonlinear and forcing terms.
    pub fn rhs(&self, w: &SpectralField) -> Result<SpectralField> {
        let mut out = match &self.pre {
            Some(table) => {
                let d = w.map_table(table);
                nonlinear_term(&d, &d)?
            }
            None => nonlinear_term(w, w)?,
        };
        if let Some(table) = &self.post {
            out = out.map_table(table);
        }
        out.scale_mut(-1.0);
        if let Some(f) = &self.forcing {
            out.axpy(1.0, f)?;
        }
        leray_project_mut(&mut out);
        Ok(out)
    }

    /// One SSP-RK3 step in integrating-factor form.
    pub fn step(&self, state: &SolverState) -> Result<SolverState> {
        let dt = self.dt;
        let u = &state.field;

        // stage 1: u1 = E(dt) (u + dt N(u))
        let mut u1 = u.clone();
        u1.axpy(dt, &self.rhs(u)?)?;
        let u1 = u1.map_table(&self.decay_full);

        // stage 2: u2 = 3/4 E(dt/2) u + 1/4 E(−dt/2) (u1 + dt N(u1))
        let mut tmp = u1.clone();
        tmp.axpy(dt, &self.rhs(&u1)?)?;
        let mut u2 = u.map_table(&self.decay_half);
        u2.scale_mut(0.75);
        u2.axpy(0.25, &tmp.map_table(&self.growth_half))?;

        // stage 3: u+ = 1/3 E(dt) u + 2/3 E(dt/2) (u2 + dt N(u2))
        let mut tmp = u2.clone();
        tmp.axpy(dt, &self.rhs(&u2)?)?;
        let mut next = u.map_table(&self.decay_full);
        next.scale_mut(1.0 / 3.0);
        next.axpy(2.0 / 3.0, &tmp.map_table(&self.decay_half))?;
        // exact in arithmetic; keeps modes that cancel to rounding level solenoidal
        leray_project_mut(&mut next);

        let step = state.step + 1;
        let t = step as f64 * dt;
        if !next.is_finite() {
            return Err(AdmError::BlowUp { step, t });
        }
        Ok(SolverState {
            t,
            step,
            field: next,
        })
    }
}

fn prepare_forcing(mut f: SpectralField, spec: Option<&FilterSpec>) -> SpectralField {
    f.dealias_mut();
    leray_project_mut(&mut f);
    match spec {
        Some(s) => s.apply(&f),
        None => f,
    }
}

fn load_forcing(cfg: &SimConfig, lattice: &WaveLattice) -> Result<Option<SpectralField>> {
    match &cfg.forcing {
        Forcing::None => Ok(None),
        Forcing::Snapshot { path } => {
            let f = snapshot::read(path)?;
            f.lattice().same_as(lattice)?;
            Ok(Some(f))
        }
    }
}

/// Advances the DNS state by one step.
pub fn dns_step(state: &SolverState, cfg: &SimConfig) -> Result<SolverState> {
    let lat = *state.field.lattice();
    let forcing = load_forcing(cfg, &lat)?;
    Stepper::dns(lat, cfg.nu, cfg.dt, forcing).step(state)
}

/// Advances the ADM state of order `order` by one step.
pub fn adm_step(state: &SolverState, cfg: &SimConfig, order: u32) -> Result<SolverState> {
    let lat = *state.field.lattice();
    let forcing = load_forcing(cfg, &lat)?;
    Stepper::adm(lat, cfg.nu, cfg.dt, cfg.filter, order, forcing).step(state)
}

/// Initial velocity: dealiased, projected, validated.
pub fn initial_field(cfg: &SimConfig) -> Result<SpectralField> {
    let lat = cfg.lattice()?;
    let mut u = match &cfg.init {
        InitialCondition::TaylorGreen { amplitude } => {
            SpectralField::taylor_green(lat, *amplitude, false)?
        }
        InitialCondition::RandomSpectrum {
            decay,
            seed,
            energy,
        } => SpectralField::random(lat, *decay, *energy, *seed),
        InitialCondition::Snapshot { path } => {
            let f = snapshot::read(path)?;
            f.lattice().same_as(&lat)?;
            f
        }
    };
    u.dealias_mut();
    leray_project_mut(&mut u);
    Ok(u)
}

/// Enforces `dt ≤ 0.5 Δx / max|u₀|`.
pub fn check_cfl(cfg: &SimConfig, u0: &SpectralField) -> Result<()> {
    let speed = u0.to_physical().max_speed();
    if speed == 0.0 {
        return Ok(());
    }
    let limit = 0.5 * u0.lattice().grid_spacing() / speed;
    if cfg.dt > limit {
        return Err(AdmError::Cfl { dt: cfg.dt, limit });
    }
    Ok(())
}

/// Time series of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSeries {
    /// `None` for the DNS.
    pub order: Option<u32>,
    pub steps: Vec<u64>,
    pub times: Vec<f64>,
    pub fields: Vec<SpectralField>,
    /// Largest divergence ratio seen over all steps.
    pub max_divergence: f64,
}

impl RunSeries {
    pub fn label(&self) -> String {
        match self.order {
            None => "dns".into(),
            Some(n) => format!("adm_N{n}"),
        }
    }

    pub fn last(&self) -> &SpectralField {
        self.fields.last().expect("runs keep at least two samples")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub config: SimConfig,
    /// Unfiltered DNS velocity u(t).
    pub dns: RunSeries,
    /// One entry per order in `config.n_list`, same sample times as `dns`.
    pub adm: Vec<RunSeries>,
}

impl ExperimentOutput {
    pub fn times(&self) -> &[f64] {
        &self.dns.times
    }

    pub fn adm_run(&self, order: u32) -> Option<&RunSeries> {
        self.adm.iter().find(|r| r.order == Some(order))
    }
}

fn integrate(
    stepper: &Stepper,
    start: SpectralField,
    cfg: &SimConfig,
    order: Option<u32>,
) -> Result<RunSeries> {
    let total = cfg.steps();
    let mut state = SolverState::new(start);
    let mut series = RunSeries {
        order,
        steps: vec![0],
        times: vec![0.0],
        fields: vec![state.field.clone()],
        max_divergence: state.field.max_divergence_ratio(),
    };
    let label = series.label();
    while state.step < total {
        state = stepper.step(&state)?;
        series.max_divergence = series.max_divergence.max(state.field.max_divergence_ratio());
        if state.step % cfg.sample_every as u64 == 0 || state.step == total {
            if cfg.progress {
                let e = 0.5 * sobolev_norm_sq(&state.field, 0.0);
                eprintln!("run={label} step={} t={} E={e:.6e}", state.step, state.t);
            }
            series.steps.push(state.step);
            series.times.push(state.t);
            series.fields.push(state.field.clone());
        }
    }
    Ok(series)
}

/// Runs the DNS once and one ADM per order in `n_list`, all with the same
/// step size and sample times. Deterministic for a given configuration.
pub fn run_experiment(cfg: &SimConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let lat = cfg.lattice()?;
    let u0 = initial_field(cfg)?;
    check_cfl(cfg, &u0)?;
    let forcing = load_forcing(cfg, &lat)?;

    let dns_stepper = Stepper::dns(lat, cfg.nu, cfg.dt, forcing.clone());
    let ubar0 = cfg.filter.apply(&u0);

    // DNS and every ADM order are independent runs
    let jobs: Vec<Option<u32>> = std::iter::once(None)
        .chain(cfg.n_list.iter().copied().map(Some))
        .collect();
    let mut runs: Vec<RunSeries> = jobs
        .par_iter()
        .map(|job| match job {
            None => integrate(&dns_stepper, u0.clone(), cfg, None),
            Some(order) => {
                let stepper = Stepper::adm(lat, cfg.nu, cfg.dt, cfg.filter, *order, forcing.clone());
                integrate(&stepper, ubar0.clone(), cfg, Some(*order))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let dns = runs.remove(0);
    Ok(ExperimentOutput {
        config: cfg.clone(),
        dns,
        adm: runs,
    })
}

/// `||A^{1/2} D_N^{1/2} w||₀²`, the quadratic invariant of the inviscid ADM.
pub fn model_energy(w: &SpectralField, spec: &FilterSpec, order: u32) -> Result<f64> {
    // errors for the Gaussian, whose inverse is unbounded
    spec.inverse_symbol(1.0)?;
    let op = DeconvOp::new(*spec, order);
    Ok(weighted_norm_sq(w, |k2| {
        spec.inverse_symbol(k2).expect("invertible filter") * op.symbol(k2)
    }))
}
