//! The `adm` command line: checks, symbol tables, simulations and rates.
//!
//! Exit codes: 0 when every check passes, 1 on a failed check or a runtime
//! error, 2 on bad flags or a missing or malformed config file.
//!
//! Every CSV starts with a `# config_sha256=<hex>` comment line followed by
//! the column header. Floats are written in shortest round-trip exponent
//! form, so identical inputs give byte-identical files.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::deconvolution::DeconvOp;
use crate::diagnostics::{error_report, ErrorReport};
use crate::error::AdmError;
use crate::filters::{gaussian_approx_error, helmholtz_power_sandwich, FilterSpec};
use crate::inequalities::{sweep, GridSpec, IneqCase, Inequality, SweepSummary};
use crate::lattice::WaveLattice;
use crate::snapshot;
use crate::solver::{run_experiment, ExperimentOutput, SimConfig};
use crate::spectral::sobolev_norm_sq;

/// Lowercase hex SHA-256 digest.
pub fn sha256_hex(data: impl AsRef<[u8]>) -> String {
    Sha256::digest(data.as_ref())
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

#[derive(Debug, Parser)]
#[command(name = "adm", version, about = "Approximate deconvolution model toolkit")]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "ADM_THREADS")]
    pub threads: Option<usize>,
    /// Leave wall-clock data out of every output file.
    #[arg(long, global = true)]
    pub deterministic: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterKind {
    Helmholtz,
    Gaussian,
    GaussianApprox,
    HelmholtzPower,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep the scalar inequalities, deconvolution properties and filter bounds.
    Verify {
        /// One of inq_tech2, inq_tech3, inq_tech1, transf_est, or all.
        #[arg(long, default_value = "all")]
        ineq: String,
        /// Ten times denser x grid.
        #[arg(long)]
        dense: bool,
        /// Write every evaluated row here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Filter widths for the deconvolution checks [default: 0.1,1].
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<f64>,
        /// Helmholtz orders for the deconvolution checks [default: 0.75,1,2,4].
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        /// Deconvolution orders [default: 0..=32].
        #[arg(long = "N", value_delimiter = ',')]
        orders: Vec<u32>,
        /// Largest |k| of the deconvolution grid.
        #[arg(long, default_value_t = 1e7)]
        kmax: f64,
    },
    /// Tabulate filter, inverse filter and deconvolution symbols.
    Symbols {
        #[arg(long, value_enum, default_value_t = FilterKind::Helmholtz)]
        filter: FilterKind,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        /// Exponent of the approximant or Helmholtz power.
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Helmholtz power width [default: alpha/sqrt(24 m)].
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long = "N", value_delimiter = ',', default_value = "0,1,2,4,8")]
        orders: Vec<u32>,
        /// Largest |k|.
        #[arg(long, default_value_t = 100.0)]
        kmax: f64,
        /// Log-spaced points in |k|² (k² = 0 is always included).
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Output file (standard output when absent).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the DNS and one ADM per order.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Output directory [default: output_dir from the config].
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Modeling error, residual stress, bounds and fitted rate of an experiment.
    Rates {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest gap between the Gaussian and its approximants over lattice modes.
    GaussianApprox {
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 64)]
        m_max: u32,
        /// Lattice size whose modes are sampled.
        #[arg(long, default_value_t = 32)]
        n: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad input from the user; exit 2.
    Usage(String),
    /// Runtime error; exit 1.
    Runtime(AdmError),
}

impl From<AdmError> for Failure {
    fn from(e: AdmError) -> Self {
        Failure::Runtime(e)
    }
}

type Outcome = std::result::Result<bool, Failure>;

/// Parses `args` (program name first), runs the command and returns the exit
/// code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Some(k) = cli.threads {
        if k == 0 {
            eprintln!("error: --threads must be at least 1");
            return 2;
        }
        // fails only when a pool already exists, e.g. in tests
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    match run(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Verify {
            ineq,
            dense,
            csv,
            alpha,
            p,
            orders,
            kmax,
        } => {
            let alphas = or_default(alpha, &[0.1, 1.0]);
            let ps = or_default(p, &[0.75, 1.0, 2.0, 4.0]);
            let orders = if orders.is_empty() {
                (0..=32).collect()
            } else {
                orders.clone()
            };
            verify(ineq, *dense, csv.as_deref(), &alphas, &ps, &orders, *kmax)
        }
        Command::Symbols {
            filter,
            alpha,
            p,
            m,
            mu,
            orders,
            kmax,
            points,
            csv,
        } => {
            let spec = match filter {
                FilterKind::Helmholtz => FilterSpec::Helmholtz { alpha: *alpha, p: *p },
                FilterKind::Gaussian => FilterSpec::Gaussian { alpha: *alpha },
                FilterKind::GaussianApprox => FilterSpec::GaussianApprox { alpha: *alpha, m: *m },
                FilterKind::HelmholtzPower => FilterSpec::HelmholtzPower {
                    mu: mu.unwrap_or(alpha / (24.0 * *m as f64).sqrt()),
                    m: *m,
                },
            };
            spec.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            if !(*kmax > 0.0) || *points < 2 {
                return Err(Failure::Usage("need --kmax > 0 and --points >= 2".into()));
            }
            let text = symbols_csv(&spec, orders, *kmax, *points);
            emit(csv.as_deref(), &text)?;
            Ok(true)
        }
        Command::Simulate { config, out } => {
            let cfg = load_config(config)?;
            let out = out.clone().unwrap_or_else(|| cfg.output_dir.clone());
            simulate(&cfg, &out, cli.deterministic)
        }
        Command::Rates { config, out } => {
            let cfg = load_config(config)?;
            let out = out.clone().unwrap_or_else(|| cfg.output_dir.clone());
            rates(&cfg, &out)
        }
        Command::GaussianApprox {
            alpha,
            m_max,
            n,
            csv,
        } => {
            if !(*alpha > 0.0) || *m_max == 0 {
                return Err(Failure::Usage("need --alpha > 0 and --m-max >= 1".into()));
            }
            let lat = WaveLattice::periodic(*n).map_err(|e| Failure::Usage(e.to_string()))?;
            let (text, ok) = gaussian_approx_csv(*alpha, *m_max, &lat);
            emit(csv.as_deref(), &text)?;
            Ok(ok)
        }
    }
}

fn or_default(v: &[f64], default: &[f64]) -> Vec<f64> {
    if v.is_empty() {
        default.to_vec()
    } else {
        v.to_vec()
    }
}

fn load_config(path: &Path) -> std::result::Result<SimConfig, Failure> {
    let cfg = SimConfig::load(path).map_err(|e| Failure::Usage(e.to_string()))?;
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

/// Writes to `path`, or to standard output when `None`.
fn emit(path: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => write_file(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> std::result::Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| AdmError::io(dir.display().to_string(), e))?;
    }
    std::fs::write(path, bytes).map_err(|e| AdmError::io(path.display().to_string(), e))?;
    Ok(())
}

/// CSV text with the hash comment and header already written.
struct Csv(String);

impl Csv {
    fn new(config_hash: &str, header: &[&str]) -> Self {
        Csv(format!("# config_sha256={config_hash}\n{}\n", header.join(",")))
    }

    fn row(&mut self, cells: &[String]) {
        self.0.push_str(&cells.join(","));
        self.0.push('\n');
    }
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn k2_grid(kmax: f64, points: usize) -> Vec<f64> {
    let hi = (kmax * kmax).log10();
    let lo = if hi > -2.0 { -2.0 } else { hi - 1.0 };
    (0..points)
        .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (points - 1) as f64))
        .collect()
}

fn verify(
    ineq: &str,
    dense: bool,
    csv: Option<&Path>,
    alphas: &[f64],
    ps: &[f64],
    orders: &[u32],
    kmax: f64,
) -> Outcome {
    let selection: Vec<Inequality> = if ineq == "all" {
        Inequality::ALL.to_vec()
    } else {
        vec![ineq.parse().map_err(|e: AdmError| Failure::Usage(e.to_string()))?]
    };
    if alphas.iter().any(|a| !(*a > 0.0)) || ps.iter().any(|p| !(*p >= 0.75)) || !(kmax > 0.0) {
        return Err(Failure::Usage("need alpha > 0, p >= 0.75 and kmax > 0".into()));
    }
    let hash = sha256_hex(
        json!({
            "command": "verify", "ineq": ineq, "dense": dense, "alpha": alphas,
            "p": ps, "N": orders, "kmax": kmax,
        })
        .to_string(),
    );
    let mut table = csv.map(|_| Csv::new(&hash, &["check", "params", "k2", "lhs", "rhs", "pass"]));
    let mut all_ok = true;

    for which in selection {
        let start = Instant::now();
        let cases = sweep(which, &GridSpec::standard(which, dense))?;
        let summary = SweepSummary::from_cases(which, &cases);
        println!(
            "{which} cases={} failures={} min_margin={} {} ({:.2}s)",
            summary.cases,
            summary.failures.len(),
            num(summary.min_margin),
            verdict(summary.passed()),
            start.elapsed().as_secs_f64()
        );
        if let Some(first) = summary.failures.first() {
            print_case("first failure", first);
        }
        all_ok &= summary.passed();
        if let Some(t) = table.as_mut() {
            for c in &cases {
                t.row(&[
                    which.to_string(),
                    c.params.to_string(),
                    String::new(),
                    num(c.lhs),
                    num(c.rhs),
                    c.passes().to_string(),
                ]);
            }
        }
    }

    if ineq == "all" {
        all_ok &= verify_deconvolution(alphas, ps, orders, kmax, table.as_mut())?;
        all_ok &= verify_filters(table.as_mut());
    }
    if let (Some(path), Some(t)) = (csv, table) {
        write_file(path, t.0.as_bytes())?;
    }
    println!("verify {}", verdict(all_ok));
    Ok(all_ok)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn print_case(what: &str, c: &IneqCase) {
    println!(
        "  {what}: {} {} lhs={} rhs={} side_ok={}",
        c.name,
        c.params,
        num(c.lhs),
        num(c.rhs),
        c.side_ok
    );
}

fn verify_deconvolution(
    alphas: &[f64],
    ps: &[f64],
    orders: &[u32],
    kmax: f64,
    mut table: Option<&mut Csv>,
) -> std::result::Result<bool, Failure> {
    let grid = k2_grid(kmax, 400);
    let mut ok = true;
    let mut rows = 0usize;
    let mut first: Option<String> = None;
    for &alpha in alphas {
        for &p in ps {
            for &order in orders {
                let spec = FilterSpec::Helmholtz { alpha, p };
                let report = DeconvOp::new(spec, order).check_properties(&grid)?;
                rows += report.rows.len();
                if let Some(r) = report.failures().next() {
                    ok = false;
                    first.get_or_insert_with(|| {
                        format!(
                            "{} alpha={alpha} p={p} N={order} k2={} lhs={} rhs={}",
                            r.property.label(),
                            num(r.k2),
                            num(r.lhs),
                            num(r.rhs)
                        )
                    });
                }
                if let Some(t) = table.as_deref_mut() {
                    for r in &report.rows {
                        t.row(&[
                            r.property.label().to_string(),
                            format!("alpha={alpha};p={p};N={order}"),
                            num(r.k2),
                            num(r.lhs),
                            num(r.rhs),
                            r.pass.map(|b| b.to_string()).unwrap_or_default(),
                        ]);
                    }
                }
            }
        }
    }
    println!("deconvolution rows={rows} {}", verdict(ok));
    if let Some(f) = first {
        println!("  first failure: {f}");
    }
    Ok(ok)
}

/// Distinct `|k|²` values of a lattice, ascending.
pub fn lattice_k2_values(lat: &WaveLattice) -> Vec<f64> {
    let set: BTreeSet<u64> = lat.k2_table().iter().map(|k| k.to_bits()).collect();
    let mut v: Vec<f64> = set.into_iter().map(f64::from_bits).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Gaussian-approximant gap and Helmholtz-power sandwich on the modes of a
/// 32³ lattice for α ∈ {0.5, 1, 2}.
fn verify_filters(mut table: Option<&mut Csv>) -> bool {
    let lat = WaveLattice::periodic(32).expect("valid lattice");
    let k2s = lattice_k2_values(&lat);
    let mut ok = true;
    let mut first = None;
    for alpha in [0.5, 1.0, 2.0] {
        for m in 1..=64u32 {
            let (sup, at) = sup_gap(alpha, m, &k2s);
            let bound = 2.0 / m as f64;
            let pass = sup <= bound;
            if !pass {
                ok = false;
                first.get_or_insert(format!("gaussian_approx alpha={alpha} m={m} sup={}", num(sup)));
            }
            if let Some(t) = table.as_deref_mut() {
                t.row(&[
                    "gaussian_approx".into(),
                    format!("alpha={alpha};m={m}"),
                    num(at),
                    num(sup),
                    num(bound),
                    pass.to_string(),
                ]);
            }
        }
        for m in 1..=8u32 {
            let mu = alpha / (24.0 * m as f64).sqrt();
            let mut m_ok = true;
            for &k2 in &k2s {
                let s = helmholtz_power_sandwich(mu, m, k2);
                if !s.holds(1e-12) {
                    m_ok = false;
                    first.get_or_insert(format!(
                        "sandwich mu={mu} m={m} k2={k2} lo={} mid={} hi={}",
                        num(s.lo),
                        num(s.mid),
                        num(s.hi)
                    ));
                }
            }
            if let Some(t) = table.as_deref_mut() {
                t.row(&[
                    "helmholtz_power_sandwich".into(),
                    format!("mu={mu};m={m}"),
                    String::new(),
                    String::new(),
                    String::new(),
                    m_ok.to_string(),
                ]);
            }
            ok &= m_ok;
        }
    }
    println!("filters {}", verdict(ok));
    if let Some(f) = first {
        println!("  first failure: {f}");
    }
    ok
}

/// `(sup_k |G̃ − G̃_m|, k² attaining it)` over `k2s`.
pub fn sup_gap(alpha: f64, m: u32, k2s: &[f64]) -> (f64, f64) {
    k2s.iter()
        .map(|&k2| (gaussian_approx_error(alpha, m, k2), k2))
        .fold((0.0, 0.0), |best, cur| if cur.0 > best.0 { cur } else { best })
}

fn gaussian_approx_csv(alpha: f64, m_max: u32, lat: &WaveLattice) -> (String, bool) {
    let hash = sha256_hex(
        json!({"command": "gaussian-approx", "alpha": alpha, "m_max": m_max, "n": lat.n(), "L": lat.box_size()})
            .to_string(),
    );
    let k2s = lattice_k2_values(lat);
    let mut t = Csv::new(&hash, &["m", "sup_error", "bound", "k2_at_sup", "pass"]);
    let mut ok = true;
    for m in 1..=m_max {
        let (sup, at) = sup_gap(alpha, m, &k2s);
        let bound = 2.0 / m as f64;
        ok &= sup <= bound;
        t.row(&[m.to_string(), num(sup), num(bound), num(at), (sup <= bound).to_string()]);
    }
    (t.0, ok)
}

fn symbols_csv(spec: &FilterSpec, orders: &[u32], kmax: f64, points: usize) -> String {
    let hash = sha256_hex(
        json!({"command": "symbols", "filter": spec, "N": orders, "kmax": kmax, "points": points})
            .to_string(),
    );
    let mut header = vec!["k2".to_string(), "G_hat".into(), "A_hat".into()];
    header.extend(orders.iter().map(|n| format!("D_{n}_hat")));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut t = Csv::new(&hash, &header);
    let ops: Vec<DeconvOp> = orders.iter().map(|&n| DeconvOp::new(*spec, n)).collect();
    let grid = std::iter::once(0.0).chain(k2_grid(kmax, points));
    for k2 in grid {
        let mut row = vec![num(k2), num(spec.symbol(k2))];
        row.push(spec.inverse_symbol(k2).map(num).unwrap_or_default());
        row.extend(ops.iter().map(|op| num(op.symbol(k2))));
        t.row(&row);
    }
    t.0
}

fn simulate(cfg: &SimConfig, out: &Path, deterministic: bool) -> Outcome {
    let start = Instant::now();
    let output = run_experiment(cfg)?;
    let hash = cfg.hash();
    write_file(&out.join("config.json"), cfg.to_json().as_bytes())?;
    write_file(&out.join("series.csv"), series_csv(&output, &hash).as_bytes())?;
    write_snapshots(&output, &out.join("snapshots"))?;
    if !deterministic {
        let timing = json!({
            "wall_seconds": start.elapsed().as_secs_f64(),
            "threads": rayon::current_num_threads(),
        });
        write_file(&out.join("timing.json"), timing.to_string().as_bytes())?;
    }
    for run in std::iter::once(&output.dns).chain(&output.adm) {
        println!(
            "{} samples={} energy_final={} max_divergence={}",
            run.label(),
            run.fields.len(),
            num(0.5 * sobolev_norm_sq(run.last(), 0.0)),
            num(run.max_divergence)
        );
    }
    Ok(true)
}

fn series_csv(output: &ExperimentOutput, hash: &str) -> String {
    let mut t = Csv::new(
        hash,
        &["run", "N", "step", "t", "energy", "h1_norm_sq", "divergence"],
    );
    for run in std::iter::once(&output.dns).chain(&output.adm) {
        let label = run.label();
        let order = run.order.map(|n| n.to_string()).unwrap_or_default();
        for (i, f) in run.fields.iter().enumerate() {
            t.row(&[
                label.clone(),
                order.clone(),
                run.steps[i].to_string(),
                num(run.times[i]),
                num(0.5 * sobolev_norm_sq(f, 0.0)),
                num(sobolev_norm_sq(f, 1.0)),
                num(f.max_divergence_ratio()),
            ]);
        }
    }
    t.0
}

fn write_snapshots(output: &ExperimentOutput, dir: &Path) -> std::result::Result<(), Failure> {
    let every = output.config.snapshot_every;
    for run in std::iter::once(&output.dns).chain(&output.adm) {
        let last = run.fields.len() - 1;
        for (i, f) in run.fields.iter().enumerate() {
            let keep = i == 0 || i == last || (every > 0 && i % every == 0);
            if keep {
                let path = dir.join(format!("{}_s{:06}.admf", run.label(), run.steps[i]));
                if let Some(d) = path.parent() {
                    std::fs::create_dir_all(d).map_err(|e| AdmError::io(d.display().to_string(), e))?;
                }
                snapshot::write(&path, f)?;
            }
        }
    }
    Ok(())
}

/// Column names of the per-(N, t) rates table.
pub const RATES_DETAIL_COLUMNS: [&str; 14] = [
    "N",
    "step",
    "t",
    "eps_l2",
    "eps_hp",
    "grad_integral",
    "lhs",
    "tau_l2",
    "half_norm_defect",
    "bound_fin",
    "bound_tau",
    "log10_bound_stress",
    "log10_bound_main",
    "log10_bound_main_alt",
];

/// Column names of the per-N rates summary.
pub const RATES_SUMMARY_COLUMNS: [&str; 8] = [
    "N",
    "eps_l2_final",
    "lhs_final",
    "log10_bound_main",
    "bound_holds",
    "beta",
    "r2",
    "c_used",
];

pub fn rates_csvs(report: &ErrorReport, hash: &str) -> (String, String) {
    let mut detail = Csv::new(hash, &RATES_DETAIL_COLUMNS);
    for r in &report.rows {
        detail.row(&[
            r.order.to_string(),
            r.step.to_string(),
            num(r.t),
            num(r.eps_l2),
            num(r.eps_hp),
            num(r.grad_integral),
            num(r.lhs),
            num(r.tau_l2),
            num(r.half_norm),
            num(r.bound_fin),
            num(r.bound_tau),
            num(r.bound_stress.log10),
            num(r.bound_main.log10),
            num(r.bound_main_alt.log10),
        ]);
    }
    let mut summary = Csv::new(hash, &RATES_SUMMARY_COLUMNS);
    let (beta, r2) = report
        .beta
        .map(|f| (num(f.beta), num(f.r2)))
        .unwrap_or_default();
    for s in &report.summary {
        summary.row(&[
            s.order.to_string(),
            num(s.eps_l2_final),
            num(s.lhs_final),
            num(s.bound_main_log10),
            s.bound_holds.to_string(),
            beta.clone(),
            r2.clone(),
            num(report.constants.c),
        ]);
    }
    (detail.0, summary.0)
}

fn rates(cfg: &SimConfig, out: &Path) -> Outcome {
    let output = run_experiment(cfg)?;
    let report = error_report(&output)?;
    let hash = cfg.hash();
    let (detail, summary) = rates_csvs(&report, &hash);
    write_file(&out.join("config.json"), cfg.to_json().as_bytes())?;
    write_file(&out.join("rates_detail.csv"), detail.as_bytes())?;
    write_file(&out.join("rates_summary.csv"), summary.as_bytes())?;
    let extra = json!({
        "config_sha256": hash,
        "beta": report.beta,
        "constants": report.constants,
        "summary": report.summary,
    });
    write_file(
        &out.join("report.json"),
        serde_json::to_string_pretty(&extra).map_err(AdmError::from)?.as_bytes(),
    )?;
    let mut ok = true;
    for s in &report.summary {
        println!(
            "N={} eps_l2_final={} lhs_final={} log10_bound_main={} {}",
            s.order,
            num(s.eps_l2_final),
            num(s.lhs_final),
            num(s.bound_main_log10),
            verdict(s.bound_holds)
        );
        ok &= s.bound_holds;
    }
    match report.beta {
        Some(f) => println!("beta={} r2={}", num(f.beta), num(f.r2)),
        None => println!("beta unavailable"),
    }
    println!(
        "C={} (configured {}, calibrated {}) log10_kappa={}",
        num(report.constants.c),
        num(report.constants.c_configured),
        num(report.constants.c_calibrated),
        num(report.constants.kappa_log10)
    );
    Ok(ok)
}
