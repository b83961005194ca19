use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AdmError {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("lattice mismatch: n={left_n}, L={left_l} vs n={right_n}, L={right_l}")]
    LatticeMismatch {
        left_n: usize,
        left_l: f64,
        right_n: usize,
        right_l: f64,
    },

    #[error("invalid filter: {0}")]
    InvalidFilter(String),

    #[error("non-invertible filter: {0}")]
    NonInvertibleFilter(String),

    #[error("operation requires a Helmholtz filter, got {0}")]
    NotHelmholtz(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty grid")]
    EmptyGrid,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("blow-up at step {step} (t = {t}): non-finite value in field")]
    BlowUp { step: u64, t: f64 },

    #[error("CFL violated: dt = {dt} > 0.5*dx/max|u0| = {limit}")]
    Cfl { dt: f64, limit: f64 },

    #[error("bad snapshot {path}: {reason}")]
    Snapshot { path: PathBuf, reason: String },

    #[error("unknown inequality '{0}'")]
    UnknownInequality(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl AdmError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        AdmError::Io {
            context: context.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, AdmError>;
