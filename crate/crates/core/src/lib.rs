//! Approximate deconvolution LES models on the periodic torus.
//!
//! The crate is organized bottom-up:
//!
//! * [`lattice`], [`transform`], [`field`], [`spectral`], [`snapshot`]: truncated
//!   Fourier representation of periodic vector fields and its I/O.
//! * [`filters`] and [`deconvolution`]: Fourier multipliers for the filters
//!   and the van Cittert operator `D_N`.
//! * [`solver`]: DNS and ADM time integration sharing one scheme.
//! * [`diagnostics`]: residual stress, modeling error, error bounds and rates.
//! * [`inequalities`]: sweeps of the scalar inequalities behind the bounds.
//! * [`harness`]: the `adm` command line.

pub mod error;
pub mod lattice;
pub mod transform;
pub mod field;
pub mod spectral;
pub mod snapshot;
pub mod filters;
pub mod deconvolution;
pub mod inequalities;
pub mod solver;
pub mod diagnostics;
pub mod harness;

pub use error::{AdmError, Result};
pub use field::{PhysicalField, SpectralField};
pub use lattice::WaveLattice;
pub use filters::FilterSpec;
pub use deconvolution::DeconvOp;
