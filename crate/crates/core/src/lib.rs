//! Randomized, seeded verification of Hermite-Hadamard type inequality chains
//! for scalars, positive matrices and unitarily invariant norms.
//!
//! Each verifier in [`chains`] builds the terms of one chain and reports the
//! margins between neighbours. [`campaign`] runs them over seeded random
//! inputs and writes a reproducible JSON report.
//!
//! The examples directory has one program per capability:
//!
//! - `eigendecomposition`, `loewner_order`, `geometric_mean`: the matrix kernels
//! - `quadrature`, `norms`, `sampling`
//! - `scalar_chains`, `dragomir`, `commuting_chains`, `trace_chains`, `determinant`
//! - `uin_chains`, `kittaneh`, `witnesses`
//! - `campaign`, `ablation`, `config_file`

pub mod campaign;
pub mod chains;
pub mod error;
pub mod functions;
pub mod linalg;
pub mod norms;
pub mod quadrature;
pub mod sampler;

pub use error::{Error, Result};
