//! Dense real linear algebra: matrices, the Jacobi eigensolver, functional
//! calculus and the Loewner order.

mod calculus;
mod eigen;
mod loewner;
mod matrix;

pub use calculus::{
    apply_function, commuting_weighted_product, det_pd, det_sym, matrix_function, pd_power,
    spectral_power, weighted_geometric_mean, CommutingPair,
};
pub(crate) use calculus::{require_pd, weighted_scalar_product};
pub use eigen::{eigh, SpectralDecomp, DEFAULT_EIGH_TOL, MAX_SWEEPS};
pub use loewner::{loewner_compare, LoewnerVerdict, Ordering};
pub use matrix::{Matrix, SymMatrix};
