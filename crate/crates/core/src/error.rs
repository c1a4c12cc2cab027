use thiserror::Error;

/// Errors raised by the numerical kernels, the chain verifiers and the
/// campaign runner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off_diag:e})")]
    NonConverged { sweeps: usize, off_diag: f64 },

    #[error("input contains a non-finite entry")]
    NonFiniteInput,

    #[error("value {value} lies outside the function domain ({lo}, {hi})")]
    DomainViolation { value: f64, lo: f64, hi: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: String, right: String },

    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("negative power {power} of a singular matrix")]
    NegativePowerOfSingular { power: f64 },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("quadrature node count {0} outside 1..=512")]
    NOutOfRange(usize),

    #[error("integrand is not finite at node {node}")]
    NonFiniteSample { node: f64 },

    #[error("Schatten exponent {0} is less than one")]
    PLessThanOne(f64),

    #[error("input {0} is not positive")]
    NonPositiveInput(f64),

    #[error("bad sampling range [{lo}, {hi}]")]
    BadRange { lo: f64, hi: f64 },

    #[error("degenerate interval for {0}")]
    DegenerateInterval(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheoremId(String),

    #[error("config parse error at line {line}: {message}")]
    ConfigParse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn dims(left: impl std::fmt::Display, right: impl std::fmt::Display) -> Self {
        Error::DimMismatch {
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}
