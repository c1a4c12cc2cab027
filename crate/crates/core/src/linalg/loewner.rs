use serde::{Deserialize, Serialize};

use super::eigen::{eigh, DEFAULT_EIGH_TOL};
use super::matrix::SymMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Ordering {
    LessEqual,
    GreaterEqual,
    Equal,
    Incomparable,
}

/// Outcome of a Loewner-order comparison of `a` against `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoewnerVerdict {
    pub ordering: Ordering,
    /// Smallest eigenvalue of `b - a` (signed).
    pub min_gap: f64,
    /// `max(1, ‖a‖_op, ‖b‖_op)`, the unit the tolerance is measured in.
    pub scale: f64,
}

impl LoewnerVerdict {
    pub fn is_less_equal(&self) -> bool {
        matches!(self.ordering, Ordering::LessEqual | Ordering::Equal)
    }

    pub fn relative_gap(&self) -> f64 {
        self.min_gap / self.scale
    }
}

fn op_norm(s: &SymMatrix) -> Result<f64> {
    let d = eigh(s, DEFAULT_EIGH_TOL)?;
    Ok(d.min_eigenvalue().abs().max(d.max_eigenvalue().abs()))
}

/// `a ≤ b` holds when `λ_min(b - a) ≥ -tol · max(1, ‖a‖_op, ‖b‖_op)`.
pub fn loewner_compare(a: &SymMatrix, b: &SymMatrix, tol: f64) -> Result<LoewnerVerdict> {
    if a.dim() != b.dim() {
        return Err(Error::dims(a.dim(), b.dim()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let scale = 1.0_f64.max(op_norm(a)?).max(op_norm(b)?);
    let diff = eigh(&b.lincomb(1.0, a, -1.0)?, DEFAULT_EIGH_TOL)?;
    let min_gap = diff.min_eigenvalue();
    let max_gap = diff.max_eigenvalue();
    let slack = tol * scale;
    let le = min_gap >= -slack;
    let ge = -max_gap >= -slack;
    let ordering = match (le, ge) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::LessEqual,
        (false, true) => Ordering::GreaterEqual,
        (false, false) => Ordering::Incomparable,
    };
    Ok(LoewnerVerdict {
        ordering,
        min_gap,
        scale,
    })
}
