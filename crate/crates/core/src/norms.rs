//! Singular values, the unitarily invariant norm family used by the chains
//! (Schatten p, operator, trace, Ky Fan) and the trace functional.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum NormSpec {
    /// `(Σ σᵢᵖ)^{1/p}` for real `p ≥ 1`; `p = ∞` is the operator norm.
    Schatten(f64),
    OperatorNorm,
    TraceNorm,
    /// Sum of the `k` largest singular values.
    KyFan(usize),
}

impl NormSpec {
    pub fn schatten(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::PLessThanOne(p));
        }
        Ok(NormSpec::Schatten(p))
    }

    pub fn ky_fan(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("Ky Fan index must be at least 1".into()));
        }
        Ok(NormSpec::KyFan(k))
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NormSpec::Schatten(p) if p.is_infinite() => "schatten:inf".to_string(),
            NormSpec::Schatten(p) => format!("schatten:{p}"),
            NormSpec::OperatorNorm => "opnorm".to_string(),
            NormSpec::TraceNorm => "tracenorm".to_string(),
            NormSpec::KyFan(k) => format!("kyfan:{k}"),
        };
        f.pad(&s)
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        let bad = || Error::InvalidArgument(format!("unknown norm `{s}`"));
        match lower.split_once(':') {
            Some(("schatten", p)) => {
                let p = if p.trim() == "inf" {
                    f64::INFINITY
                } else {
                    p.trim().parse::<f64>().map_err(|_| bad())?
                };
                NormSpec::schatten(p)
            }
            Some(("kyfan", k)) => NormSpec::ky_fan(k.trim().parse::<usize>().map_err(|_| bad())?),
            None if lower == "opnorm" => Ok(NormSpec::OperatorNorm),
            None if lower == "tracenorm" => Ok(NormSpec::TraceNorm),
            _ => Err(bad()),
        }
    }
}

/// Singular values in descending order, computed by one-sided Jacobi
/// rotations on the columns (the square roots of the eigenvalues of `mᵀm`).
pub fn singular_values(m: &Matrix) -> Vec<f64> {
    let work = if m.rows() >= m.cols() { m.clone() } else { m.transpose() };
    let (rows, cols) = (work.rows(), work.cols());
    // column-major copy for cache-friendly rotations
    let mut u: Vec<Vec<f64>> = (0..cols).map(|j| work.column(j)).collect();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..rows {
                    alpha += u[p][i] * u[p][i];
                    beta += u[q][i] * u[q][i];
                    gamma += u[p][i] * u[q][i];
                }
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = u.split_at_mut(q);
                let (up, uq) = (&mut left[p], &mut right[0]);
                for i in 0..rows {
                    let a = up[i];
                    let b = uq[i];
                    up[i] = c * a - s * b;
                    uq[i] = s * a + c * b;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sigma: Vec<f64> = u.iter().map(|col| col.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    sigma.sort_by(|a, b| b.total_cmp(a));
    sigma
}

/// Norm of a descending singular-value list.
pub fn norm_from_singular_values(sigma: &[f64], spec: NormSpec) -> Result<f64> {
    let top = sigma.first().copied().unwrap_or(0.0);
    match spec {
        NormSpec::Schatten(p) if p.is_nan() || p < 1.0 => Err(Error::PLessThanOne(p)),
        NormSpec::Schatten(p) if p.is_infinite() => Ok(top),
        NormSpec::OperatorNorm => Ok(top),
        NormSpec::Schatten(p) if p == 1.0 => Ok(sigma.iter().sum()),
        NormSpec::TraceNorm => Ok(sigma.iter().sum()),
        NormSpec::Schatten(p) => {
            if top == 0.0 {
                return Ok(0.0);
            }
            let s: f64 = sigma.iter().map(|x| (x / top).powf(p)).sum();
            Ok(top * s.powf(1.0 / p))
        }
        NormSpec::KyFan(0) => Err(Error::InvalidArgument("Ky Fan index must be at least 1".into())),
        NormSpec::KyFan(k) => Ok(sigma.iter().take(k).sum()),
    }
}

pub fn norm(m: &Matrix, spec: NormSpec) -> Result<f64> {
    norm_from_singular_values(&singular_values(m), spec)
}

pub fn trace(m: &Matrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(m.diagonal().iter().sum())
}

/// Residuals of `Tr(AT) = Tr(TA)` and `|Tr(AT)| ≤ ‖A‖₁ ‖T‖`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub trace_at: f64,
    pub trace_ta: f64,
    pub cyclicity_residual: f64,
    /// `max(0, |Tr(AT)| - ‖A‖₁‖T‖_op)`.
    pub bound_residual: f64,
}

pub fn trace_property_check(a: &Matrix, t: &Matrix) -> Result<TraceReport> {
    if !a.is_square() || !t.is_square() || a.rows() != t.rows() {
        return Err(Error::dims(
            format!("{}x{}", a.rows(), a.cols()),
            format!("{}x{}", t.rows(), t.cols()),
        ));
    }
    let trace_at = trace(&a.matmul(t)?)?;
    let trace_ta = trace(&t.matmul(a)?)?;
    let bound = norm(a, NormSpec::TraceNorm)? * norm(t, NormSpec::OperatorNorm)?;
    Ok(TraceReport {
        trace_at,
        trace_ta,
        cyclicity_residual: (trace_at - trace_ta).abs(),
        bound_residual: (trace_at.abs() - bound).max(0.0),
    })
}
