use serde::{Deserialize, Serialize};

use super::matrix::{Matrix, SymMatrix};
use crate::error::{Error, Result};

/// Default relative off-diagonal tolerance for [`eigh`].
pub const DEFAULT_EIGH_TOL: f64 = 1e-12;
/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Orthogonal eigenbasis `q` (columns) and ascending eigenvalues `lambda`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralDecomp {
    pub q: Matrix,
    pub lambda: Vec<f64>,
}

impl SpectralDecomp {
    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.lambda.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.lambda.last().copied().unwrap_or(f64::NAN)
    }

    /// `q · diag(lambda) · qᵀ`.
    pub fn reconstruct(&self) -> SymMatrix {
        SymMatrix::from_spectrum(&self.q, &self.lambda)
    }

    /// Rebuilds `q · diag(g(λᵢ)) · qᵀ` for an arbitrary fallible map.
    pub fn map<F>(&self, g: F) -> Result<SymMatrix>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let values = self.lambda.iter().map(|&l| g(l)).collect::<Result<Vec<_>>>()?;
        Ok(SymMatrix::from_spectrum(&self.q, &values))
    }
}

fn off_diagonal_mass(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Iterates full sweeps over the upper triangle until the off-diagonal
/// Frobenius mass drops below `tol · ‖s‖_F` (at most [`MAX_SWEEPS`]). The
/// first sweeps skip rotations below a threshold of `0.2 · off² / n²`, the
/// classical threshold strategy. Eigenvalues are returned ascending with the
/// columns of `q` permuted consistently, and each column is signed so its
/// largest-magnitude entry is nonnegative.
pub fn eigh(s: &SymMatrix, tol: f64) -> Result<SpectralDecomp> {
    eigh_with_cap(s, tol, MAX_SWEEPS)
}

pub(crate) fn eigh_with_cap(s: &SymMatrix, tol: f64, max_sweeps: usize) -> Result<SpectralDecomp> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("eigh tolerance must be positive, got {tol}")));
    }
    if !s.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    let n = s.dim();
    let mut a = s.as_matrix().clone();
    let mut v = Matrix::identity(n);
    let target = tol * s.frobenius_norm();

    let mut converged = false;
    let mut off = off_diagonal_mass(&a);
    for sweep in 0..max_sweeps {
        if off <= target {
            converged = true;
            break;
        }
        let threshold = if sweep < 3 {
            0.2 * off * off / ((n * n) as f64)
        } else {
            0.0
        };
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 || apq * apq <= threshold {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                // Negligible against both pivots.
                if sweep > 3
                    && app.abs() + 100.0 * apq.abs() == app.abs()
                    && aqq.abs() + 100.0 * apq.abs() == aqq.abs()
                {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                rotate(&mut a, &mut v, p, q, c, sn, t);
            }
        }
        off = off_diagonal_mass(&a);
    }
    if !converged && off > target {
        return Err(Error::NonConverged {
            sweeps: max_sweeps,
            off_diag: off,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag = a.diagonal();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let lambda: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut q = Matrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        let col = v.column(old_col);
        let pivot = col
            .iter()
            .copied()
            .fold(0.0_f64, |best, x| if x.abs() > best.abs() { x } else { best });
        let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
        for (i, x) in col.into_iter().enumerate() {
            q[(i, new_col)] = sign * x;
        }
    }
    Ok(SpectralDecomp { q, lambda })
}

/// Applies the rotation annihilating `a[p,q]`, accumulating it into `v`.
#[inline]
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64, t: f64) {
    let n = a.rows();
    let apq = a[(p, q)];
    let tau = s / (1.0 + c);
    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        let new_rp = arp - s * (arq + tau * arp);
        let new_rq = arq + s * (arp - tau * arq);
        a[(r, p)] = new_rp;
        a[(p, r)] = new_rp;
        a[(r, q)] = new_rq;
        a[(q, r)] = new_rq;
    }
    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = vrp - s * (vrq + tau * vrp);
        v[(r, q)] = vrq + s * (vrp - tau * vrq);
    }
}
