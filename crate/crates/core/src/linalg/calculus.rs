//! Functional calculus on symmetric matrices, fractional powers, positive
//! definite determinants, operator means and commuting pairs.

use serde::{Deserialize, Serialize};

use super::eigen::{eigh, SpectralDecomp, DEFAULT_EIGH_TOL};
use super::matrix::{Matrix, SymMatrix};
use crate::error::{Error, Result};
use crate::functions::FunctionSpec;

/// Eigenvalues within this multiple of `eps · max|λ|` of zero are treated as
/// zero when checking semidefiniteness.
const PSD_SLACK: f64 = 64.0 * f64::EPSILON;

/// `f(A) = q · diag(f(λᵢ)) · qᵀ`.
pub fn matrix_function(d: &SpectralDecomp, f: &FunctionSpec) -> Result<SymMatrix> {
    d.map(|l| f.eval(l))
}

/// Convenience: decompose then apply `f`.
pub fn apply_function(s: &SymMatrix, f: &FunctionSpec) -> Result<SymMatrix> {
    matrix_function(&eigh(s, DEFAULT_EIGH_TOL)?, f)
}

fn zero_floor(d: &SpectralDecomp) -> f64 {
    let scale = d.lambda.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    PSD_SLACK * scale * d.dim() as f64
}

/// Raises the eigenvalues of a decomposed semidefinite matrix to `t`.
pub fn spectral_power(d: &SpectralDecomp, t: f64) -> Result<SymMatrix> {
    let floor = zero_floor(d);
    let min = d.min_eigenvalue();
    if min < -floor {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min });
    }
    if t < 0.0 && min <= floor {
        return Err(Error::NegativePowerOfSingular { power: t });
    }
    d.map(|l| {
        Ok(if t == 0.0 {
            1.0
        } else if l <= floor {
            0.0
        } else {
            l.powf(t)
        })
    })
}

/// Fractional power of a positive (semi)definite matrix in its eigenbasis;
/// `0ᵗ = 0` for `t > 0`.
pub fn pd_power(a: &SymMatrix, t: f64) -> Result<SymMatrix> {
    if t == 1.0 {
        return Ok(a.clone());
    }
    spectral_power(&eigh(a, DEFAULT_EIGH_TOL)?, t)
}

/// Determinant of a positive definite matrix as the product of its
/// eigenvalues.
pub fn det_pd(a: &SymMatrix) -> Result<f64> {
    let d = eigh(a, DEFAULT_EIGH_TOL)?;
    let min = d.min_eigenvalue();
    if min <= 0.0 {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
    }
    Ok(d.lambda.iter().product())
}

/// Signed determinant of a symmetric matrix (product of eigenvalues).
pub fn det_sym(a: &SymMatrix) -> Result<f64> {
    Ok(eigh(a, DEFAULT_EIGH_TOL)?.lambda.iter().product())
}

pub(crate) fn require_pd(d: &SpectralDecomp) -> Result<()> {
    let min = d.min_eigenvalue();
    if min > 0.0 {
        Ok(())
    } else {
        Err(Error::NotPositiveDefinite { min_eigenvalue: min })
    }
}

fn check_unit(name: &str, t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} = {t} is outside [0, 1]")))
    }
}

/// Weighted geometric mean `A #_ν B = A^{1/2} (A^{-1/2} B A^{-1/2})^ν A^{1/2}`.
pub fn weighted_geometric_mean(a: &SymMatrix, b: &SymMatrix, nu: f64) -> Result<SymMatrix> {
    check_unit("nu", nu)?;
    if a.dim() != b.dim() {
        return Err(Error::dims(a.dim(), b.dim()));
    }
    let da = eigh(a, DEFAULT_EIGH_TOL)?;
    require_pd(&da)?;
    let db = eigh(b, DEFAULT_EIGH_TOL)?;
    require_pd(&db)?;
    if nu == 0.0 {
        return Ok(a.clone());
    }
    if nu == 1.0 {
        return Ok(b.clone());
    }
    let a_half = da.map(|l| Ok(l.sqrt()))?;
    let a_inv_half = da.map(|l| Ok(1.0 / l.sqrt()))?;
    let inner = b.congruence(&a_inv_half)?;
    let inner_pow = spectral_power(&eigh(&inner, DEFAULT_EIGH_TOL)?, nu)?;
    inner_pow.congruence(&a_half)
}

/// Two commuting positive operators sharing the orthogonal eigenbasis `q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutingPair {
    q: Matrix,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl CommutingPair {
    pub fn new(q: Matrix, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        let n = q.rows();
        if !q.is_square() {
            return Err(Error::NotSquare {
                rows: q.rows(),
                cols: q.cols(),
            });
        }
        if a.len() != n || b.len() != n {
            return Err(Error::dims(n, format!("{} / {}", a.len(), b.len())));
        }
        for &x in a.iter().chain(&b) {
            if !x.is_finite() {
                return Err(Error::NonFiniteInput);
            }
            if x <= 0.0 {
                return Err(Error::NonPositiveInput(x));
            }
        }
        let residual = (&(&q.transpose() * &q) - &Matrix::identity(n)).frobenius_norm();
        if residual > 1e-10 * n as f64 {
            return Err(Error::InvalidArgument(format!(
                "basis is not orthogonal (residual {residual:e})"
            )));
        }
        Ok(Self { q, a, b })
    }

    /// Pair diagonal in the standard basis.
    pub fn diagonal(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        Self::new(Matrix::identity(a.len()), a, b)
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.q
    }

    pub fn a_spectrum(&self) -> &[f64] {
        &self.a
    }

    pub fn b_spectrum(&self) -> &[f64] {
        &self.b
    }

    pub fn a(&self) -> SymMatrix {
        SymMatrix::from_spectrum(&self.q, &self.a)
    }

    pub fn b(&self) -> SymMatrix {
        SymMatrix::from_spectrum(&self.q, &self.b)
    }

    /// The same pair with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            q: self.q.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// Pair with both operators equal to `A`.
    pub fn collapsed(&self) -> Self {
        Self {
            q: self.q.clone(),
            a: self.a.clone(),
            b: self.a.clone(),
        }
    }

    /// Eigenvalues `aᵢᵗ bᵢ^{1-t}` in the shared basis.
    pub fn weighted_product_spectrum(&self, t: f64) -> Vec<f64> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(&a, &b)| weighted_scalar_product(a, b, t))
            .collect()
    }
}

/// `aᵗ b^{1-t}` with exact endpoints.
#[inline]
pub(crate) fn weighted_scalar_product(a: f64, b: f64, t: f64) -> f64 {
    if t == 1.0 {
        a
    } else if t == 0.0 {
        b
    } else {
        a.powf(t) * b.powf(1.0 - t)
    }
}

/// `Aᵗ B^{1-t}` for a commuting pair, built in the shared eigenbasis.
pub fn commuting_weighted_product(p: &CommutingPair, t: f64) -> Result<SymMatrix> {
    check_unit("t", t)?;
    Ok(SymMatrix::from_spectrum(&p.q, &p.weighted_product_spectrum(t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Matrix, b: &Matrix, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    #[test]
    fn function_examples() {
        let sqrt = FunctionSpec::power(0.5).unwrap();
        let r = apply_function(&SymMatrix::from_diag(&[4.0, 9.0]), &sqrt).unwrap();
        assert!(close(&r, &Matrix::from_diag(&[2.0, 3.0]), 1e-14));

        let exp = FunctionSpec::exp(1.0).unwrap();
        let r = apply_function(&SymMatrix::zeros(3), &exp).unwrap();
        assert!(close(&r, &Matrix::identity(3), 1e-15));

        // direct matrix square: [[2,1],[1,2]]^2 = [[5,4],[4,5]]
        let s = SymMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let square = &*s * &*s;
        let r = apply_function(&s, &FunctionSpec::power(2.0).unwrap()).unwrap();
        assert!(close(&r, &square, 1e-13));
        assert!(close(&square, &Matrix::from_rows(&[[5.0, 4.0], [4.0, 5.0]]).unwrap(), 0.0));
    }

    #[test]
    fn domain_violation_names_eigenvalue() {
        let inv = FunctionSpec::inverse();
        let err = apply_function(&SymMatrix::from_diag(&[-1.0, 2.0]), &inv).unwrap_err();
        assert!(matches!(err, Error::DomainViolation { value, .. } if value == -1.0));
    }

    #[test]
    fn power_examples_and_errors() {
        let r = pd_power(&SymMatrix::from_diag(&[4.0, 9.0]), 0.5).unwrap();
        assert!(close(&r, &Matrix::from_diag(&[2.0, 3.0]), 1e-15));
        let s = SymMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        assert!(close(&pd_power(&s, 0.0).unwrap(), &Matrix::identity(2), 1e-15));
        assert!(close(
            &pd_power(&s, 2.0).unwrap(),
            &Matrix::from_rows(&[[5.0, 4.0], [4.0, 5.0]]).unwrap(),
            1e-13
        ));
        let psd = SymMatrix::from_diag(&[0.0, 4.0]);
        assert!(close(&pd_power(&psd, 0.5).unwrap(), &Matrix::from_diag(&[0.0, 2.0]), 0.0));
        assert!(matches!(
            pd_power(&psd, -0.5),
            Err(Error::NegativePowerOfSingular { .. })
        ));
        assert!(matches!(
            pd_power(&SymMatrix::from_diag(&[-1.0, 1.0]), 0.5),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn determinant_examples() {
        assert!((det_pd(&SymMatrix::from_diag(&[2.0, 3.0])).unwrap() - 6.0).abs() < 1e-15);
        assert!((det_pd(&SymMatrix::identity(5)).unwrap() - 1.0).abs() < 1e-15);
        // cofactor: 2*2 - 1*1
        let s = SymMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        assert!((det_pd(&s).unwrap() - 3.0).abs() < 1e-14);
        assert!(matches!(
            det_pd(&SymMatrix::from_diag(&[1.0, 0.0])),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn geometric_mean_examples() {
        let r = weighted_geometric_mean(&SymMatrix::identity(2), &SymMatrix::identity(2).scale(9.0), 0.5)
            .unwrap();
        assert!(close(&r, &Matrix::identity(2).scale(3.0), 1e-14));
        // per-eigenvalue a^{1-ν} b^ν
        let r = weighted_geometric_mean(
            &SymMatrix::from_diag(&[1.0, 4.0]),
            &SymMatrix::from_diag(&[4.0, 1.0]),
            0.5,
        )
        .unwrap();
        assert!(close(&r, &Matrix::from_diag(&[2.0, 2.0]), 1e-14));
        let a = SymMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let b = SymMatrix::from_diag(&[1.0, 3.0]);
        assert_eq!(weighted_geometric_mean(&a, &b, 0.0).unwrap(), a);
        assert_eq!(weighted_geometric_mean(&a, &b, 1.0).unwrap(), b);
        assert!(matches!(
            weighted_geometric_mean(&SymMatrix::from_diag(&[1.0, -1.0]), &b, 0.5),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn commuting_product_examples() {
        let p = CommutingPair::diagonal(vec![1.0, 4.0], vec![4.0, 1.0]).unwrap();
        let half = commuting_weighted_product(&p, 0.5).unwrap();
        assert!(close(&half, &Matrix::from_diag(&[2.0, 2.0]), 1e-15));
        assert_eq!(commuting_weighted_product(&p, 1.0).unwrap(), p.a());
        assert_eq!(commuting_weighted_product(&p, 0.0).unwrap(), p.b());
        let same = p.collapsed();
        for t in [0.0, 0.3, 0.7, 1.0] {
            assert!(close(&commuting_weighted_product(&same, t).unwrap(), &same.a(), 1e-14));
        }
        assert!(CommutingPair::diagonal(vec![1.0, 0.0], vec![1.0, 1.0]).is_err());
    }
}
