//! Unitarily invariant norm chains along `t ↦ |||AᵗXB^{1-t}|||` and
//! `s ↦ |||AˢXBˢ|||`.

use serde::{Deserialize, Serialize};

use super::operator::phi_operator_witness;
use super::{hh_terms, witness_report, ChainOptions, ChainReport, InequalityReport, WitnessReport};
use crate::error::{Error, Result};
use crate::functions::FunctionSpec;
use crate::linalg::{eigh, CommutingPair, Matrix, SymMatrix, DEFAULT_EIGH_TOL};
use crate::norms::{norm, NormSpec};
use crate::sampler::SimilarityPair;

/// `(s, r) ↦ |||AˢXBʳ|||` for positive semidefinite `A`, `B`.
///
/// With `A = Qa·diag(α)·Qaᵀ` and `B = Qb·diag(β)·Qbᵀ`, unitary invariance
/// gives `|||AˢXBʳ||| = |||diag(αˢ)·Y·diag(βʳ)|||` where `Y = QaᵀXQb`, so
/// each evaluation is a diagonal scaling plus one SVD.
#[derive(Debug, Clone)]
pub struct SandwichCurve {
    la: Vec<f64>,
    lb: Vec<f64>,
    y: Matrix,
    positive_definite: bool,
}

fn psd_spectrum(m: &SymMatrix) -> Result<(Matrix, Vec<f64>, bool)> {
    let d = eigh(m, DEFAULT_EIGH_TOL)?;
    let scale = d.lambda.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let min = d.min_eigenvalue();
    if min < -1e-12 * scale {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min });
    }
    let pd = min > 0.0;
    let lambda = d.lambda.iter().map(|&v| v.max(0.0)).collect();
    Ok((d.q, lambda, pd))
}

impl SandwichCurve {
    pub fn new(a: &SymMatrix, b: &SymMatrix, x: &Matrix) -> Result<Self> {
        if x.rows() != a.dim() || x.cols() != b.dim() {
            return Err(Error::dims(
                format!("A {0}x{0}, B {1}x{1}", a.dim(), b.dim()),
                format!("X {}x{}", x.rows(), x.cols()),
            ));
        }
        if !x.is_finite() {
            return Err(Error::NonFiniteInput);
        }
        let (qa, la, pa) = psd_spectrum(a)?;
        let (qb, lb, pb) = psd_spectrum(b)?;
        let y = &(&qa.transpose() * x) * &qb;
        Ok(Self {
            la,
            lb,
            y,
            positive_definite: pa && pb,
        })
    }

    pub fn is_positive_definite(&self) -> bool {
        self.positive_definite
    }

    pub fn value(&self, s: f64, r: f64, spec: NormSpec) -> Result<f64> {
        let left: Vec<f64> = self.la.iter().map(|&l| l.powf(s)).collect();
        let right: Vec<f64> = self.lb.iter().map(|&l| l.powf(r)).collect();
        norm(&self.y.scale_rows_cols(&left, &right), spec)
    }

    pub fn log_value(&self, s: f64, r: f64, spec: NormSpec) -> Result<f64> {
        Ok(self.value(s, r, spec)?.ln())
    }
}

fn check_nu(nu: f64) -> Result<()> {
    if (0.0..=1.0).contains(&nu) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("nu = {nu} is outside [0, 1]")))
    }
}

/// `|||AᵛXB^{1-ν}||| ≤ |||AX|||ᵛ |||XB|||^{1-ν}`.
pub fn kittaneh_check(
    a: &SymMatrix,
    b: &SymMatrix,
    x: &Matrix,
    nu: f64,
    spec: NormSpec,
    opts: &ChainOptions,
) -> Result<InequalityReport> {
    check_nu(nu)?;
    let curve = SandwichCurve::new(a, b, x)?;
    let lhs = curve.value(nu, 1.0 - nu, spec)?;
    let rhs = (nu * curve.log_value(1.0, 0.0, spec)? + (1.0 - nu) * curve.log_value(0.0, 1.0, spec)?).exp();
    Ok(InequalityReport::new(
        "kittaneh",
        vec![("|||A^v X B^(1-v)||| <= |||AX|||^v |||XB|||^(1-v)".into(), lhs, rhs)],
        opts,
    ))
}

/// The same inequality with `A` and `B` replaced by diagonalizable
/// non-normal matrices `SΛS⁻¹` with positive spectrum. Powers are taken
/// through the similarity.
pub fn kittaneh_nonnormal_check(
    a: &SimilarityPair,
    b: &SimilarityPair,
    x: &Matrix,
    nu: f64,
    spec: NormSpec,
    opts: &ChainOptions,
) -> Result<InequalityReport> {
    check_nu(nu)?;
    let (n, m) = (a.lambda.len(), b.lambda.len());
    if x.rows() != n || x.cols() != m {
        return Err(Error::dims(format!("{n}x{m}"), format!("X {}x{}", x.rows(), x.cols())));
    }
    let lhs = norm(&(&(&a.power(nu) * x) * &b.power(1.0 - nu)), spec)?;
    let ax = norm(&(&a.materialize() * x), spec)?;
    let xb = norm(&(x * &b.materialize()), spec)?;
    let rhs = (nu * ax.ln() + (1.0 - nu) * xb.ln()).exp();
    Ok(InequalityReport::new(
        "kittaneh",
        vec![("|||A^v X B^(1-v)||| <= |||AX|||^v |||XB|||^(1-v)".into(), lhs, rhs)],
        opts,
    ))
}

/// Curves whose log-convexity on `[0, 1]` the witness checks.
#[derive(Debug, Clone, Copy)]
pub enum Curve<'a> {
    /// `t ↦ ‖f(AᵗB^{1-t})‖`.
    PhiOperator { f: &'a FunctionSpec, pair: &'a CommutingPair },
    /// `t ↦ |||AᵗXB^{1-t}|||`.
    PhiSandwich(&'a SandwichCurve),
    /// `s ↦ |||AˢXBˢ|||`.
    PhiDiagonal(&'a SandwichCurve),
}

/// Grid test of AG-convexity (log-convexity) of `curve` on `[0, 1]`.
pub fn ag_convexity_witness(curve: Curve<'_>, spec: NormSpec, grid_n: usize, tol: f64) -> Result<WitnessReport> {
    match curve {
        Curve::PhiOperator { f, pair } => phi_operator_witness(f, pair, spec, grid_n, tol),
        Curve::PhiSandwich(c) => {
            let mut r = witness_report("phi_sandwich", |t| c.log_value(t, 1.0 - t, spec), grid_n, tol)?;
            r.hypothesis_supported = c.is_positive_definite();
            Ok(r)
        }
        Curve::PhiDiagonal(c) => {
            let mut r = witness_report("phi_diagonal", |s| c.log_value(s, s, spec), grid_n, tol)?;
            r.hypothesis_supported = c.is_positive_definite();
            Ok(r)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum UinVariant {
    /// Interval `[ν, 1-ν]`, `ν ≠ 1/2`.
    Symmetric(f64),
    /// Interval `[0, ν]`, `ν ∈ (0, 1/2]`.
    EndLeft(f64),
    /// Interval `[ν, 1]`, `ν ∈ [1/2, 1)`.
    EndRight(f64),
    Full,
    Diagonal,
}

impl UinVariant {
    pub fn theorem_id(&self) -> &'static str {
        match self {
            UinVariant::Symmetric(_) => "uin_symmetric",
            UinVariant::EndLeft(_) => "uin_end_left",
            UinVariant::EndRight(_) => "uin_end_right",
            UinVariant::Full => "uin_full",
            UinVariant::Diagonal => "uin_diagonal",
        }
    }

    fn interval(&self) -> Result<(f64, f64)> {
        let bad = |nu: f64, range: &str| Error::InvalidArgument(format!("nu = {nu} is outside {range}"));
        match *self {
            UinVariant::Symmetric(nu) => {
                check_nu(nu)?;
                if nu == 0.5 {
                    return Err(Error::DegenerateInterval("uin_symmetric at nu = 1/2".into()));
                }
                Ok((nu, 1.0 - nu))
            }
            UinVariant::EndLeft(nu) => {
                if nu == 0.0 {
                    return Err(Error::DegenerateInterval("uin_end_left at nu = 0".into()));
                }
                if !(nu > 0.0 && nu <= 0.5) {
                    return Err(bad(nu, "(0, 1/2]"));
                }
                Ok((0.0, nu))
            }
            UinVariant::EndRight(nu) => {
                if nu == 1.0 {
                    return Err(Error::DegenerateInterval("uin_end_right at nu = 1".into()));
                }
                if !(0.5..1.0).contains(&nu) {
                    return Err(bad(nu, "[1/2, 1)"));
                }
                Ok((nu, 1.0))
            }
            UinVariant::Full | UinVariant::Diagonal => Ok((0.0, 1.0)),
        }
    }

    fn term_names(&self) -> [&'static str; 5] {
        match self {
            UinVariant::Symmetric(_) => [
                "|||A^(1/2) X B^(1/2)|||",
                "sqrt(|||A^((1+2v)/4) X B^((3-2v)/4)||| |||A^((3-2v)/4) X B^((1+2v)/4)|||)",
                "exp(mean over [v,1-v] of log |||A^u X B^(1-u)|||)",
                "sqrt(|||A^(1/2) X B^(1/2)|||) |||A^v X B^(1-v)|||^(1/4) |||A^(1-v) X B^v|||^(1/4)",
                "sqrt(|||A^v X B^(1-v)||| |||A^(1-v) X B^v|||)",
            ],
            UinVariant::EndLeft(_) => [
                "|||A^(v/2) X B^(1-v/2)|||",
                "sqrt(|||A^(v/4) X B^(1-v/4)||| |||A^(3v/4) X B^(1-3v/4)|||)",
                "exp(1/v int_0^v log |||A^u X B^(1-u)||| du)",
                "sqrt(|||A^(v/2) X B^(1-v/2)|||) |||XB|||^(1/4) |||A^v X B^(1-v)|||^(1/4)",
                "sqrt(|||XB||| |||A^v X B^(1-v)|||)",
            ],
            UinVariant::EndRight(_) => [
                "|||A^((v+1)/2) X B^((1-v)/2)|||",
                "sqrt(|||A^((3v+1)/4) X B^((3-3v)/4)||| |||A^((v+3)/4) X B^((1-v)/4)|||)",
                "exp(1/(1-v) int_v^1 log |||A^u X B^(1-u)||| du)",
                "sqrt(|||A^((v+1)/2) X B^((1-v)/2)|||) |||A^v X B^(1-v)|||^(1/4) |||AX|||^(1/4)",
                "sqrt(|||A^v X B^(1-v)||| |||AX|||)",
            ],
            UinVariant::Full => [
                "|||A^(1/2) X B^(1/2)|||",
                "sqrt(|||A^(1/4) X B^(3/4)||| |||A^(3/4) X B^(1/4)|||)",
                "exp(int_0^1 log |||A^u X B^(1-u)||| du)",
                "sqrt(|||A^(1/2) X B^(1/2)|||) |||AX|||^(1/4) |||XB|||^(1/4)",
                "sqrt(|||AX||| |||XB|||)",
            ],
            UinVariant::Diagonal => [
                "|||A^(1/2) X B^(1/2)|||",
                "sqrt(|||A^(1/4) X B^(1/4)||| |||A^(3/4) X B^(3/4)|||)",
                "exp(int_0^1 log |||A^u X B^u||| du)",
                "sqrt(|||A^(1/2) X B^(1/2)|||) |||X|||^(1/4) |||AXB|||^(1/4)",
                "sqrt(|||X||| |||AXB|||)",
            ],
        }
    }
}

/// The five-term chain of `variant` for positive definite `A`, `B`.
pub fn uin_chain(
    variant: UinVariant,
    a: &SymMatrix,
    b: &SymMatrix,
    x: &Matrix,
    spec: NormSpec,
    opts: &ChainOptions,
) -> Result<ChainReport> {
    let (lo, hi) = variant.interval()?;
    uin_chain_on(variant, &SandwichCurve::new(a, b, x)?, lo, hi, spec, opts)
}

fn uin_chain_on(
    variant: UinVariant,
    curve: &SandwichCurve,
    lo: f64,
    hi: f64,
    spec: NormSpec,
    opts: &ChainOptions,
) -> Result<ChainReport> {
    let (terms, reliable) = match variant {
        UinVariant::Diagonal => hh_terms(|s| curve.log_value(s, s, spec), lo, hi, opts.scheme)?,
        _ => hh_terms(|t| curve.log_value(t, 1.0 - t, spec), lo, hi, opts.scheme)?,
    };
    let mut report = ChainReport::new(
        variant.theorem_id(),
        &variant.term_names(),
        terms.to_vec(),
        reliable,
        vec![2],
        opts,
    );
    report.hypothesis_supported = curve.is_positive_definite();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadScheme;

    fn opts() -> ChainOptions {
        ChainOptions::default()
    }

    fn x2() -> Matrix {
        Matrix::from_rows(&[[1.0, 2.0], [-0.5, 3.0]]).unwrap()
    }

    #[test]
    fn full_chain_with_scalar_pair_is_constant() {
        let a = SymMatrix::from_diag(&[4.0, 4.0]);
        let b = SymMatrix::from_diag(&[9.0, 9.0]);
        let x = x2();
        for spec in [NormSpec::OperatorNorm, NormSpec::TraceNorm, NormSpec::schatten(3.0).unwrap()] {
            let target = 6.0 * norm(&x, spec).unwrap();
            let r = uin_chain(UinVariant::Full, &a, &b, &x, spec, &opts()).unwrap();
            for v in &r.term_values {
                assert!((v - target).abs() < 1e-10 * target, "{v} vs {target}");
            }
        }
    }

    #[test]
    fn diagonal_with_identities_is_norm_of_x() {
        let id = SymMatrix::identity(2);
        let x = x2();
        let target = norm(&x, NormSpec::OperatorNorm).unwrap();
        let r = uin_chain(UinVariant::Diagonal, &id, &id, &x, NormSpec::OperatorNorm, &opts()).unwrap();
        assert!(r.term_values.iter().all(|v| (v - target).abs() < 1e-12));
    }

    #[test]
    fn full_endpoint_matches_kittaneh_bound() {
        let a = SymMatrix::from_rows(&[[2.0, 0.3], [0.3, 1.0]]).unwrap();
        let b = SymMatrix::from_rows(&[[0.5, -0.2], [-0.2, 3.0]]).unwrap();
        let x = x2();
        let spec = NormSpec::schatten(2.0).unwrap();
        let full = uin_chain(UinVariant::Full, &a, &b, &x, spec, &opts()).unwrap();
        let k = kittaneh_check(&a, &b, &x, 0.5, spec, &opts()).unwrap();
        assert!((full.term_values[4] - k.entries[0].rhs).abs() <= 1e-12 * k.entries[0].rhs);
        assert!(full.pass && k.pass);
        let diag = uin_chain(UinVariant::Diagonal, &a, &b, &x, spec, &opts()).unwrap();
        let axb = &(&*a * &x) * &*b;
        let expect = (norm(&x, spec).unwrap() * norm(&axb, spec).unwrap()).sqrt();
        assert!((diag.term_values[4] - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn symmetric_branches_agree() {
        let a = SymMatrix::from_diag(&[1.0, 4.0]);
        let b = SymMatrix::from_diag(&[4.0, 1.0]);
        let x = Matrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        let lo = uin_chain(UinVariant::Symmetric(0.2), &a, &b, &x, NormSpec::TraceNorm, &opts()).unwrap();
        let hi = uin_chain(UinVariant::Symmetric(0.8), &a, &b, &x, NormSpec::TraceNorm, &opts()).unwrap();
        for (p, q) in lo.term_values.iter().zip(&hi.term_values) {
            assert!((p - q).abs() < 1e-10 * p.abs());
        }
        assert!(lo.pass && hi.pass);
    }

    #[test]
    fn variant_ranges() {
        let id = SymMatrix::identity(1);
        let x = Matrix::identity(1);
        let run = |v| uin_chain(v, &id, &id, &x, NormSpec::OperatorNorm, &opts());
        assert!(matches!(run(UinVariant::Symmetric(0.5)), Err(Error::DegenerateInterval(_))));
        assert!(matches!(run(UinVariant::EndLeft(0.0)), Err(Error::DegenerateInterval(_))));
        assert!(matches!(run(UinVariant::EndRight(1.0)), Err(Error::DegenerateInterval(_))));
        assert!(run(UinVariant::EndLeft(0.7)).is_err());
        assert!(run(UinVariant::EndLeft(0.5)).is_ok());
        assert!(run(UinVariant::EndRight(0.5)).is_ok());
    }

    #[test]
    fn kittaneh_edges() {
        let a = SymMatrix::from_rows(&[[2.0, 0.3], [0.3, 1.0]]).unwrap();
        let x = x2();
        let id = SymMatrix::identity(2);
        let r = kittaneh_check(&id, &id, &x, 0.3, NormSpec::TraceNorm, &opts()).unwrap();
        assert!(r.entries[0].margin.abs() < 1e-12);
        for nu in [0.0, 1.0] {
            let r = kittaneh_check(&a, &id, &x, nu, NormSpec::OperatorNorm, &opts()).unwrap();
            assert!(r.entries[0].margin.abs() < 1e-12 * r.entries[0].rhs);
        }
        assert!(matches!(
            kittaneh_check(&a, &SymMatrix::identity(3), &x, 0.5, NormSpec::OperatorNorm, &opts()),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn witnesses() {
        let id = SymMatrix::identity(2);
        let c = SandwichCurve::new(&id, &id, &x2()).unwrap();
        let w = ag_convexity_witness(Curve::PhiSandwich(&c), NormSpec::OperatorNorm, 33, 1e-10).unwrap();
        assert!(w.pass);
        let a = SymMatrix::from_diag(&[2.0, 0.5]);
        let b = SymMatrix::from_diag(&[3.0, 1.5]);
        let c = SandwichCurve::new(&a, &b, &Matrix::identity(2)).unwrap();
        let w = ag_convexity_witness(Curve::PhiDiagonal(&c), NormSpec::OperatorNorm, 33, 1e-10).unwrap();
        assert!(w.pass);
        assert!((w.samples[4] - 6.0).abs() < 1e-12);
        let f = FunctionSpec::exp(1.0).unwrap();
        let p = CommutingPair::diagonal(vec![1.0, 3.0], vec![3.0, 1.0]).unwrap();
        let w = ag_convexity_witness(Curve::PhiOperator { f: &f, pair: &p }, NormSpec::OperatorNorm, 33, 1e-10).unwrap();
        assert!(w.pass && w.hypothesis_supported);
    }

    #[test]
    fn midpoint_scheme_runs() {
        let a = SymMatrix::from_diag(&[1.0, 4.0]);
        let b = SymMatrix::from_diag(&[4.0, 1.0]);
        let x = Matrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        let gl = uin_chain(UinVariant::Full, &a, &b, &x, NormSpec::TraceNorm, &opts()).unwrap();
        let riemann = uin_chain(
            UinVariant::Full,
            &a,
            &b,
            &x,
            NormSpec::TraceNorm,
            &opts().with_scheme(QuadScheme::Midpoint(100_000)),
        )
        .unwrap();
        assert!((gl.term_values[2] - riemann.term_values[2]).abs() < 1e-8 * gl.term_values[2]);
    }
}
