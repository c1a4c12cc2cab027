//! The operator pairs the commutative chains run on. A commuting pair works in
//! its shared eigenbasis, where every operator is a vector of eigenvalues.
//! A general (non-commuting) pair reads `AᵗB^{1-t}` as the weighted
//! geometric mean `B #_t A` and `√(PQ)` as `P # Q`.

use crate::error::{Error, Result};
use crate::linalg::{
    eigh, loewner_compare, require_pd, spectral_power, weighted_geometric_mean, weighted_scalar_product,
    CommutingPair, LoewnerVerdict, Ordering, SpectralDecomp, SymMatrix, DEFAULT_EIGH_TOL,
};
use crate::norms::{norm, norm_from_singular_values, NormSpec};
use crate::quadrature::{QuadScheme, DOUBLING_TOL};

pub trait PairAlgebra: Sized {
    type Op: Clone;

    fn dim(&self) -> usize;
    /// Smallest and largest eigenvalue over both `A` and `B`.
    fn spectral_range(&self) -> (f64, f64);
    fn a(&self) -> Self::Op;
    fn b(&self) -> Self::Op;
    /// `AᵗB^{1-t}`.
    fn power_product(&self, t: f64) -> Result<Self::Op>;
    /// `αA + (1-α)B`.
    fn convex(&self, alpha: f64) -> Result<Self::Op>;
    /// Spectral mapping `g(X)`.
    fn map(&self, x: &Self::Op, g: &dyn Fn(f64) -> Result<f64>) -> Result<Self::Op>;
    /// `√(PQ)`.
    fn geometric(&self, p: &Self::Op, q: &Self::Op) -> Result<Self::Op>;
    fn lincomb(&self, p: &Self::Op, alpha: f64, q: &Self::Op, beta: f64) -> Result<Self::Op>;
    fn trace(&self, x: &Self::Op) -> f64;
    /// `Tr(XY)`.
    fn trace_product(&self, x: &Self::Op, y: &Self::Op) -> f64;
    fn norm(&self, x: &Self::Op, spec: NormSpec) -> Result<f64>;
    fn frobenius(&self, x: &Self::Op) -> f64;
    fn materialize(&self, x: &Self::Op) -> SymMatrix;
    /// Loewner comparison of `x` against `y`.
    fn compare(&self, x: &Self::Op, y: &Self::Op, tol: f64) -> Result<LoewnerVerdict>;
    /// The pair `(A², B²)`.
    fn squared(&self) -> Result<Self>;
}

/// `∫_lo^hi g(t) dt` of an operator-valued integrand plus the doubling
/// verdict measured in Frobenius norm.
pub(crate) fn integrate_op<P, G>(p: &P, g: G, lo: f64, hi: f64, scheme: QuadScheme) -> Result<(P::Op, bool)>
where
    P: PairAlgebra,
    G: Fn(f64) -> Result<P::Op>,
{
    let run = |s: QuadScheme| -> Result<P::Op> {
        let mut acc: Option<P::Op> = None;
        for (t, w) in s.nodes(lo, hi)? {
            let sample = g(t)?;
            if !p.frobenius(&sample).is_finite() {
                return Err(Error::NonFiniteSample { node: t });
            }
            acc = Some(match acc {
                None => p.lincomb(&sample, w, &sample, 0.0)?,
                Some(prev) => p.lincomb(&prev, 1.0, &sample, w)?,
            });
        }
        acc.ok_or(Error::NOutOfRange(0))
    };
    let value = run(scheme)?;
    let reliable = match scheme.refined() {
        Some(fine) => {
            let refined = run(fine)?;
            let diff = p.frobenius(&p.lincomb(&value, 1.0, &refined, -1.0)?);
            diff <= DOUBLING_TOL * (1.0 + p.frobenius(&value))
        }
        None => true,
    };
    Ok((value, reliable))
}

fn verdict_from_gaps(min_gap: f64, max_gap: f64, scale: f64, tol: f64) -> LoewnerVerdict {
    let slack = tol * scale;
    let ordering = match (min_gap >= -slack, max_gap <= slack) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::LessEqual,
        (false, true) => Ordering::GreaterEqual,
        (false, false) => Ordering::Incomparable,
    };
    LoewnerVerdict {
        ordering,
        min_gap,
        scale,
    }
}

impl PairAlgebra for CommutingPair {
    type Op = Vec<f64>;

    fn dim(&self) -> usize {
        CommutingPair::dim(self)
    }

    fn spectral_range(&self) -> (f64, f64) {
        self.a_spectrum()
            .iter()
            .chain(self.b_spectrum())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }

    fn a(&self) -> Vec<f64> {
        self.a_spectrum().to_vec()
    }

    fn b(&self) -> Vec<f64> {
        self.b_spectrum().to_vec()
    }

    fn power_product(&self, t: f64) -> Result<Vec<f64>> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::DomainViolation { value: t, lo: 0.0, hi: 1.0 });
        }
        Ok(self.weighted_product_spectrum(t))
    }

    fn convex(&self, alpha: f64) -> Result<Vec<f64>> {
        Ok(self
            .a_spectrum()
            .iter()
            .zip(self.b_spectrum())
            .map(|(a, b)| alpha * a + (1.0 - alpha) * b)
            .collect())
    }

    fn map(&self, x: &Vec<f64>, g: &dyn Fn(f64) -> Result<f64>) -> Result<Vec<f64>> {
        x.iter().map(|&v| g(v)).collect()
    }

    fn geometric(&self, p: &Vec<f64>, q: &Vec<f64>) -> Result<Vec<f64>> {
        p.iter()
            .zip(q)
            .map(|(&x, &y)| {
                if x < 0.0 || y < 0.0 {
                    Err(Error::NotPositiveSemidefinite {
                        min_eigenvalue: x.min(y),
                    })
                } else {
                    Ok(weighted_scalar_product(x, y, 0.5))
                }
            })
            .collect()
    }

    fn lincomb(&self, p: &Vec<f64>, alpha: f64, q: &Vec<f64>, beta: f64) -> Result<Vec<f64>> {
        if p.len() != q.len() {
            return Err(Error::dims(p.len(), q.len()));
        }
        Ok(p.iter().zip(q).map(|(x, y)| alpha * x + beta * y).collect())
    }

    fn trace(&self, x: &Vec<f64>) -> f64 {
        x.iter().sum()
    }

    fn trace_product(&self, x: &Vec<f64>, y: &Vec<f64>) -> f64 {
        x.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    fn norm(&self, x: &Vec<f64>, spec: NormSpec) -> Result<f64> {
        let mut sigma: Vec<f64> = x.iter().map(|v| v.abs()).collect();
        sigma.sort_by(|a, b| b.total_cmp(a));
        norm_from_singular_values(&sigma, spec)
    }

    fn frobenius(&self, x: &Vec<f64>) -> f64 {
        x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn materialize(&self, x: &Vec<f64>) -> SymMatrix {
        SymMatrix::from_spectrum(self.basis(), x)
    }

    /// Exact in the shared basis: the gaps are the entrywise differences.
    fn compare(&self, x: &Vec<f64>, y: &Vec<f64>, tol: f64) -> Result<LoewnerVerdict> {
        if x.len() != y.len() {
            return Err(Error::dims(x.len(), y.len()));
        }
        let scale = x.iter().chain(y).fold(1.0_f64, |m, v| m.max(v.abs()));
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (a, b) in x.iter().zip(y) {
            lo = lo.min(b - a);
            hi = hi.max(b - a);
        }
        Ok(verdict_from_gaps(lo, hi, scale, tol))
    }

    fn squared(&self) -> Result<Self> {
        let sq = |v: &[f64]| v.iter().map(|x| x * x).collect::<Vec<_>>();
        CommutingPair::new(self.basis().clone(), sq(self.a_spectrum()), sq(self.b_spectrum()))
    }
}

/// Two positive definite matrices with no commutation assumption.
/// `B^{±1/2}` and the spectrum of `B^{-1/2} A B^{-1/2}` are cached so that
/// `B #_t A = B^{1/2} (B^{-1/2} A B^{-1/2})^t B^{1/2}` costs one spectral
/// power per `t`.
#[derive(Debug, Clone)]
pub struct GeneralPair {
    a: SymMatrix,
    b: SymMatrix,
    b_half: SymMatrix,
    inner: SpectralDecomp,
    range: (f64, f64),
}

impl GeneralPair {
    pub fn new(a: SymMatrix, b: SymMatrix) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::dims(a.dim(), b.dim()));
        }
        let da = eigh(&a, DEFAULT_EIGH_TOL)?;
        require_pd(&da)?;
        let db = eigh(&b, DEFAULT_EIGH_TOL)?;
        require_pd(&db)?;
        let range = (
            da.min_eigenvalue().min(db.min_eigenvalue()),
            da.max_eigenvalue().max(db.max_eigenvalue()),
        );
        let b_half = spectral_power(&db, 0.5)?;
        let b_inv_half = spectral_power(&db, -0.5)?;
        let inner = eigh(&a.congruence(&b_inv_half)?, DEFAULT_EIGH_TOL)?;
        Ok(GeneralPair {
            a,
            b,
            b_half,
            inner,
            range,
        })
    }

    pub fn a_matrix(&self) -> &SymMatrix {
        &self.a
    }

    pub fn b_matrix(&self) -> &SymMatrix {
        &self.b
    }
}

impl PairAlgebra for GeneralPair {
    type Op = SymMatrix;

    fn dim(&self) -> usize {
        self.a.dim()
    }

    fn spectral_range(&self) -> (f64, f64) {
        self.range
    }

    fn a(&self) -> SymMatrix {
        self.a.clone()
    }

    fn b(&self) -> SymMatrix {
        self.b.clone()
    }

    fn power_product(&self, t: f64) -> Result<SymMatrix> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::DomainViolation { value: t, lo: 0.0, hi: 1.0 });
        }
        if t == 0.0 {
            return Ok(self.b.clone());
        }
        if t == 1.0 {
            return Ok(self.a.clone());
        }
        spectral_power(&self.inner, t)?.congruence(&self.b_half)
    }

    fn convex(&self, alpha: f64) -> Result<SymMatrix> {
        self.a.lincomb(alpha, &self.b, 1.0 - alpha)
    }

    fn map(&self, x: &SymMatrix, g: &dyn Fn(f64) -> Result<f64>) -> Result<SymMatrix> {
        eigh(x, DEFAULT_EIGH_TOL)?.map(g)
    }

    fn geometric(&self, p: &SymMatrix, q: &SymMatrix) -> Result<SymMatrix> {
        weighted_geometric_mean(p, q, 0.5)
    }

    fn lincomb(&self, p: &SymMatrix, alpha: f64, q: &SymMatrix, beta: f64) -> Result<SymMatrix> {
        p.lincomb(alpha, q, beta)
    }

    fn trace(&self, x: &SymMatrix) -> f64 {
        x.trace()
    }

    fn trace_product(&self, x: &SymMatrix, y: &SymMatrix) -> f64 {
        // Tr(XY) = Σ x_ij y_ji, and y is symmetric
        x.as_slice().iter().zip(y.as_slice()).map(|(a, b)| a * b).sum()
    }

    fn norm(&self, x: &SymMatrix, spec: NormSpec) -> Result<f64> {
        norm(x, spec)
    }

    fn frobenius(&self, x: &SymMatrix) -> f64 {
        x.frobenius_norm()
    }

    fn materialize(&self, x: &SymMatrix) -> SymMatrix {
        x.clone()
    }

    fn compare(&self, x: &SymMatrix, y: &SymMatrix, tol: f64) -> Result<LoewnerVerdict> {
        loewner_compare(x, y, tol)
    }

    fn squared(&self) -> Result<Self> {
        let sq = |m: &SymMatrix| -> Result<SymMatrix> { Ok(SymMatrix::symmetrize(m.matmul(m)?)) };
        GeneralPair::new(sq(&self.a)?, sq(&self.b)?)
    }
}
