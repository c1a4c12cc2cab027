//! The scalar function library: positive functions with declared domains,
//! grid tests for AG-convexity (log-convexity) and GG-convexity
//! (multiplicative convexity), and the classical mean chain.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default grid resolution for convexity tests.
pub const DEFAULT_GRID_N: usize = 33;
/// Default log-scale tolerance for convexity tests.
pub const DEFAULT_CONVEXITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FunctionKind {
    /// `exp(c·x)`, `c > 0`.
    Exp { scale: f64 },
    /// `x^r` on `(0, ∞)`.
    Power { exponent: f64 },
    /// `Σ c_k x^k` with every `c_k ≥ 0`.
    PolyNonneg { coeffs: Vec<f64> },
    /// `1/x` on `(0, ∞)`.
    Inverse,
    /// `x` on `(0, ∞)`.
    Identity,
}

/// A library function together with the open interval on which it is
/// finite and strictly positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    kind: FunctionKind,
    lo: f64,
    hi: f64,
}

impl FunctionSpec {
    pub fn exp(scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidArgument(format!("exp scale must be positive, got {scale}")));
        }
        Ok(Self {
            kind: FunctionKind::Exp { scale },
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        })
    }

    pub fn power(exponent: f64) -> Result<Self> {
        if !exponent.is_finite() {
            return Err(Error::InvalidArgument(format!("power exponent must be finite, got {exponent}")));
        }
        Ok(Self {
            kind: FunctionKind::Power { exponent },
            lo: 0.0,
            hi: f64::INFINITY,
        })
    }

    pub fn poly(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(Error::InvalidArgument(
                "polynomial coefficients must be finite and nonnegative".into(),
            ));
        }
        if coeffs.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidArgument("polynomial is identically zero".into()));
        }
        let lo = poly_positive_lower_bound(&coeffs);
        Ok(Self {
            kind: FunctionKind::PolyNonneg { coeffs },
            lo,
            hi: f64::INFINITY,
        })
    }

    pub fn inverse() -> Self {
        Self {
            kind: FunctionKind::Inverse,
            lo: 0.0,
            hi: f64::INFINITY,
        }
    }

    pub fn identity() -> Self {
        Self {
            kind: FunctionKind::Identity,
            lo: 0.0,
            hi: f64::INFINITY,
        }
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    /// Open domain `(lo, hi)`.
    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    fn check(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::DomainViolation {
                value: x,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }

    fn raw(&self, x: f64) -> f64 {
        match &self.kind {
            FunctionKind::Exp { scale } => (scale * x).exp(),
            FunctionKind::Power { exponent } => x.powf(*exponent),
            FunctionKind::PolyNonneg { coeffs } => coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c),
            FunctionKind::Inverse => 1.0 / x,
            FunctionKind::Identity => x,
        }
    }

    /// Pointwise value; fails outside the declared domain.
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        let v = self.raw(x);
        if v.is_finite() && v > 0.0 {
            Ok(v)
        } else {
            Err(Error::DomainViolation {
                value: x,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }

    /// `log f(x)`, evaluated without forming `f(x)` where that is exact.
    pub fn log_eval(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        match &self.kind {
            FunctionKind::Exp { scale } => Ok(scale * x),
            FunctionKind::Power { exponent } => Ok(exponent * x.ln()),
            FunctionKind::Inverse => Ok(-x.ln()),
            FunctionKind::Identity => Ok(x.ln()),
            FunctionKind::PolyNonneg { .. } => self.eval(x).map(f64::ln),
        }
    }

    /// Interval the randomized trials draw `[a, b]` from. AG-type trials use
    /// the domain clipped to `[-2, 2]`; positive (GG-type) trials use it
    /// clipped to `[0.1, 10]`. A finite lower domain end is kept at a
    /// distance of 0.1.
    pub fn sampling_window(&self, positive: bool) -> (f64, f64) {
        let (lo, hi): (f64, f64) = if positive { (0.1, 10.0) } else { (-2.0, 2.0) };
        let lo = if self.lo.is_finite() { lo.max(self.lo + 0.1) } else { lo };
        (lo, hi.min(self.hi))
    }
}

/// Largest real root `≤ 0` of a nonnegative-coefficient polynomial, i.e. the
/// lower end of the interval on which it stays positive.
fn poly_positive_lower_bound(coeffs: &[f64]) -> f64 {
    if coeffs[0] == 0.0 {
        return 0.0;
    }
    let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let lead = coeffs.iter().rposition(|&c| c > 0.0).unwrap_or(0);
    if lead == 0 {
        return f64::NEG_INFINITY;
    }
    // Cauchy bound on root magnitudes.
    let bound = 1.0 + coeffs[..lead].iter().map(|c| c / coeffs[lead]).fold(0.0, f64::max);
    const STEPS: usize = 8192;
    let step = bound / STEPS as f64;
    let mut prev = 0.0_f64;
    for k in 1..=STEPS {
        let x = -(k as f64) * step;
        if eval(x) <= 0.0 {
            let (mut inside, mut outside) = (prev, x);
            for _ in 0..200 {
                let mid = 0.5 * (inside + outside);
                if mid == inside || mid == outside {
                    break;
                }
                if eval(mid) > 0.0 {
                    inside = mid;
                } else {
                    outside = mid;
                }
            }
            return outside;
        }
        prev = x;
    }
    f64::NEG_INFINITY
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FunctionKind::Exp { scale } => write!(f, "exp:{scale}"),
            FunctionKind::Power { exponent } => write!(f, "power:{exponent}"),
            FunctionKind::PolyNonneg { coeffs } => {
                let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                write!(f, "poly:{}", parts.join(","))
            }
            FunctionKind::Inverse => write!(f, "inverse"),
            FunctionKind::Identity => write!(f, "identity"),
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    /// Parses `exp:c`, `power:r`, `poly:c0,c1,...`, `inverse` or `identity`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s, None),
        };
        let number = |text: &str| {
            text.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad number `{text}` in function `{s}`")))
        };
        match (name.to_ascii_lowercase().as_str(), arg) {
            ("exp", Some(c)) => Self::exp(number(c)?),
            ("exp", None) => Self::exp(1.0),
            ("power", Some(r)) => Self::power(number(r)?),
            ("poly", Some(cs)) => Self::poly(cs.split(',').map(number).collect::<Result<_>>()?),
            ("inverse", None) => Ok(Self::inverse()),
            ("identity", None) => Ok(Self::identity()),
            _ => Err(Error::InvalidArgument(format!("unknown function `{s}`"))),
        }
    }
}

/// Result of a grid convexity test. Grid tests can refute convexity but only
/// support it; `holds` means "grid-supported".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexityVerdict {
    pub holds: bool,
    /// `(x, y, λ)` attaining the minimal slack.
    pub worst_triple: (f64, f64, f64),
    /// `min over triples of λ·g(x) + (1-λ)·g(y) - g(λx + (1-λ)y)` for the
    /// log-scale function `g`.
    pub slack: f64,
}

fn check_grid(a: f64, b: f64, grid_n: usize) -> Result<()> {
    if grid_n < 3 {
        return Err(Error::InvalidArgument(format!("grid_n must be at least 3, got {grid_n}")));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("need a < b, got [{a}, {b}]")));
    }
    Ok(())
}

/// Convexity grid test for a log-scale function `log_g` on `[a, b]`.
///
/// Grid points are `xᵢ = a + i·h` with `h = (b-a)/(n-1)`, weights
/// `λ = k/n`. Every convex combination `λxᵢ + (1-λ)xⱼ` lands on the finer
/// lattice `a + m·h/n` with `m = k·i + (n-k)·j`, so `log_g` is evaluated
/// once per lattice point.
pub fn log_convexity_on_grid<F>(log_g: F, a: f64, b: f64, grid_n: usize, tol: f64) -> Result<ConvexityVerdict>
where
    F: Fn(f64) -> Result<f64>,
{
    check_grid(a, b, grid_n)?;
    let n = grid_n;
    let fine = n * (n - 1);
    let lattice = |m: usize| {
        if m == fine {
            b
        } else {
            a + (b - a) * m as f64 / fine as f64
        }
    };
    let values = (0..=fine).map(|m| log_g(lattice(m))).collect::<Result<Vec<_>>>()?;

    let mut slack = f64::INFINITY;
    let mut worst = (a, a, 0.0);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let gi = values[i * n];
            let gj = values[j * n];
            for k in 1..n {
                let lambda = k as f64 / n as f64;
                let m = k * i + (n - k) * j;
                let s = lambda * gi + (1.0 - lambda) * gj - values[m];
                if s < slack {
                    slack = s;
                    worst = (lattice(i * n), lattice(j * n), lambda);
                }
            }
        }
    }
    // Endpoint weights (λ = 0, 1) and i == j triples have zero slack.
    if slack > 0.0 {
        slack = 0.0;
    }
    Ok(ConvexityVerdict {
        holds: slack >= -tol,
        worst_triple: worst,
        slack,
    })
}

/// Grid test of `f(λx + (1-λ)y) ≤ f(x)^λ f(y)^{1-λ}` on `[a, b]`.
pub fn is_ag_convex(f: &FunctionSpec, a: f64, b: f64, grid_n: usize, tol: f64) -> Result<ConvexityVerdict> {
    check_grid(a, b, grid_n)?;
    f.check(a)?;
    f.check(b)?;
    log_convexity_on_grid(|x| f.log_eval(x), a, b, grid_n, tol)
}

/// GG-convexity grid test of a log-scale function `log_f` on `[a, b] ⊂ (0, ∞)`,
/// run in log-log coordinates. The worst triple is reported in the original
/// coordinates.
pub fn gg_convexity_on_grid<F>(log_f: F, a: f64, b: f64, grid_n: usize, tol: f64) -> Result<ConvexityVerdict>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(a > 0.0) {
        return Err(Error::NonPositiveInput(a));
    }
    check_grid(a, b, grid_n)?;
    let (la, lb) = (a.ln(), b.ln());
    let clamp = |u: f64| {
        if u == la {
            a
        } else if u == lb {
            b
        } else {
            u.exp()
        }
    };
    let mut v = log_convexity_on_grid(|u| log_f(clamp(u)), la, lb, grid_n, tol)?;
    v.worst_triple = (clamp(v.worst_triple.0), clamp(v.worst_triple.1), v.worst_triple.2);
    Ok(v)
}

/// Grid test of `f(x^λ y^{1-λ}) ≤ f(x)^λ f(y)^{1-λ}` on `[a, b]`, `0 < a < b`.
pub fn is_gg_convex(f: &FunctionSpec, a: f64, b: f64, grid_n: usize, tol: f64) -> Result<ConvexityVerdict> {
    if !(a > 0.0) {
        return Err(Error::NonPositiveInput(a));
    }
    f.check(a)?;
    f.check(b)?;
    gg_convexity_on_grid(|x| f.log_eval(x), a, b, grid_n, tol)
}

/// Checks that `f` is AG-convex on `[a, b]` exactly when `f ∘ log` is
/// GG-convex on `[eᵃ, eᵇ]` (both as grid verdicts).
pub fn ag_gg_transport_check(f: &FunctionSpec, a: f64, b: f64, grid_n: usize, tol: f64) -> Result<bool> {
    let ag = is_ag_convex(f, a, b, grid_n, tol)?;
    let gg = gg_convexity_on_grid(|x| f.log_eval(x.ln()), a.exp(), b.exp(), grid_n, tol)?;
    Ok(ag.holds == gg.holds)
}

/// AG-convexity checked at `λ = 1/2` only, over all grid pairs.
pub fn midpoint_ag_verdict(f: &FunctionSpec, a: f64, b: f64, grid_n: usize, tol: f64) -> Result<ConvexityVerdict> {
    check_grid(a, b, grid_n)?;
    let h = (b - a) / (grid_n - 1) as f64;
    let xs: Vec<f64> = (0..grid_n).map(|i| if i == grid_n - 1 { b } else { a + h * i as f64 }).collect();
    let logs = xs.iter().map(|&x| f.log_eval(x)).collect::<Result<Vec<_>>>()?;
    let mut slack = 0.0_f64;
    let mut worst = (a, a, 0.5);
    for i in 0..grid_n {
        for j in (i + 1)..grid_n {
            let mid = f.log_eval(0.5 * (xs[i] + xs[j]))?;
            let s = 0.5 * (logs[i] + logs[j]) - mid;
            if s < slack {
                slack = s;
                worst = (xs[i], xs[j], 0.5);
            }
        }
    }
    Ok(ConvexityVerdict {
        holds: slack >= -tol,
        worst_triple: worst,
        slack,
    })
}

/// `min ≤ G ≤ L ≤ A ≤ max` for two positive numbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanChain {
    pub min: f64,
    pub geometric: f64,
    pub logarithmic: f64,
    pub arithmetic: f64,
    pub max: f64,
}

impl MeanChain {
    pub fn terms(&self) -> [f64; 5] {
        [self.min, self.geometric, self.logarithmic, self.arithmetic, self.max]
    }

    pub fn is_nondecreasing(&self, rtol: f64) -> bool {
        self.terms()
            .windows(2)
            .all(|w| w[1] - w[0] >= -rtol * w[1].abs().max(w[0].abs()))
    }
}

/// `(b - a) / (ln b - ln a)`, equal to `a` when `a = b`.
pub fn logarithmic_mean(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::NonPositiveInput(a));
    }
    if !(b > 0.0) {
        return Err(Error::NonPositiveInput(b));
    }
    if a == b {
        return Ok(a);
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let d = hi - lo;
    Ok(d / (d / lo).ln_1p())
}

pub fn scalar_mean_chain(a: f64, b: f64) -> Result<MeanChain> {
    let logarithmic = logarithmic_mean(a, b)?;
    let (min, max) = if a <= b { (a, b) } else { (b, a) };
    Ok(MeanChain {
        min,
        geometric: (a * b).sqrt(),
        logarithmic,
        arithmetic: 0.5 * (a + b),
        max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct brute-force oracle: enumerate triples without the lattice
    /// bookkeeping.
    fn brute_ag_holds(f: &FunctionSpec, a: f64, b: f64, n: usize, tol: f64) -> bool {
        let xs: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
        for &x in &xs {
            for &y in &xs {
                for k in 0..=n {
                    let l = k as f64 / n as f64;
                    let lhs = f.eval(l * x + (1.0 - l) * y).unwrap().ln();
                    let rhs = l * f.eval(x).unwrap().ln() + (1.0 - l) * f.eval(y).unwrap().ln();
                    if lhs > rhs + tol {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn eval_examples() {
        assert_eq!(FunctionSpec::exp(1.0).unwrap().eval(0.0).unwrap(), 1.0);
        assert_eq!(FunctionSpec::power(2.0).unwrap().eval(3.0).unwrap(), 9.0);
        assert_eq!(FunctionSpec::poly(vec![1.0, 0.0, 1.0]).unwrap().eval(2.0).unwrap(), 5.0);
        assert!(matches!(
            FunctionSpec::inverse().eval(0.0),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn poly_domains() {
        assert_eq!(FunctionSpec::poly(vec![0.0, 1.0]).unwrap().domain().0, 0.0);
        let lo = FunctionSpec::poly(vec![1.0, 1.0]).unwrap().domain().0;
        assert!((lo + 1.0).abs() < 1e-12, "{lo}");
        assert_eq!(FunctionSpec::poly(vec![1.0, 0.0, 1.0]).unwrap().domain().0, f64::NEG_INFINITY);
        assert!(FunctionSpec::poly(vec![0.0, 0.0]).is_err());
        assert!(FunctionSpec::poly(vec![1.0, -1.0]).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for text in ["exp:1", "power:0.5", "poly:1,0,2", "inverse", "identity"] {
            let f: FunctionSpec = text.parse().unwrap();
            assert_eq!(f.to_string(), text);
        }
        assert!("cosh".parse::<FunctionSpec>().is_err());
        assert!("exp:-1".parse::<FunctionSpec>().is_err());
    }

    #[test]
    fn ag_examples() {
        let tol = DEFAULT_CONVEXITY_TOL;
        let exp = FunctionSpec::exp(1.0).unwrap();
        assert!(is_ag_convex(&exp, 0.0, 1.0, DEFAULT_GRID_N, tol).unwrap().holds);

        // (2 ln x)'' = -2/x² < 0
        let sq = FunctionSpec::power(2.0).unwrap();
        let v = is_ag_convex(&sq, 1.0, 2.0, DEFAULT_GRID_N, tol).unwrap();
        assert!(!v.holds);
        assert!(!brute_ag_holds(&sq, 1.0, 2.0, DEFAULT_GRID_N, tol));

        // 1 + x is log-concave; the brute-force oracle is the ground truth.
        let p = FunctionSpec::poly(vec![1.0, 1.0]).unwrap();
        let oracle = brute_ag_holds(&p, -0.5, 0.5, DEFAULT_GRID_N, tol);
        assert!(!oracle);
        assert_eq!(is_ag_convex(&p, -0.5, 0.5, DEFAULT_GRID_N, tol).unwrap().holds, oracle);
    }

    #[test]
    fn ag_preconditions() {
        let inv = FunctionSpec::inverse();
        assert!(matches!(
            is_ag_convex(&inv, -1.0, 1.0, 9, 1e-10),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            is_ag_convex(&inv, 1.0, 2.0, 2, 1e-10),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn gg_examples() {
        let tol = DEFAULT_CONVEXITY_TOL;
        for r in [-2.0, -0.5, 0.0, 0.5, 3.0] {
            let v = is_gg_convex(&FunctionSpec::power(r).unwrap(), 0.3, 7.0, DEFAULT_GRID_N, tol).unwrap();
            assert!(v.holds);
            assert!(v.slack.abs() < 1e-13, "r = {r}: {}", v.slack);
        }
        let cubic = FunctionSpec::poly(vec![0.0, 0.0, 1.0, 1.0]).unwrap();
        assert!(is_gg_convex(&cubic, 0.1, 5.0, DEFAULT_GRID_N, tol).unwrap().holds);
        let exp = FunctionSpec::exp(1.0).unwrap();
        assert!(is_gg_convex(&exp, 0.5, 2.0, DEFAULT_GRID_N, tol).unwrap().holds);
        assert!(matches!(
            is_gg_convex(&exp, -1.0, 2.0, DEFAULT_GRID_N, tol),
            Err(Error::NonPositiveInput(_))
        ));
    }

    #[test]
    fn transport_examples() {
        let tol = DEFAULT_CONVEXITY_TOL;
        let exp = FunctionSpec::exp(1.0).unwrap();
        assert!(ag_gg_transport_check(&exp, 0.0, 1.0, DEFAULT_GRID_N, tol).unwrap());
        let sq = FunctionSpec::power(2.0).unwrap();
        assert!(!is_ag_convex(&sq, 1.0, 2.0, DEFAULT_GRID_N, tol).unwrap().holds);
        assert!(ag_gg_transport_check(&sq, 1.0, 2.0, DEFAULT_GRID_N, tol).unwrap());
        assert!(ag_gg_transport_check(&FunctionSpec::identity(), 1.0, 2.0, DEFAULT_GRID_N, tol).unwrap());
    }

    #[test]
    fn mean_chain_examples() {
        let c = scalar_mean_chain(1.0, 1.0).unwrap();
        assert_eq!(c.terms(), [1.0; 5]);
        let c = scalar_mean_chain(4.0, 4.0).unwrap();
        assert_eq!(c.terms(), [4.0; 5]);
        let e2 = std::f64::consts::E.powi(2);
        let c = scalar_mean_chain(1.0, e2).unwrap();
        assert!((c.logarithmic - (e2 - 1.0) / 2.0).abs() < 1e-14);
        assert!((c.geometric - std::f64::consts::E).abs() < 1e-14);
        assert!((c.arithmetic - (1.0 + e2) / 2.0).abs() < 1e-14);
        assert!(c.is_nondecreasing(0.0));
        assert!(matches!(scalar_mean_chain(0.0, 1.0), Err(Error::NonPositiveInput(_))));
    }
}
