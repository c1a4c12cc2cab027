//! Gauss–Legendre quadrature for scalar and matrix integrands.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymMatrix};

/// Node count used for every chain integral.
pub const DEFAULT_QUAD_N: usize = 64;
pub const MAX_QUAD_N: usize = 512;
/// Relative threshold of the n / 2n doubling check.
pub const DOUBLING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes and weights mapped from `[-1, 1]` onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }
}

/// Legendre `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss–Legendre rule with `n` nodes: Newton iteration from Chebyshev-like
/// initial guesses, weights `2 / ((1 - x²) P_n'(x)²)`.
pub fn gl_rule(n: usize) -> Result<QuadratureRule> {
    if !(1..=MAX_QUAD_N).contains(&n) {
        return Err(Error::NOutOfRange(n));
    }
    if n == 1 {
        return Ok(QuadratureRule {
            nodes: vec![0.0],
            weights: vec![2.0],
        });
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Descending root i mirrors onto ascending slot.
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}

/// [`gl_rule`] memoized per node count.
fn cached_rule(n: usize) -> Result<Arc<QuadratureRule>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(rule) = cache.lock().expect("rule cache").get(&n) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(gl_rule(n)?);
    cache.lock().expect("rule cache").insert(n, Arc::clone(&rule));
    Ok(rule)
}

/// Integration scheme used by the chain verifiers. `Midpoint` is the uniform
/// Riemann rule, kept as an independent reference for the Gauss rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum QuadScheme {
    GaussLegendre(usize),
    Midpoint(usize),
}

impl Default for QuadScheme {
    fn default() -> Self {
        QuadScheme::GaussLegendre(DEFAULT_QUAD_N)
    }
}

impl QuadScheme {
    /// `(node, weight)` pairs on `[a, b]`. Reversed intervals give negative
    /// weights.
    pub fn nodes(&self, a: f64, b: f64) -> Result<Vec<(f64, f64)>> {
        match *self {
            QuadScheme::GaussLegendre(n) => Ok(cached_rule(n)?.mapped(a, b).collect()),
            QuadScheme::Midpoint(0) => Err(Error::NOutOfRange(0)),
            QuadScheme::Midpoint(n) => {
                let h = (b - a) / n as f64;
                Ok((0..n).map(|i| (a + (i as f64 + 0.5) * h, h)).collect())
            }
        }
    }

    /// The finer rule used for the doubling check, if any.
    pub fn refined(&self) -> Option<QuadScheme> {
        match *self {
            QuadScheme::GaussLegendre(n) => Some(QuadScheme::GaussLegendre((2 * n).min(MAX_QUAD_N))),
            QuadScheme::Midpoint(_) => None,
        }
    }
}

/// `|coarse - fine| ≤ 1e-9 · (1 + |coarse|)`.
pub fn doubling_agrees(coarse: f64, fine: f64) -> bool {
    (coarse - fine).abs() <= DOUBLING_TOL * (1.0 + coarse.abs())
}

/// `∫_a^b g(u) du`; returns 0 for `a = b`.
pub fn integrate_scalar<G>(g: G, a: f64, b: f64, n: usize) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let rule = gl_rule(n)?;
    if a == b {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for (t, w) in rule.mapped(a, b) {
        let v = g(t)?;
        if !v.is_finite() {
            return Err(Error::NonFiniteSample { node: t });
        }
        sum += w * v;
    }
    Ok(sum)
}

/// `∫_a^b G(t) dt` for a symmetric-matrix-valued integrand.
pub fn integrate_matrix<G>(g: G, a: f64, b: f64, n: usize) -> Result<SymMatrix>
where
    G: Fn(f64) -> Result<SymMatrix>,
{
    let rule = gl_rule(n)?;
    let mut acc: Option<Matrix> = None;
    let mut dim = None;
    for (t, w) in rule.mapped(a, b) {
        let sample = g(t)?;
        if !sample.is_finite() {
            return Err(Error::NonFiniteSample { node: t });
        }
        match dim {
            None => dim = Some(sample.dim()),
            Some(d) if d != sample.dim() => return Err(Error::dims(d, sample.dim())),
            _ => {}
        }
        acc = Some(match acc {
            None => sample.scale(w).into_matrix(),
            Some(m) => m.lincomb(1.0, &sample, w)?,
        });
    }
    let m = acc.expect("rule has at least one node");
    if a == b {
        return Ok(SymMatrix::zeros(m.rows()));
    }
    Ok(SymMatrix::symmetrize(m))
}

/// Integral value at `n` nodes plus the doubling verdict
/// `|I_n - I_2n| ≤ 1e-9 · (1 + |I_n|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckedIntegral {
    pub value: f64,
    pub reliable: bool,
}

pub fn integrate_scalar_checked<G>(g: G, a: f64, b: f64, n: usize) -> Result<CheckedIntegral>
where
    G: Fn(f64) -> Result<f64>,
{
    let value = integrate_scalar(&g, a, b, n)?;
    let refined = integrate_scalar(&g, a, b, (2 * n).min(MAX_QUAD_N))?;
    Ok(CheckedIntegral {
        value,
        reliable: doubling_agrees(value, refined),
    })
}

pub fn integrate_matrix_checked<G>(g: G, a: f64, b: f64, n: usize) -> Result<(SymMatrix, bool)>
where
    G: Fn(f64) -> Result<SymMatrix>,
{
    let value = integrate_matrix(&g, a, b, n)?;
    let refined = integrate_matrix(&g, a, b, (2 * n).min(MAX_QUAD_N))?;
    let diff = (&*value - &*refined).frobenius_norm();
    Ok((value.clone(), diff <= DOUBLING_TOL * (1.0 + value.frobenius_norm())))
}

/// Bisection depth cap of [`integrate_adaptive`].
pub const MAX_PANEL_DEPTH: usize = 40;

/// `∫_a^b g(u) du` with the doubling check applied panel by panel: a panel
/// whose `n`-point and `2n`-point values disagree is halved, so isolated
/// kinks (a maximum of smooth branches, say) get fenced into short panels.
/// Each accepted panel contributes its `n`-point value and the panel
/// tolerances add up to `1e-9 · (1 + |I|)`. `reliable` is false when some
/// panel is still unresolved at depth [`MAX_PANEL_DEPTH`]. Rules without a
/// refinement run once and count as reliable.
pub fn integrate_adaptive<G>(g: G, a: f64, b: f64, scheme: QuadScheme) -> Result<CheckedIntegral>
where
    G: Fn(f64) -> Result<f64>,
{
    let run = |s: QuadScheme, lo: f64, hi: f64| -> Result<f64> {
        let mut acc = 0.0;
        for (x, w) in s.nodes(lo, hi)? {
            let v = g(x)?;
            if !v.is_finite() {
                return Err(Error::NonFiniteSample { node: x });
            }
            acc += w * v;
        }
        Ok(acc)
    };
    let whole = run(scheme, a, b)?;
    let fine = match scheme.refined() {
        Some(f) => f,
        None => {
            return Ok(CheckedIntegral {
                value: whole,
                reliable: true,
            })
        }
    };
    let budget = DOUBLING_TOL * (1.0 + whole.abs());
    let width = (b - a).abs();
    let mut value = 0.0;
    let mut reliable = true;
    // (lo, hi, depth, coarse value on the panel)
    let mut stack = vec![(a, b, 0usize, whole)];
    while let Some((lo, hi, depth, coarse)) = stack.pop() {
        let refined = run(fine, lo, hi)?;
        let tol = budget * (hi - lo).abs() / width;
        if (coarse - refined).abs() <= tol {
            value += coarse;
        } else if depth >= MAX_PANEL_DEPTH {
            value += refined;
            reliable = false;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1, run(scheme, mid, hi)?));
            stack.push((lo, mid, depth + 1, run(scheme, lo, mid)?));
        }
    }
    Ok(CheckedIntegral { value, reliable })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rules() {
        let r = gl_rule(1).unwrap();
        assert_eq!((r.nodes.clone(), r.weights.clone()), (vec![0.0], vec![2.0]));
        // roots of (3x² - 1)/2
        let r = gl_rule(2).unwrap();
        let root = 1.0 / 3.0_f64.sqrt();
        assert!((r.nodes[0] + root).abs() < 1e-15 && (r.nodes[1] - root).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15 && (r.weights[1] - 1.0).abs() < 1e-15);
        assert!(matches!(gl_rule(0), Err(Error::NOutOfRange(0))));
        assert!(matches!(gl_rule(513), Err(Error::NOutOfRange(513))));
    }

    #[test]
    fn rule_invariants() {
        for n in [3, 7, 64, 128, 255, 512] {
            let r = gl_rule(n).unwrap();
            let total: f64 = r.weights.iter().sum();
            assert!((total - 2.0).abs() < 1e-12, "n={n}: {total}");
            for i in 0..n {
                assert!((r.nodes[i] + r.nodes[n - 1 - i]).abs() < 1e-12);
                assert!(r.weights[i] > 0.0 && r.nodes[i].abs() < 1.0);
            }
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn exactness_degree_five() {
        let v = integrate_scalar(|x| Ok(x.powi(4)), -1.0, 1.0, 3).unwrap();
        assert!((v - 0.4).abs() < 1e-14);
    }

    #[test]
    fn scalar_examples() {
        assert!((integrate_scalar(|_| Ok(1.0), 0.0, 1.0, 64).unwrap() - 1.0).abs() < 1e-14);
        assert!((integrate_scalar(Ok, 0.0, 1.0, 64).unwrap() - 0.5).abs() < 1e-14);
        assert!((integrate_scalar(|u| Ok(u.exp().ln()), 0.0, 1.0, 64).unwrap() - 0.5).abs() < 1e-14);
        assert_eq!(integrate_scalar(Ok, 2.0, 2.0, 64).unwrap(), 0.0);
        let err = integrate_scalar(|u| Ok(1.0 / (u - u)), 0.0, 1.0, 4).unwrap_err();
        assert!(matches!(err, Error::NonFiniteSample { .. }));
    }

    #[test]
    fn matrix_examples() {
        let a = SymMatrix::from_rows(&[[2.0, 1.0], [1.0, 3.0]]).unwrap();
        let r = integrate_matrix(|_| Ok(a.clone()), 0.0, 1.0, 64).unwrap();
        assert!((&*r - &*a).max_abs() < 1e-14);
        let r = integrate_matrix(|t| Ok(SymMatrix::identity(2).scale(t)), 0.0, 1.0, 64).unwrap();
        assert!((&*r - &Matrix::identity(2).scale(0.5)).max_abs() < 1e-14);
        // f = x², A = 0, B = 1: ∫₀¹ (1-t)² dt = 1/3
        let r = integrate_matrix(|t| Ok(SymMatrix::from_diag(&[(1.0 - t) * (1.0 - t)])), 0.0, 1.0, 64).unwrap();
        assert!((r[(0, 0)] - 1.0 / 3.0).abs() < 1e-14);
        let err = integrate_matrix(
            |t| Ok(if t < 0.5 { SymMatrix::identity(2) } else { SymMatrix::identity(3) }),
            0.0,
            1.0,
            4,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DimMismatch { .. }));
    }

    #[test]
    fn adaptive_resolves_a_kink() {
        let g = |x: f64| Ok((x - 0.3).abs().max(0.1 * x));
        let plain = integrate_scalar_checked(g, 0.0, 1.0, 64).unwrap();
        assert!(!plain.reliable);
        let r = integrate_adaptive(g, 0.0, 1.0, QuadScheme::GaussLegendre(64)).unwrap();
        assert!(r.reliable);
        // exact: kink of |x - 0.3| at 0.3, plus the 0.1x branch near 0.3
        let exact = integrate_scalar_checked(g, 0.0, 0.3 / 1.1, 64).unwrap().value
            + integrate_scalar_checked(g, 0.3 / 1.1, 0.3 / 0.9, 64).unwrap().value
            + integrate_scalar_checked(g, 0.3 / 0.9, 1.0, 64).unwrap().value;
        assert!((r.value - exact).abs() < 1e-9, "{} vs {exact}", r.value);
        let smooth = integrate_adaptive(|x: f64| Ok(x.exp()), 1.0, 0.0, QuadScheme::GaussLegendre(16)).unwrap();
        assert!((smooth.value - (1.0 - std::f64::consts::E)).abs() < 1e-14 && smooth.reliable);
    }

    #[test]
    fn midpoint_scheme() {
        let nodes = QuadScheme::Midpoint(4).nodes(0.0, 1.0).unwrap();
        assert_eq!(nodes[0], (0.125, 0.25));
        let v: f64 = QuadScheme::Midpoint(100_000)
            .nodes(0.0, 1.0)
            .unwrap()
            .iter()
            .map(|(x, w)| w * x * x)
            .sum();
        assert!((v - 1.0 / 3.0).abs() < 1e-10);
        assert_eq!(QuadScheme::Midpoint(10).refined(), None);
        assert_eq!(QuadScheme::default().refined(), Some(QuadScheme::GaussLegendre(128)));
    }

    #[test]
    fn doubling_flags_rough_integrands() {
        let smooth = integrate_scalar_checked(|u| Ok(u.sin()), 0.0, 1.0, 64).unwrap();
        assert!(smooth.reliable);
        let rough = integrate_scalar_checked(|u| Ok((u - 0.3).abs().sqrt()), 0.0, 1.0, 8).unwrap();
        assert!(!rough.reliable);
    }
}
