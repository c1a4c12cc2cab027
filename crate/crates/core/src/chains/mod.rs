//! Inequality chain verifiers. Each verifier materializes the named terms of
//! one chain and checks the order between neighbours: real-valued chains by
//! signed margins, operator-valued chains in the Loewner order.

mod operator;
mod pair;
mod scalar;
mod uin;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{log_convexity_on_grid, ConvexityVerdict};
use crate::linalg::{LoewnerVerdict, Matrix, Ordering};
use crate::quadrature::{integrate_adaptive, CheckedIntegral, QuadScheme};

pub use operator::{
    am_gm_loewner_check, det_ag_concavity_check, det_ag_indefinite_check, dragomir_operator_chain,
    norm_power_check, operator_ag_midpoint_order_chain, operator_gg_hh_order_chain, operator_norm_gg_chain,
    phi_operator_witness, trace_chain, DragomirFn, TraceVariant,
};
pub use pair::{GeneralPair, PairAlgebra};
pub use scalar::{scalar_hh_chain, scalar_means_chain, ScalarKind};
pub use uin::{
    ag_convexity_witness, kittaneh_check, kittaneh_nonnormal_check, uin_chain, Curve, SandwichCurve, UinVariant,
};

/// Tolerances and integration rule shared by every verifier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainOptions {
    pub scheme: QuadScheme,
    pub rtol: f64,
    pub atol: f64,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            scheme: QuadScheme::default(),
            rtol: 1e-8,
            atol: 1e-12,
        }
    }
}

impl ChainOptions {
    pub fn with_scheme(mut self, scheme: QuadScheme) -> Self {
        self.scheme = scheme;
        self
    }
}

/// A real-valued chain `T₁ ≤ T₂ ≤ … ≤ T_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub theorem_id: String,
    pub term_names: Vec<String>,
    pub term_values: Vec<f64>,
    /// `T_{i+1} - T_i`.
    pub margins: Vec<f64>,
    /// Margins below `-tolerance` are violations.
    pub tolerance: f64,
    pub pass: bool,
    pub quad_reliable: bool,
    pub hypothesis_supported: bool,
    /// Indices of the terms defined by an integral.
    pub integral_terms: Vec<usize>,
}

impl ChainReport {
    pub(crate) fn new(
        theorem_id: &str,
        names: &[&str],
        values: Vec<f64>,
        quad_reliable: bool,
        integral_terms: Vec<usize>,
        opts: &ChainOptions,
    ) -> Self {
        let margins: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
        let largest = values.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        let tolerance = opts.rtol * largest + opts.atol;
        let pass = values.iter().all(|v| v.is_finite()) && margins.iter().all(|&m| m >= -tolerance);
        ChainReport {
            theorem_id: theorem_id.to_string(),
            term_names: names.iter().map(|s| s.to_string()).collect(),
            term_values: values,
            margins,
            tolerance,
            pass,
            quad_reliable,
            hypothesis_supported: true,
            integral_terms,
        }
    }

    pub fn min_margin(&self) -> f64 {
        self.margins.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// One Loewner comparison `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub lhs: String,
    pub rhs: String,
    pub ordering: Ordering,
    /// Smallest eigenvalue of `rhs - lhs`.
    pub min_gap: f64,
    pub scale: f64,
}

/// An operator chain `T₁ ≤ T₂ ≤ …` in the Loewner order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderChainReport {
    pub theorem_id: String,
    pub term_names: Vec<String>,
    pub terms: Vec<Matrix>,
    pub comparisons: Vec<Comparison>,
    /// Relative tolerance: a comparison passes when `min_gap ≥ -rtol · scale`.
    pub rtol: f64,
    pub pass: bool,
    pub quad_reliable: bool,
    pub hypothesis_supported: bool,
    pub integral_terms: Vec<usize>,
}

impl OrderChainReport {
    pub(crate) fn new(
        theorem_id: &str,
        names: &[&str],
        terms: Vec<Matrix>,
        verdicts: Vec<LoewnerVerdict>,
        quad_reliable: bool,
        integral_terms: Vec<usize>,
        opts: &ChainOptions,
    ) -> Self {
        let comparisons: Vec<Comparison> = verdicts
            .iter()
            .enumerate()
            .map(|(i, v)| Comparison {
                lhs: names[i].to_string(),
                rhs: names[i + 1].to_string(),
                ordering: v.ordering,
                min_gap: v.min_gap,
                scale: v.scale,
            })
            .collect();
        let pass = comparisons.iter().all(|c| c.min_gap >= -opts.rtol * c.scale);
        OrderChainReport {
            theorem_id: theorem_id.to_string(),
            term_names: names.iter().map(|s| s.to_string()).collect(),
            terms,
            comparisons,
            rtol: opts.rtol,
            pass,
            quad_reliable,
            hypothesis_supported: true,
            integral_terms,
        }
    }

    pub fn min_gap(&self) -> f64 {
        self.comparisons.iter().map(|c| c.min_gap).fold(f64::INFINITY, f64::min)
    }
}

/// A single inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
}

/// A family of independent scalar inequalities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub theorem_id: String,
    pub entries: Vec<Inequality>,
    pub pass: bool,
}

impl InequalityReport {
    pub(crate) fn new(theorem_id: &str, pairs: Vec<(String, f64, f64)>, opts: &ChainOptions) -> Self {
        let entries: Vec<Inequality> = pairs
            .into_iter()
            .map(|(name, lhs, rhs)| Inequality {
                name,
                lhs,
                rhs,
                margin: rhs - lhs,
                tolerance: opts.rtol * 1.0_f64.max(lhs.abs()).max(rhs.abs()) + opts.atol,
            })
            .collect();
        let pass = entries.iter().all(|e| e.margin.is_finite() && e.margin >= -e.tolerance);
        InequalityReport {
            theorem_id: theorem_id.to_string(),
            entries,
            pass,
        }
    }

    pub fn min_margin(&self) -> f64 {
        self.entries.iter().map(|e| e.margin).fold(f64::INFINITY, f64::min)
    }
}

/// Log-convexity grid verdict for a curve on `[0, 1]`, with a few curve
/// samples for display.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub theorem_id: String,
    pub verdict: ConvexityVerdict,
    pub tolerance: f64,
    /// Curve values at `t = 0, 1/4, 1/2, 3/4, 1`.
    pub samples: Vec<f64>,
    pub pass: bool,
    pub hypothesis_supported: bool,
}

/// Any verifier outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    Chain(ChainReport),
    Order(OrderChainReport),
    Inequality(InequalityReport),
    Witness(WitnessReport),
}

impl Report {
    pub fn theorem_id(&self) -> &str {
        match self {
            Report::Chain(r) => &r.theorem_id,
            Report::Order(r) => &r.theorem_id,
            Report::Inequality(r) => &r.theorem_id,
            Report::Witness(r) => &r.theorem_id,
        }
    }

    pub fn pass(&self) -> bool {
        match self {
            Report::Chain(r) => r.pass,
            Report::Order(r) => r.pass,
            Report::Inequality(r) => r.pass,
            Report::Witness(r) => r.pass,
        }
    }

    pub fn quad_reliable(&self) -> bool {
        match self {
            Report::Chain(r) => r.quad_reliable,
            Report::Order(r) => r.quad_reliable,
            _ => true,
        }
    }

    /// Smallest margin, Loewner gap or convexity slack of the report.
    pub fn min_margin(&self) -> f64 {
        match self {
            Report::Chain(r) => r.min_margin(),
            Report::Order(r) => r.min_gap(),
            Report::Inequality(r) => r.min_margin(),
            Report::Witness(r) => r.verdict.slack,
        }
    }

    /// Whether every term of the report agrees within `rel` relative.
    pub fn is_constant(&self, rel: f64) -> bool {
        fn flat(values: &[f64], rel: f64) -> bool {
            let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            values.iter().all(|v| (v - values[0]).abs() <= rel * scale)
        }
        match self {
            Report::Chain(r) => flat(&r.term_values, rel),
            Report::Order(r) => {
                let scale = r.terms.iter().fold(0.0_f64, |m, t| m.max(t.max_abs()));
                r.terms.iter().all(|t| (t - &r.terms[0]).max_abs() <= rel * scale)
            }
            Report::Inequality(r) => r
                .entries
                .iter()
                .all(|e| (e.lhs - e.rhs).abs() <= rel * e.lhs.abs().max(e.rhs.abs())),
            Report::Witness(r) => flat(&r.samples, rel),
        }
    }
}

/// Log-convexity grid test of `log_g` on `[0, 1]` packaged as a report.
pub(crate) fn witness_report<F>(theorem_id: &str, log_g: F, grid_n: usize, tol: f64) -> Result<WitnessReport>
where
    F: Fn(f64) -> Result<f64>,
{
    let verdict = log_convexity_on_grid(&log_g, 0.0, 1.0, grid_n, tol)?;
    let samples = [0.0, 0.25, 0.5, 0.75, 1.0]
        .iter()
        .map(|&t| log_g(t).map(f64::exp))
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessReport {
        theorem_id: theorem_id.to_string(),
        verdict,
        tolerance: tol,
        samples,
        pass: verdict.holds,
        hypothesis_supported: true,
    })
}

/// The five Hermite–Hadamard terms of a positive curve `g` on `[lo, hi]`,
/// computed from `log g`:
/// `g(m)`, `√(g(q₁)g(q₃))`, `exp(mean of log g)`, `√g(m)·(g(lo)g(hi))^{1/4}`,
/// `√(g(lo)g(hi))`, with `m` the midpoint and `q₁, q₃` the quarter points.
/// The interval may be given reversed; the mean is then taken with the
/// matching orientation. Returns the terms and the doubling verdict.
pub(crate) fn hh_terms<F>(log_g: F, lo: f64, hi: f64, scheme: QuadScheme) -> Result<([f64; 5], bool)>
where
    F: Fn(f64) -> Result<f64>,
{
    if lo == hi {
        return Err(Error::DegenerateInterval(format!("[{lo}, {hi}]")));
    }
    let l_lo = log_g(lo)?;
    let l_hi = log_g(hi)?;
    let l_mid = log_g(0.5 * (lo + hi))?;
    let l_q1 = log_g(0.25 * (3.0 * lo + hi))?;
    let l_q3 = log_g(0.25 * (lo + 3.0 * hi))?;
    let CheckedIntegral { value, reliable } = integrate_adaptive(&log_g, lo, hi, scheme)?;
    let mean = value / (hi - lo);
    Ok((
        [
            l_mid.exp(),
            (0.5 * (l_q1 + l_q3)).exp(),
            mean.exp(),
            (0.5 * l_mid + 0.25 * (l_lo + l_hi)).exp(),
            (0.5 * (l_lo + l_hi)).exp(),
        ],
        reliable,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hh_terms_of_log_linear_curve_are_equal() {
        let (t, reliable) = hh_terms(Ok, 0.0, 2.0, QuadScheme::default()).unwrap();
        assert!(reliable);
        for v in t {
            assert!((v - std::f64::consts::E).abs() < 1e-14, "{t:?}");
        }
    }

    #[test]
    fn hh_terms_reject_degenerate_interval() {
        assert!(matches!(
            hh_terms(Ok, 1.0, 1.0, QuadScheme::default()),
            Err(Error::DegenerateInterval(_))
        ));
    }

    #[test]
    fn chain_report_tolerance() {
        let opts = ChainOptions::default();
        let r = ChainReport::new("t", &["a", "b"], vec![1.0, 1.0 - 5e-9], true, vec![], &opts);
        assert!(r.pass);
        let r = ChainReport::new("t", &["a", "b"], vec![1.0, 1.0 - 2e-8], true, vec![], &opts);
        assert!(!r.pass);
        assert_eq!(r.margins.len(), 1);
    }
}
