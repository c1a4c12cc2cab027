use serde::{Deserialize, Serialize};

use super::pair::{integrate_op, PairAlgebra};
use super::{hh_terms, witness_report, ChainOptions, ChainReport, InequalityReport, OrderChainReport, WitnessReport};
use crate::error::{Error, Result};
use crate::functions::{is_ag_convex, is_gg_convex, FunctionKind, FunctionSpec, DEFAULT_CONVEXITY_TOL, DEFAULT_GRID_N};
use crate::linalg::{
    det_pd, det_sym, eigh, loewner_compare, pd_power, require_pd, weighted_geometric_mean, SymMatrix,
    DEFAULT_EIGH_TOL,
};
use crate::norms::{norm, NormSpec};
use crate::quadrature::{QuadScheme, DOUBLING_TOL};

/// The operator convex functions the operator Hermite–Hadamard chain is
/// checked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DragomirFn {
    /// `X ↦ X²`, defined for every symmetric `X`.
    Square,
    /// `X ↦ X⁻¹` on positive definite `X`.
    Inverse,
}

impl DragomirFn {
    pub fn from_spec(f: &FunctionSpec) -> Result<Self> {
        match f.kind() {
            FunctionKind::Power { exponent } if *exponent == 2.0 => Ok(DragomirFn::Square),
            FunctionKind::Inverse => Ok(DragomirFn::Inverse),
            _ => Err(Error::InvalidArgument(format!(
                "the operator chain needs power:2 or inverse, got {f}"
            ))),
        }
    }

    pub fn apply(&self, x: &SymMatrix) -> Result<SymMatrix> {
        match self {
            DragomirFn::Square => Ok(SymMatrix::symmetrize(x.matmul(x)?)),
            DragomirFn::Inverse => {
                let d = eigh(x, DEFAULT_EIGH_TOL)?;
                require_pd(&d)?;
                d.map(|v| Ok(1.0 / v))
            }
        }
    }
}

fn integrate_sym<G>(g: G, lo: f64, hi: f64, scheme: QuadScheme) -> Result<(SymMatrix, bool)>
where
    G: Fn(f64) -> Result<SymMatrix>,
{
    let run = |s: QuadScheme| -> Result<SymMatrix> {
        let mut acc: Option<SymMatrix> = None;
        for (t, w) in s.nodes(lo, hi)? {
            let sample = g(t)?;
            if !sample.is_finite() {
                return Err(Error::NonFiniteSample { node: t });
            }
            acc = Some(match acc {
                None => sample.scale(w),
                Some(prev) => prev.lincomb(1.0, &sample, w)?,
            });
        }
        acc.ok_or(Error::NOutOfRange(0))
    };
    let value = run(scheme)?;
    let reliable = match scheme.refined() {
        Some(fine) => {
            let diff = (&*value - &*run(fine)?).frobenius_norm();
            diff <= DOUBLING_TOL * (1.0 + value.frobenius_norm())
        }
        None => true,
    };
    Ok((value, reliable))
}

const DRAGOMIR_NAMES: [&str; 6] = [
    "f((A+B)/2)",
    "2 int_{1/4}^{3/4} f(tA+(1-t)B) dt",
    "(f((3A+B)/4) + f((A+3B)/4))/2",
    "int_0^1 f((1-t)A+tB) dt",
    "(f((A+B)/2) + (f(A)+f(B))/2)/2",
    "(f(A)+f(B))/2",
];

/// Operator Hermite–Hadamard chain with its two refinements, for an
/// operator convex `f` and a possibly non-commuting pair.
pub fn dragomir_operator_chain(f: DragomirFn, a: &SymMatrix, b: &SymMatrix, opts: &ChainOptions) -> Result<OrderChainReport> {
    if a.dim() != b.dim() {
        return Err(Error::dims(a.dim(), b.dim()));
    }
    let conv = |t: f64| a.lincomb(t, b, 1.0 - t);
    let fa = f.apply(a)?;
    let fb = f.apply(b)?;
    let f_mid = f.apply(&conv(0.5)?)?;
    let (inner, r1) = integrate_sym(|t| f.apply(&conv(t)?), 0.25, 0.75, opts.scheme)?;
    let t2 = inner.scale(2.0);
    let t3 = f.apply(&conv(0.75)?)?.lincomb(0.5, &f.apply(&conv(0.25)?)?, 0.5)?;
    let (t4, r2) = integrate_sym(|t| f.apply(&conv(1.0 - t)?), 0.0, 1.0, opts.scheme)?;
    let t6 = fa.lincomb(0.5, &fb, 0.5)?;
    let t5 = f_mid.lincomb(0.5, &t6, 0.5)?;
    let terms = vec![f_mid, t2, t3, t4, t5, t6];
    let verdicts = terms
        .windows(2)
        .map(|w| loewner_compare(&w[0], &w[1], opts.rtol))
        .collect::<Result<Vec<_>>>()?;
    Ok(OrderChainReport::new(
        "dragomir",
        &DRAGOMIR_NAMES,
        terms.into_iter().map(SymMatrix::into_matrix).collect(),
        verdicts,
        r1 && r2,
        vec![1, 3],
        opts,
    ))
}

fn order_report<P: PairAlgebra>(
    p: &P,
    id: &str,
    names: &[&str],
    terms: Vec<P::Op>,
    reliable: bool,
    integral_terms: Vec<usize>,
    opts: &ChainOptions,
) -> Result<OrderChainReport> {
    let verdicts = terms
        .windows(2)
        .map(|w| p.compare(&w[0], &w[1], opts.rtol))
        .collect::<Result<Vec<_>>>()?;
    let mats = terms.iter().map(|t| p.materialize(t).into_matrix()).collect();
    Ok(OrderChainReport::new(id, names, mats, verdicts, reliable, integral_terms, opts))
}

fn guard_range<P: PairAlgebra>(p: &P) -> Option<(f64, f64)> {
    let (lo, hi) = p.spectral_range();
    (lo < hi).then_some((lo, hi))
}

fn gg_supported<P: PairAlgebra>(f: &FunctionSpec, p: &P) -> Result<bool> {
    match guard_range(p) {
        Some((lo, hi)) => Ok(is_gg_convex(f, lo, hi, DEFAULT_GRID_N, DEFAULT_CONVEXITY_TOL)?.holds),
        None => Ok(true),
    }
}

/// `log f(√(AB)) ≤ ∫₀¹ log f(AᵗB^{1-t}) dt ≤ log √(f(A)f(B))` for a
/// GG-convex `f`.
pub fn operator_gg_hh_order_chain<P: PairAlgebra>(f: &FunctionSpec, p: &P, opts: &ChainOptions) -> Result<OrderChainReport> {
    let log_f = |x: f64| f.log_eval(x);
    let t1 = p.map(&p.power_product(0.5)?, &log_f)?;
    let (t2, reliable) = integrate_op(p, |t| p.map(&p.power_product(t)?, &log_f), 0.0, 1.0, opts.scheme)?;
    let fa = p.map(&p.a(), &|x| f.eval(x))?;
    let fb = p.map(&p.b(), &|x| f.eval(x))?;
    let t3 = p.map(&p.geometric(&fa, &fb)?, &|x| Ok(x.ln()))?;
    let mut report = order_report(
        p,
        "op_gg_hh",
        &[
            "log f(sqrt(AB))",
            "int_0^1 log f(A^t B^(1-t)) dt",
            "log sqrt(f(A) f(B))",
        ],
        vec![t1, t2, t3],
        reliable,
        vec![1],
        opts,
    )?;
    report.hypothesis_supported = gg_supported(f, p)?;
    Ok(report)
}

/// `f((A+B)/2) ≤ ∫₀¹ √(f(αA+(1-α)B) f((1-α)A+αB)) dα ≤ √(f(A)f(B))` for an
/// AG-convex `f`.
pub fn operator_ag_midpoint_order_chain<P: PairAlgebra>(
    f: &FunctionSpec,
    p: &P,
    opts: &ChainOptions,
) -> Result<OrderChainReport> {
    let fx = |x: &P::Op| p.map(x, &|v| f.eval(v));
    let t1 = fx(&p.convex(0.5)?)?;
    let (t2, reliable) = integrate_op(
        p,
        |alpha| p.geometric(&fx(&p.convex(alpha)?)?, &fx(&p.convex(1.0 - alpha)?)?),
        0.0,
        1.0,
        opts.scheme,
    )?;
    let t3 = p.geometric(&fx(&p.a())?, &fx(&p.b())?)?;
    let mut report = order_report(
        p,
        "op_ag_midpoint",
        &[
            "f((A+B)/2)",
            "int_0^1 sqrt(f(aA+(1-a)B) f((1-a)A+aB)) da",
            "sqrt(f(A) f(B))",
        ],
        vec![t1, t2, t3],
        reliable,
        vec![1],
        opts,
    )?;
    report.hypothesis_supported = match guard_range(p) {
        Some((lo, hi)) => is_ag_convex(f, lo, hi, DEFAULT_GRID_N, DEFAULT_CONVEXITY_TOL)?.holds,
        None => true,
    };
    Ok(report)
}

/// Hermite–Hadamard chain of `φ(t) = ‖f(AᵗB^{1-t})‖` on `[0, 1]`. The
/// theorem id is `op_norm_gg`, or `exp_norm` when `f` is `exp:1`.
pub fn operator_norm_gg_chain<P: PairAlgebra>(
    f: &FunctionSpec,
    p: &P,
    spec: NormSpec,
    opts: &ChainOptions,
) -> Result<ChainReport> {
    let log_phi = |t: f64| -> Result<f64> { Ok(p.norm(&p.map(&p.power_product(t)?, &|x| f.eval(x))?, spec)?.ln()) };
    let (terms, reliable) = hh_terms(log_phi, 0.0, 1.0, opts.scheme)?;
    let id = if *f == FunctionSpec::exp(1.0)? { "exp_norm" } else { "op_norm_gg" };
    let mut report = ChainReport::new(
        id,
        &[
            "||f(sqrt(AB))||",
            "sqrt(||f(A^(1/4)B^(3/4))|| ||f(A^(3/4)B^(1/4))||)",
            "exp(int_0^1 log ||f(A^u B^(1-u))|| du)",
            "sqrt(||f(A^(1/2)B^(1/2))||) ||f(B)||^(1/4) ||f(A)||^(1/4)",
            "sqrt(||f(A)|| ||f(B)||)",
        ],
        terms.to_vec(),
        reliable,
        vec![2],
        opts,
    );
    report.hypothesis_supported = gg_supported(f, p)?;
    Ok(report)
}

/// Log-convexity of `φ(t) = ‖f(AᵗB^{1-t})‖` on `[0, 1]`.
pub fn phi_operator_witness<P: PairAlgebra>(
    f: &FunctionSpec,
    p: &P,
    spec: NormSpec,
    grid_n: usize,
    tol: f64,
) -> Result<WitnessReport> {
    let log_phi = |t: f64| -> Result<f64> { Ok(p.norm(&p.map(&p.power_product(t)?, &|x| f.eval(x))?, spec)?.ln()) };
    let mut report = witness_report("phi_operator", log_phi, grid_n, tol)?;
    report.hypothesis_supported = gg_supported(f, p)?;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TraceVariant {
    Sqrt,
    Squared,
}

/// The two trace chains for a commuting positive pair.
pub fn trace_chain<P: PairAlgebra>(variant: TraceVariant, p: &P, opts: &ChainOptions) -> Result<ChainReport> {
    match variant {
        TraceVariant::Sqrt => {
            let log_tr = |t: f64| -> Result<f64> { Ok(p.trace(&p.power_product(t)?).ln()) };
            let (hh, reliable) = hh_terms(log_tr, 0.0, 1.0, opts.scheme)?;
            let mut values = vec![p.trace_product(&p.a(), &p.b()).sqrt()];
            values.extend_from_slice(&hh);
            Ok(ChainReport::new(
                "trace_sqrt",
                &[
                    "sqrt(Tr(AB))",
                    "Tr(sqrt(AB))",
                    "sqrt(Tr(A^(1/4)B^(3/4)) Tr(A^(3/4)B^(1/4)))",
                    "exp(int_0^1 log Tr(A^u B^(1-u)) du)",
                    "sqrt(Tr(A^(1/2)B^(1/2))) Tr(B)^(1/4) Tr(A)^(1/4)",
                    "sqrt(Tr(A) Tr(B))",
                ],
                values,
                reliable,
                vec![3],
                opts,
            ))
        }
        TraceVariant::Squared => {
            let sq = p.squared()?;
            let log_tr = |u: f64| -> Result<f64> { Ok(sq.trace(&sq.power_product(u)?).ln()) };
            let (hh, reliable) = hh_terms(log_tr, 0.0, 1.0, opts.scheme)?;
            let mut values = hh[..4].to_vec();
            values.push(p.trace(&p.a()) * p.trace(&p.b()));
            Ok(ChainReport::new(
                "trace_squared",
                &[
                    "Tr(AB)",
                    "sqrt(Tr(A^(1/2)B^(3/2)) Tr(A^(3/2)B^(1/2)))",
                    "exp(int_0^1 log Tr(A^(2u) B^(2(1-u))) du)",
                    "sqrt(Tr(AB)) Tr(B^2)^(1/4) Tr(A^2)^(1/4)",
                    "Tr(A) Tr(B)",
                ],
                values,
                reliable,
                vec![2],
                opts,
            ))
        }
    }
}

fn check_weight(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::DomainViolation {
            value: alpha,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(())
}

/// `det(αA + (1-α)B) ≥ det(A)^α det(B)^{1-α}` for positive definite `A, B`.
pub fn det_ag_concavity_check(a: &SymMatrix, b: &SymMatrix, alpha: f64, opts: &ChainOptions) -> Result<InequalityReport> {
    check_weight(alpha)?;
    let mix = a.lincomb(alpha, b, 1.0 - alpha)?;
    let rhs = det_pd(&mix)?;
    let lhs = (alpha * det_pd(a)?.ln() + (1.0 - alpha) * det_pd(b)?.ln()).exp();
    Ok(InequalityReport::new(
        "det_ag",
        vec![("det(A)^a det(B)^(1-a) <= det(aA+(1-a)B)".into(), lhs, rhs)],
        opts,
    ))
}

/// The same inequality read for symmetric indefinite `A, B`: signed
/// determinant on the left side, `|det|` powers on the right.
pub fn det_ag_indefinite_check(a: &SymMatrix, b: &SymMatrix, alpha: f64, opts: &ChainOptions) -> Result<InequalityReport> {
    check_weight(alpha)?;
    let mix = a.lincomb(alpha, b, 1.0 - alpha)?;
    let rhs = det_sym(&mix)?;
    let lhs = det_sym(a)?.abs().powf(alpha) * det_sym(b)?.abs().powf(1.0 - alpha);
    Ok(InequalityReport::new(
        "det_ag",
        vec![("|det A|^a |det B|^(1-a) <= det(aA+(1-a)B)".into(), lhs, rhs)],
        opts,
    ))
}

/// `A #_ν B ≤ (1-ν)A + νB` in the Loewner order.
pub fn am_gm_loewner_check(a: &SymMatrix, b: &SymMatrix, nu: f64, opts: &ChainOptions) -> Result<OrderChainReport> {
    let gm = weighted_geometric_mean(a, b, nu)?;
    let am = a.lincomb(1.0 - nu, b, nu)?;
    let verdict = loewner_compare(&gm, &am, opts.rtol)?;
    Ok(OrderChainReport::new(
        "am_gm_loewner",
        &["A #_v B", "(1-v)A + vB"],
        vec![gm.into_matrix(), am.into_matrix()],
        vec![verdict],
        true,
        vec![],
        opts,
    ))
}

/// `‖T^α‖ ≤ ‖T‖^α` in operator norm for positive semidefinite `T` on the
/// grid `α = 0, 0.1, …, 1`.
pub fn norm_power_check(t: &SymMatrix, opts: &ChainOptions) -> Result<InequalityReport> {
    let top = norm(t, NormSpec::OperatorNorm)?;
    let pairs = (0..=10)
        .map(|k| -> Result<(String, f64, f64)> {
            let alpha = k as f64 / 10.0;
            let lhs = norm(&*pd_power(t, alpha)?, NormSpec::OperatorNorm)?;
            Ok((format!("||T^{alpha}|| <= ||T||^{alpha}"), lhs, top.powf(alpha)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InequalityReport::new("norm_power", pairs, opts))
}
