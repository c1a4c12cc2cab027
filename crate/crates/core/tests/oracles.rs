//! Reference values computed independently at 30 digits and frozen here.

use hhchain::chains::{
    ag_convexity_witness, det_ag_concavity_check, operator_ag_midpoint_order_chain, operator_norm_gg_chain,
    phi_operator_witness, trace_chain, uin_chain, ChainOptions, Curve, SandwichCurve, TraceVariant, UinVariant,
};
use hhchain::functions::FunctionSpec;
use hhchain::linalg::{CommutingPair, Matrix, SymMatrix};
use hhchain::norms::NormSpec;
use hhchain::quadrature::QuadScheme;

fn close(got: &[f64], want: &[f64], rel: f64) {
    assert_eq!(got.len(), want.len());
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        assert!((g - w).abs() <= rel * w.abs(), "term {}: {g} vs {w}", i + 1);
    }
}

fn riemann() -> ChainOptions {
    ChainOptions::default().with_scheme(QuadScheme::Midpoint(100_000))
}

fn pair(a: &[f64], b: &[f64]) -> CommutingPair {
    CommutingPair::diagonal(a.to_vec(), b.to_vec()).unwrap()
}

#[test]
fn trace_sqrt_on_diagonal_pair() {
    let p = pair(&[1.0, 2.0], &[3.0, 1.0]);
    let want = [
        2.236_067_977_499_79,
        3.146_264_369_941_972,
        3.224_708_235_724_733,
        3.250_129_648_855_535_3,
        3.301_360_247_771_569,
        3.464_101_615_137_754_6,
    ];
    let c = trace_chain(TraceVariant::Sqrt, &p, &ChainOptions::default()).unwrap();
    close(&c.term_values, &want, 1e-12);
    assert!(c.pass);
    let r = trace_chain(TraceVariant::Sqrt, &p, &riemann()).unwrap();
    close(&r.term_values, &want, 1e-8);
}

#[test]
fn trace_squared_on_diagonal_pair() {
    let p = pair(&[1.0, 2.0], &[3.0, 1.0]);
    let want = [5.0, 5.490_576_308_501_891, 5.639_366_110_125_843, 5.946_035_575_013_605, 12.0];
    let c = trace_chain(TraceVariant::Squared, &p, &ChainOptions::default()).unwrap();
    close(&c.term_values, &want, 1e-12);
    let r = trace_chain(TraceVariant::Squared, &p, &riemann()).unwrap();
    close(&r.term_values, &want, 1e-8);
}

#[test]
fn exp_norm_on_diagonal_pair() {
    let p = pair(&[1.0, 4.0], &[4.0, 1.0]);
    let want = [
        7.389_056_098_930_65,
        16.918_828_678_557_897,
        17.910_552_813_313_48,
        20.085_536_923_187_668,
        54.598_150_033_144_236,
    ];
    let f = FunctionSpec::exp(1.0).unwrap();
    let c = operator_norm_gg_chain(&f, &p, NormSpec::OperatorNorm, &ChainOptions::default()).unwrap();
    assert_eq!(c.theorem_id, "exp_norm");
    close(&c.term_values, &want, 1e-12);
    assert!(c.quad_reliable && c.pass);
    let r = operator_norm_gg_chain(&f, &p, NormSpec::OperatorNorm, &riemann()).unwrap();
    close(&r.term_values, &want, 1e-8);
}

#[test]
fn uin_full_trace_norm() {
    let a = SymMatrix::from_diag(&[1.0, 4.0]);
    let b = SymMatrix::from_diag(&[4.0, 1.0]);
    let x = Matrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
    let want = [
        5.0,
        5.196_152_422_706_632,
        5.263_189_943_429_095,
        5.399_514_744_329_022,
        5.830_951_894_845_301,
    ];
    let c = uin_chain(UinVariant::Full, &a, &b, &x, NormSpec::TraceNorm, &ChainOptions::default()).unwrap();
    close(&c.term_values, &want, 1e-12);
    let r = uin_chain(UinVariant::Full, &a, &b, &x, NormSpec::Schatten(1.0), &riemann()).unwrap();
    close(&r.term_values, &want, 1e-8);
}

#[test]
fn ag_midpoint_with_log_linear_function_is_flat() {
    // exp(2x) with a + b = 1 gives e in every entry of every term
    let p = pair(&[0.25, 0.9], &[0.75, 0.1]);
    let f = FunctionSpec::exp(2.0).unwrap();
    for opts in [ChainOptions::default(), riemann()] {
        let c = operator_ag_midpoint_order_chain(&f, &p, &opts).unwrap();
        for t in &c.terms {
            let d = (t - &Matrix::from_diag(&[1.0, 1.0]).scale(std::f64::consts::E)).max_abs();
            assert!(d < 1e-10, "{d}");
        }
    }
}

#[test]
fn det_concavity_hand_value() {
    let a = SymMatrix::from_diag(&[1.0, 4.0]);
    let b = SymMatrix::from_diag(&[4.0, 1.0]);
    let r = det_ag_concavity_check(&a, &b, 0.5, &ChainOptions::default()).unwrap();
    let e = &r.entries[0];
    assert!((e.lhs - 4.0).abs() < 1e-12 && (e.rhs - 6.25).abs() < 1e-12);
    assert!(r.pass);
}

#[test]
fn witnesses_on_diagonal_data() {
    let a = SymMatrix::from_diag(&[1.0, 3.0]);
    let b = SymMatrix::from_diag(&[3.0, 1.0]);
    let x = Matrix::identity(2);
    let curve = SandwichCurve::new(&a, &b, &x).unwrap();
    // φ(s) = max(3^s, 3^s) = 3^s is log-linear
    let w = ag_convexity_witness(Curve::PhiDiagonal(&curve), NormSpec::OperatorNorm, 33, 1e-10).unwrap();
    assert!(w.pass && w.verdict.holds);
    let want = [1.0, 3f64.powf(0.25), 3f64.sqrt(), 3f64.powf(0.75), 3.0];
    close(&w.samples, &want, 1e-12);

    let p = pair(&[1.0, 3.0], &[3.0, 1.0]);
    let w = phi_operator_witness(&FunctionSpec::exp(1.0).unwrap(), &p, NormSpec::OperatorNorm, 33, 1e-10).unwrap();
    assert!(w.pass && w.verdict.holds);
}
