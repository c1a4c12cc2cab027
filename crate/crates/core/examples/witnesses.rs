//! Grid witnesses for log-convexity of the curves behind the norm chains.
//!
//! `cargo run --example witnesses`

use hhchain::chains::{ag_convexity_witness, phi_operator_witness, Curve, SandwichCurve};
use hhchain::functions::FunctionSpec;
use hhchain::norms::NormSpec;
use hhchain::sampler::{random_commuting_pair, random_general, random_spd, RandomStream};

fn main() -> hhchain::Result<()> {
    let mut r = RandomStream::new(2);
    let a = random_spd(&mut r, 3, 0.1, 10.0)?;
    let b = random_spd(&mut r, 3, 0.1, 10.0)?;
    let x = random_general(&mut r, 3, 3, 1.0);
    let curve = SandwichCurve::new(&a, &b, &x)?;
    for c in [Curve::PhiSandwich(&curve), Curve::PhiDiagonal(&curve)] {
        let w = ag_convexity_witness(c, NormSpec::Schatten(1.0), 33, 1e-10)?;
        println!("{:<14} holds={} slack {:.3e} samples {:?}", w.theorem_id, w.verdict.holds, w.verdict.slack, w.samples);
    }
    let p = random_commuting_pair(&mut r, 3, 0.1, 10.0)?;
    let w = phi_operator_witness(&FunctionSpec::exp(1.0)?, &p, NormSpec::OperatorNorm, 33, 1e-10)?;
    println!("{:<14} holds={} slack {:.3e}", w.theorem_id, w.verdict.holds, w.verdict.slack);
    Ok(())
}
