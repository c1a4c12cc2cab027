//! Operator-convex refinement for `t ↦ t²` and `t ↦ 1/t` with non-commuting inputs.
//!
//! `cargo run --example dragomir`

use hhchain::chains::{dragomir_operator_chain, ChainOptions, DragomirFn};
use hhchain::linalg::SymMatrix;
use hhchain::sampler::{random_spd, RandomStream};

fn main() -> hhchain::Result<()> {
    let opts = ChainOptions::default();
    let c = dragomir_operator_chain(DragomirFn::Square, &SymMatrix::from_diag(&[0.0]), &SymMatrix::from_diag(&[1.0]), &opts)?;
    let scalars: Vec<f64> = c.terms.iter().map(|t| t[(0, 0)]).collect();
    println!("1x1, f = t^2, A = 0, B = 1: {scalars:?}");

    let mut r = RandomStream::new(17);
    let a = random_spd(&mut r, 3, 0.1, 10.0)?;
    let b = random_spd(&mut r, 3, 0.1, 10.0)?;
    for f in [DragomirFn::Square, DragomirFn::Inverse] {
        let c = dragomir_operator_chain(f, &a, &b, &opts)?;
        println!("{f:?}: pass={} smallest gap {:.3e}", c.pass, c.min_gap());
        for cmp in &c.comparisons {
            println!("  {:?}  {} <= {}", cmp.ordering, cmp.lhs, cmp.rhs);
        }
    }
    Ok(())
}
