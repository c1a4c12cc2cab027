//! Scalar Hermite-Hadamard chains, the mean chain and convexity guards.
//!
//! `cargo run --example scalar_chains`

use hhchain::chains::{scalar_hh_chain, scalar_means_chain, ChainOptions, ChainReport, ScalarKind};
use hhchain::functions::{is_ag_convex, is_gg_convex, FunctionSpec};

fn show(c: &ChainReport) {
    println!("{} pass={}", c.theorem_id, c.pass);
    for (name, v) in c.term_names.iter().zip(&c.term_values) {
        println!("  {v:>22.15}  {name}");
    }
}

fn main() -> hhchain::Result<()> {
    let opts = ChainOptions::default();
    let f = FunctionSpec::exp(1.0)?;
    show(&scalar_hh_chain(ScalarKind::Ag, &f, -1.0, 2.0, &opts)?);
    show(&scalar_hh_chain(ScalarKind::Gg, &f, 0.5, 4.0, &opts)?);
    show(&scalar_means_chain(1.0, std::f64::consts::E.powi(2), &opts)?);

    let sq = FunctionSpec::power(2.0)?;
    println!("power:2 AG-convex on [1,2]: {}", is_ag_convex(&sq, 1.0, 2.0, 33, 1e-12)?.holds);
    println!("power:2 GG-convex on [1,2]: {}", is_gg_convex(&sq, 1.0, 2.0, 33, 1e-12)?.holds);
    Ok(())
}
