//! Loewner-order and norm chains for a commuting positive pair.
//!
//! `cargo run --example commuting_chains`

use hhchain::chains::{
    operator_ag_midpoint_order_chain, operator_gg_hh_order_chain, operator_norm_gg_chain, ChainOptions, GeneralPair,
};
use hhchain::functions::FunctionSpec;
use hhchain::linalg::CommutingPair;
use hhchain::norms::NormSpec;
use hhchain::sampler::{random_spd, RandomStream};

fn main() -> hhchain::Result<()> {
    let opts = ChainOptions::default();
    let exp = FunctionSpec::exp(1.0)?;
    let p = CommutingPair::diagonal(vec![1.0, 2.0], vec![2.0, 1.0])?;

    let gg = operator_gg_hh_order_chain(&exp, &p, &opts)?;
    println!("op_gg_hh middle term diagonal {:?} (1/ln 2 = {})", gg.terms[1].diagonal(), 1.0 / 2f64.ln());

    let ag = operator_ag_midpoint_order_chain(&exp, &p, &opts)?;
    println!("op_ag_midpoint pass={} gaps {:?}", ag.pass, ag.comparisons.iter().map(|c| c.min_gap).collect::<Vec<_>>());

    let q = CommutingPair::diagonal(vec![1.0, 4.0], vec![4.0, 1.0])?;
    let n = operator_norm_gg_chain(&exp, &q, NormSpec::OperatorNorm, &opts)?;
    println!("{} terms {:?}", n.theorem_id, n.term_values);

    // the same chain on a pair that does not commute
    let mut r = RandomStream::new(8);
    let g = GeneralPair::new(random_spd(&mut r, 3, 0.1, 10.0)?, random_spd(&mut r, 3, 0.1, 10.0)?)?;
    let gg = operator_gg_hh_order_chain(&exp, &g, &opts)?;
    println!("non-commuting op_gg_hh pass={}", gg.pass);
    Ok(())
}
