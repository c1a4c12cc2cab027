//! Trace chains for a commuting positive pair.
//!
//! `cargo run --example trace_chains`

use hhchain::chains::{trace_chain, ChainOptions, TraceVariant};
use hhchain::linalg::CommutingPair;

fn main() -> hhchain::Result<()> {
    let opts = ChainOptions::default();
    for (a, b) in [(vec![1.0, 2.0], vec![3.0, 1.0]), (vec![1.0, 1.0], vec![1.0, 1.0])] {
        let p = CommutingPair::diagonal(a.clone(), b.clone())?;
        for v in [TraceVariant::Sqrt, TraceVariant::Squared] {
            let c = trace_chain(v, &p, &opts)?;
            println!("a={a:?} b={b:?} {}: {:?}", c.theorem_id, c.term_values);
        }
    }
    Ok(())
}
