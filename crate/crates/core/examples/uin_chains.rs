//! The five unitarily invariant norm chains for `|||AᵗXB^{1-t}|||` and `|||AᵗXBᵗ|||`.
//!
//! `cargo run --example uin_chains`

use hhchain::chains::{uin_chain, ChainOptions, UinVariant};
use hhchain::norms::NormSpec;
use hhchain::sampler::{random_general, random_spd, RandomStream};

fn main() -> hhchain::Result<()> {
    let opts = ChainOptions::default();
    let mut r = RandomStream::new(5);
    let a = random_spd(&mut r, 4, 0.1, 10.0)?;
    let b = random_spd(&mut r, 4, 0.1, 10.0)?;
    let x = random_general(&mut r, 4, 4, 1.0);
    let variants = [
        UinVariant::Symmetric(0.3),
        UinVariant::EndLeft(0.3),
        UinVariant::EndRight(0.7),
        UinVariant::Full,
        UinVariant::Diagonal,
    ];
    for spec in [NormSpec::Schatten(2.0), NormSpec::KyFan(2)] {
        println!("norm {spec}");
        for v in variants {
            let c = uin_chain(v, &a, &b, &x, spec, &opts)?;
            let terms: Vec<String> = c.term_values.iter().map(|t| format!("{t:.6}")).collect();
            println!("  {:<14} pass={} {}", c.theorem_id, c.pass, terms.join(" <= "));
        }
    }
    Ok(())
}
