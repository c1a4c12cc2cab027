//! Seeded generators: per-trial seeds, SPD matrices, commuting pairs.
//!
//! `cargo run --example sampling`

use hhchain::linalg::{eigh, DEFAULT_EIGH_TOL};
use hhchain::sampler::{random_commuting_pair, random_nonnormal, random_spd, trial_seed, RandomStream};

fn main() -> hhchain::Result<()> {
    let seeds: Vec<u64> = (0..3).map(|k| trial_seed(12345, k)).collect();
    println!("trial seeds {seeds:?}");

    let mut r = RandomStream::new(seeds[0]);
    let a = random_spd(&mut r, 4, 0.1, 10.0)?;
    let d = eigh(&a, DEFAULT_EIGH_TOL)?;
    println!("SPD spectrum {:?}  condition {:.3}", d.lambda, d.max_eigenvalue() / d.min_eigenvalue());

    let p = random_commuting_pair(&mut r, 3, 0.1, 10.0)?;
    println!("commuting pair: a {:?} b {:?}", p.a_spectrum(), p.b_spectrum());

    let n = random_nonnormal(&mut r, 3, 0.5, 2.0, 10.0)?;
    println!("non-normal positive spectrum {:?}, asymmetry {:.3}", n.lambda, n.materialize().asymmetry());
    Ok(())
}
