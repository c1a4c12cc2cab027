//! Weighted geometric mean `A #_ν B` against the weighted arithmetic mean.
//!
//! `cargo run --example geometric_mean`

use hhchain::linalg::{loewner_compare, weighted_geometric_mean, CommutingPair, commuting_weighted_product};
use hhchain::sampler::{random_spd, RandomStream};

fn main() -> hhchain::Result<()> {
    let p = CommutingPair::diagonal(vec![1.0, 4.0], vec![4.0, 1.0])?;
    println!("A^(1/2) B^(1/2) = {:?}", commuting_weighted_product(&p, 0.5)?.as_slice());

    let mut r = RandomStream::new(3);
    let a = random_spd(&mut r, 3, 0.1, 10.0)?;
    let b = random_spd(&mut r, 3, 0.1, 10.0)?;
    for nu in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let g = weighted_geometric_mean(&a, &b, nu)?;
        let m = a.lincomb(1.0 - nu, &b, nu)?;
        let v = loewner_compare(&g, &m, 1e-10)?;
        println!("nu = {nu:<4}  A #_nu B vs (1-nu)A + nu B: {:?}", v.ordering);
    }
    Ok(())
}
