//! `|||AᵛXB^{1-ν}||| ≤ |||AX|||^ν |||XB|||^{1-ν}` for positive and non-normal inputs.
//!
//! `cargo run --example kittaneh`

use hhchain::chains::{kittaneh_check, kittaneh_nonnormal_check, ChainOptions};
use hhchain::norms::NormSpec;
use hhchain::sampler::{random_general, random_nonnormal, random_spd, RandomStream};

fn main() -> hhchain::Result<()> {
    let opts = ChainOptions::default();
    let mut r = RandomStream::new(99);
    let a = random_spd(&mut r, 3, 0.1, 10.0)?;
    let b = random_spd(&mut r, 3, 0.1, 10.0)?;
    let x = random_general(&mut r, 3, 3, 1.0);
    for nu in [0.0, 0.3, 0.5, 1.0] {
        let e = &kittaneh_check(&a, &b, &x, nu, NormSpec::Schatten(2.0), &opts)?.entries[0];
        println!("nu = {nu:<3}  {:.10} <= {:.10}  margin {:.3e}", e.lhs, e.rhs, e.margin);
    }

    let mut violations = 0;
    for _ in 0..200 {
        let sa = random_nonnormal(&mut r, 3, 0.1, 10.0, 10.0)?;
        let sb = random_nonnormal(&mut r, 3, 0.1, 10.0, 10.0)?;
        let x = random_general(&mut r, 3, 3, 1.0);
        violations += usize::from(!kittaneh_nonnormal_check(&sa, &sb, &x, 0.3, NormSpec::Schatten(2.0), &opts)?.pass);
    }
    println!("non-normal A, B with positive spectra: {violations}/200 violations");
    Ok(())
}
