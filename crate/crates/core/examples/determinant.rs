//! Log-concavity of the determinant, AM-GM in the Loewner order, and norm powers.
//!
//! `cargo run --example determinant`

use hhchain::chains::{am_gm_loewner_check, det_ag_concavity_check, det_ag_indefinite_check, norm_power_check, ChainOptions};
use hhchain::linalg::SymMatrix;
use hhchain::sampler::{random_spd, random_symmetric_indefinite, RandomStream};

fn main() -> hhchain::Result<()> {
    let opts = ChainOptions::default();
    let a = SymMatrix::from_diag(&[1.0, 4.0]);
    let b = SymMatrix::from_diag(&[4.0, 1.0]);
    let e = &det_ag_concavity_check(&a, &b, 0.5, &opts)?.entries[0];
    println!("det(A)^(1/2) det(B)^(1/2) = {} <= det((A+B)/2) = {}", e.lhs, e.rhs);

    let mut r = RandomStream::new(21);
    let (x, y) = (random_spd(&mut r, 3, 0.1, 10.0)?, random_spd(&mut r, 3, 0.1, 10.0)?);
    println!("am_gm_loewner pass={}", am_gm_loewner_check(&x, &y, 0.3, &opts)?.pass);
    println!("norm_power pass={}", norm_power_check(&x, &opts)?.pass);

    // without positivity the determinant inequality breaks down
    let mut broken = 0;
    for _ in 0..100 {
        let u = random_symmetric_indefinite(&mut r, 3, 0.1, 10.0)?;
        let v = random_symmetric_indefinite(&mut r, 3, 0.1, 10.0)?;
        broken += usize::from(!det_ag_indefinite_check(&u, &v, 0.5, &opts)?.pass);
    }
    println!("indefinite inputs: {broken}/100 violations");
    Ok(())
}
