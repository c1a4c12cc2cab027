//! Comparing symmetric matrices in the Loewner order.
//!
//! `cargo run --example loewner_order`

use hhchain::linalg::{loewner_compare, SymMatrix};

fn main() -> hhchain::Result<()> {
    let pairs = [
        ("diag(1,2) vs diag(2,3)", SymMatrix::from_diag(&[1.0, 2.0]), SymMatrix::from_diag(&[2.0, 3.0])),
        ("diag(0,2) vs diag(1,1)", SymMatrix::from_diag(&[0.0, 2.0]), SymMatrix::from_diag(&[1.0, 1.0])),
        ("I vs I", SymMatrix::identity(2), SymMatrix::identity(2)),
    ];
    for (label, a, b) in &pairs {
        let v = loewner_compare(a, b, 1e-10)?;
        println!("{label:<24} {:?}  (gap {:+.3e}, scale {:.3e})", v.ordering, v.min_gap, v.scale);
    }
    Ok(())
}
