//! Singular values, Schatten and Ky Fan norms, trace bounds.
//!
//! `cargo run --example norms`

use hhchain::linalg::Matrix;
use hhchain::norms::{norm, singular_values, trace_property_check, NormSpec};

fn main() -> hhchain::Result<()> {
    let m = Matrix::from_rows(&[[3.0, 4.0], [0.0, 0.0]])?;
    println!("singular values {:?}", singular_values(&m));
    let x = Matrix::from_rows(&[[1.0, 2.0, 0.0], [0.0, -1.0, 3.0], [2.0, 0.0, 1.0]])?;
    for spec in [
        NormSpec::Schatten(1.0),
        NormSpec::Schatten(2.0),
        NormSpec::Schatten(3.0),
        NormSpec::OperatorNorm,
        NormSpec::KyFan(2),
    ] {
        println!("{spec:<12} {:.12}", norm(&x, spec)?);
    }
    let t = Matrix::from_rows(&[[0.5, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 2.0]])?;
    let rep = trace_property_check(&x, &t)?;
    println!("Tr(XT) = {}  Tr(TX) = {}  bound residual {}", rep.trace_at, rep.trace_ta, rep.bound_residual);
    Ok(())
}
