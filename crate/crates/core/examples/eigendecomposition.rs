//! Jacobi eigendecomposition and the spectral calculus built on it.
//!
//! `cargo run --example eigendecomposition`

use hhchain::functions::FunctionSpec;
use hhchain::linalg::{apply_function, det_pd, eigh, pd_power, SymMatrix, DEFAULT_EIGH_TOL};

fn main() -> hhchain::Result<()> {
    let s = SymMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]])?;
    let d = eigh(&s, DEFAULT_EIGH_TOL)?;
    println!("eigenvalues   {:?}", d.lambda);
    println!("eigenvectors  {:?}", d.q.as_slice());

    let sq = apply_function(&s, &FunctionSpec::power(2.0)?)?;
    println!("S^2           {:?}", sq.as_slice());
    let root = pd_power(&s, 0.5)?;
    println!("S^(1/2)       {:?}", root.as_slice());
    println!("det S         {}", det_pd(&s)?);
    Ok(())
}
