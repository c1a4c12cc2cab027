//! Gauss-Legendre rules, the doubling check and adaptive panels.
//!
//! `cargo run --example quadrature`

use hhchain::quadrature::{gl_rule, integrate_adaptive, integrate_scalar_checked, QuadScheme};

fn main() -> hhchain::Result<()> {
    let rule = gl_rule(2)?;
    println!("n = 2 nodes {:?} weights {:?}", rule.nodes, rule.weights);

    let x4 = integrate_scalar_checked(|x| Ok(x.powi(4)), -1.0, 1.0, 3)?;
    println!("int x^4 on [-1,1] with n = 3: {} (reliable {})", x4.value, x4.reliable);

    // a kink at 1/3 defeats a single rule but not the panel bisection
    let kink = |x: f64| Ok((x - 1.0 / 3.0).abs());
    let plain = integrate_scalar_checked(kink, 0.0, 1.0, 16)?;
    let adaptive = integrate_adaptive(kink, 0.0, 1.0, QuadScheme::GaussLegendre(16))?;
    println!("|x - 1/3| on [0,1]: exact {:.15}", 5.0 / 18.0);
    println!("  single rule  {:.15} reliable {}", plain.value, plain.reliable);
    println!("  adaptive     {:.15} reliable {}", adaptive.value, adaptive.reliable);
    Ok(())
}
