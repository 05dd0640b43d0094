//! The Bessel-potential transform as an integral combination of normalized
//! Gaussians: checks the pointwise identity
//! (1 + ||s||^2)^{-r/2} = integral_0^inf w_r(t) gamma_t^o(s) dt
//! across dimensions and exponents, by adaptive quadrature.
//!
//! Run: cargo run --release --example bessel_gaussian

use quadnet::bessel_gamma::{bessel_hat_radial, bessel_rep, BesselParams};
use quadnet::numerics::QuadOptions;
use quadnet::representation::rep_eval_with;

fn main() -> quadnet::Result<()> {
    let grid = [(1, 1.0, 2.0), (1, 2.0, 1.0), (1, 2.0, 1.5), (2, 2.0, 2.5), (3, 2.0, 2.0)];
    let svals = [0.0, 0.5, 1.0, 2.0, 4.0];
    let opts = QuadOptions { rel_tol: 1e-9, abs_tol: 1e-14, ..Default::default() };

    println!("{:>3} {:>4} {:>4} {:>5} {:>22} {:>22} {:>10}", "d", "q", "r", "s", "closed", "quadrature", "residual");
    let mut worst = 0.0f64;
    for (d, q, r) in grid {
        let p = BesselParams::new(d, q, r)?;
        let rep = bessel_rep(&p)?;
        for s in svals {
            let mut x = vec![0.0; d];
            x[0] = s;
            let numeric = rep_eval_with(&rep, &x, &opts)?;
            let closed = bessel_hat_radial(&p, s);
            let residual = (numeric - closed).abs() / closed;
            worst = worst.max(residual);
            println!("{d:>3} {q:>4} {r:>4} {s:>5} {closed:>22.16} {numeric:>22.16} {residual:>10.2e}");
        }
    }
    println!("\nworst residual: {worst:.2e}");
    Ok(())
}
