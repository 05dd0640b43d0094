//! Why essential boundedness matters: h(y)(x) = y^{-x} on (0,1) x (0,1)
//! has a finite pointwise integral 1/(1-x) everywhere, yet the norm
//! integral of y -> ||h(y)||_{L^1} diverges, so no L^1-valued integral of
//! h exists. The truncated integrals grow past every bound, tracked
//! against the double-log law.
//!
//! Run: cargo run --release --example divergence_probe

use quadnet::representation::{
    counterexample_inner_norm, counterexample_pointwise, counterexample_rep, divergence_probe,
    rep_eval,
};

fn main() -> quadnet::Result<()> {
    println!("pointwise integrals match 1/(1-x):");
    for x in [0.1, 0.5, 0.9] {
        let v = counterexample_pointwise(x)?;
        println!("  x = {x}: quadrature {v:.12} vs closed {:.12}", 1.0 / (1.0 - x));
    }

    let rep = counterexample_rep()?;
    println!("  (through the representation machinery at x = 0.5: {:.12})", rep_eval(&rep, &[0.5])?);

    println!("\ninner norms ||h(y)||_1 = (1 - 1/y)/ln y blow up as y -> 0:");
    for y in [0.5, 0.1, 1e-3, 1e-6] {
        println!("  y = {y:>6}: {:.6}", counterexample_inner_norm(y)?);
    }

    println!("\ntruncated norm integrals over (eps, 1) vs the lower bound (1/2) ln(ln(1/eps)/ln 2):");
    let rows = divergence_probe(&[1e-3, 1e-10, 1e-50, 1e-150, 1e-300])?;
    println!("{:>9} {:>14} {:>14}", "eps", "integral", "lower bound");
    for r in rows {
        println!("{:>9.0e} {:>14.6} {:>14.6}", r.epsilon, r.truncated, r.lower_bound);
    }
    println!("\nthe table increases without bound: h is not norm-integrable");
    Ok(())
}
