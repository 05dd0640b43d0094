//! Finite networks Sum c_i Phi(y_i) synthesized from an integral
//! representation by equal-mass partitioning of the parameter space:
//! the coefficient mass never exceeds ||w||_1, and the ambient-norm error
//! falls as the partition refines.
//!
//! Run: cargo run --release --example quadrature_networks

use quadnet::bessel_gamma::{bessel_rep, BesselParams};
use quadnet::representation::{
    approx_error_with, network_eval, rep_eval, synthesize_network, tanh_heaviside_rep, weight_l1,
    PartitionScheme,
};

fn main() -> quadnet::Result<()> {
    let p = BesselParams::new(1, 2.0, 1.5)?;
    let rep = bessel_rep(&p)?;
    let w1 = weight_l1(&rep)?;
    println!("representation: {}   ||w||_1 = {w1:.10}", rep.name);
    println!("{:>6} {:>18} {:>14} {:>8}", "n", "sum |c_i|", "L2 error", "ratio");
    let mut prev: Option<f64> = None;
    for n in [16usize, 64, 256, 1024] {
        let net = synthesize_network(&rep, n, PartitionScheme::MidpointEqualMeasure)?;
        let err = approx_error_with(&rep, &net, p.q, &rep.target.domain, 1e-4)?;
        let ratio = prev.map(|e| e / err).unwrap_or(f64::NAN);
        println!("{n:>6} {:>18.12} {err:>14.6e} {ratio:>8.2}", net.coeff_l1());
        assert!(net.coeff_l1() <= w1 + 1e-6, "coefficient budget violated");
        prev = Some(err);
    }

    // the half-line study: 64 equal-mass cells of sech^2 telescope to mass 2
    let tanh_rep = tanh_heaviside_rep()?;
    let net = synthesize_network(&tanh_rep, 64, PartitionScheme::MidpointEqualMeasure)?;
    println!("\n{}: sum |c_i| = {:.9} (total mass 2)", net.provenance, net.coeff_l1());
    for x in [-2.0, 0.0, 1.0] {
        let target = rep_eval(&tanh_rep, &[x])?;
        let got = network_eval(&net, &[x]);
        println!("  x = {x:>5}: network {got:.6} vs 1 + tanh(x) = {target:.6}");
    }
    Ok(())
}
