//! The Gamma-function inequality q^{d/2q} (Gamma(qa)/Gamma(qs))^{1/q} <=
//! Gamma(a)/Gamma(s) scanned along the tight line d = 2q(s-a), together
//! with the auxiliary functions that prove it: H_q increasing in s,
//! A_s(q) >= 0 with A_s(1) = 0, and psi'(x) > 1/x.
//!
//! Run: cargo run --release --example gamma_inequality

use quadnet::bessel_gamma::{a_s, gamma_ineq_check, hq, GammaIneqPoint};
use quadnet::numerics::trigamma;

fn main() -> quadnet::Result<()> {
    println!("slack = rhs - lhs along d = 2q(s-a):");
    println!("{:>6} {:>8} {:>5} {:>8} {:>14} {:>14} {:>12}", "s", "a", "q", "d", "lhs", "rhs", "slack");
    let mut min_slack = f64::INFINITY;
    for s in [0.5, 1.0, 2.0, 5.0, 20.0] {
        for frac in [1, 5, 9] {
            let a = s * frac as f64 / 10.0;
            for q in [1.0, 2.0, 8.0] {
                let d = 2.0 * q * (s - a);
                let c = gamma_ineq_check(&GammaIneqPoint::new(a, s, q, d)?)?;
                if q > 1.0 {
                    min_slack = min_slack.min(c.slack);
                }
                println!(
                    "{s:>6} {a:>8.3} {q:>5} {d:>8.3} {:>14.6e} {:>14.6e} {:>12.4e}",
                    c.lhs, c.rhs, c.slack
                );
            }
        }
    }
    println!("\nminimum slack over q > 1 rows: {min_slack:.3e} (never negative)");

    println!("\nH_q(s) increases in s for q = 2:");
    for s in [0.5, 1.0, 2.0, 4.0] {
        println!("  H_2({s}) = {:+.6}", hq(s, 2.0)?);
    }

    println!("\nA_s(q) = psi(qs) - psi(s) - ln q, zero at q = 1:");
    for q in [1.0, 1.5, 2.0, 4.0] {
        println!("  A_1({q}) = {:.6}", a_s(q, 1.0)?);
    }

    println!("\npsi'(x) - 1/x stays positive (drives the monotonicity):");
    for x in [1e-3, 0.1, 1.0, 10.0, 1e3] {
        println!("  x = {x:>7}: psi'(x) - 1/x = {:.6e}", trigamma(x)? - 1.0 / x);
    }
    Ok(())
}
