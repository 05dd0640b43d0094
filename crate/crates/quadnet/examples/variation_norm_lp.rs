//! Variation norms over finite dictionaries by l1-minimization: the
//! orthonormal-columns case recovers Sum |a_i| exactly, a dictionary unit
//! costs exactly 1, and the comb functions show sup-norm and variation
//! norm pulling apart (no equivalence of norms on the span).
//!
//! Run: cargo run --release --example variation_norm_lp

use quadnet::variation_bv::{variation_norm_finite, FiniteDictionary};

fn main() -> quadnet::Result<()> {
    // orthonormal columns: the minimizer is the coefficient vector itself
    let dim = 12;
    let grid: Vec<f64> = (0..dim).map(|i| i as f64).collect();
    let units: Vec<Vec<f64>> =
        (0..dim).map(|j| (0..dim).map(|i| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let dict = FiniteDictionary::new(grid, units, 2.0)?;
    let mut f = vec![0.0; dim];
    f[0] = 3.0;
    f[4] = -2.0;
    let sol = variation_norm_finite(&f, &dict, 0.0)?;
    println!("orthonormal columns, f = 3 e_1 - 2 e_5: objective = {} (= 3 + 2)", sol.objective);

    // a unit of the interval-indicator dictionary is its own representation
    let idict = FiniteDictionary::interval_indicators(0.0, 1.0, 33)?;
    let unit = idict.units[7].clone();
    let sol = variation_norm_finite(&unit, &idict, 0.0)?;
    println!("dictionary unit:                        objective = {:.9}", sol.objective);

    // combs: sup norm 1/n against variation cost ~ 2n
    println!("\nf_n = (1/n) x indicator of n^2 disjoint intervals:");
    println!("{:>4} {:>10} {:>14} {:>14}", "n", "sup", "objective", "0.5 n");
    for n in [2usize, 4, 8] {
        let points = 4 * n * n + 1;
        let dict = FiniteDictionary::interval_indicators(0.0, 1.0, points)?;
        let mut f = vec![0.0; points];
        for k in 0..n * n {
            f[4 * k] = 1.0 / n as f64;
            f[4 * k + 1] = 1.0 / n as f64;
        }
        let sol = variation_norm_finite(&f, &dict, 0.0)?;
        println!("{n:>4} {:>10.4} {:>14.6} {:>14.1}", 1.0 / n as f64, sol.objective, 0.5 * n as f64);
        assert!(sol.objective >= 0.5 * n as f64);
    }
    println!("\nsup norm vanishes while the variation cost grows: the norms are not equivalent");
    Ok(())
}
