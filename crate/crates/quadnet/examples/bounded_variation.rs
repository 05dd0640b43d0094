//! The bounded-variation toolkit on an interval: total variation, the
//! Jordan decomposition into nondecreasing parts, staircase approximants
//! with steps below 1/n, and the 2V + |f(a)| bound certified against the
//! interval-indicator dictionary by l1-minimization.
//!
//! Run: cargo run --release --example bounded_variation

use quadnet::variation_bv::{
    bv_variation_bound, jordan_decomposition, staircase_approx, total_variation,
    variation_norm_finite, BVFunction, FiniteDictionary,
};

fn samples(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let x = a + (b - a) * i as f64 / (n - 1) as f64;
            (x, f(x))
        })
        .collect()
}

fn main() -> quadnet::Result<()> {
    // total variation and Jordan parts of sin on [0, 2pi]
    let sine = samples(f64::sin, 0.0, 2.0 * std::f64::consts::PI, 10_000);
    let v = total_variation(&sine)?;
    let bv = BVFunction::from_samples(sine)?;
    let (f1, f2) = jordan_decomposition(&bv);
    println!("sin on [0, 2pi]: V = {v:.6} (4 up to grid resolution)");
    println!("  jordan parts grow to f1(b) = {:.6}, f2(b) = {:.6}; f1 - f2 = sin", f1.last().unwrap(), f2.last().unwrap());

    // staircase construction for g(x) = x, n = 4
    let ramp = samples(|x| x, 0.0, 1.0, 10_001);
    let st = staircase_approx(&ramp, 4)?;
    println!("\nstaircase of g(x) = x with n = 4:");
    println!("  breakpoints {:?}", st.breakpoints);
    println!("  levels      {:?}", st.levels);
    let gap = ramp.iter().map(|&(x, y)| (y - st.eval(x)).abs()).fold(0.0f64, f64::max);
    println!("  sup gap {gap:.4} <= 1/n = 0.25");

    // the variation bound against the LP over interval indicators
    println!("\nLP objective vs 2V + |f(a)| over the 65-point indicator dictionary:");
    let dict = FiniteDictionary::interval_indicators(0.0, 1.0, 65)?;
    for (name, f) in [
        ("x", dict.grid.iter().map(|&x| x).collect::<Vec<_>>()),
        ("x^2", dict.grid.iter().map(|&x| x * x).collect()),
        ("step at 1/3", dict.grid.iter().map(|&x| if x >= 1.0 / 3.0 { 1.0 } else { 0.0 }).collect()),
    ] {
        let bvf = BVFunction::from_samples(dict.grid.iter().zip(&f).map(|(&x, &y)| (x, y)).collect())?;
        let sol = variation_norm_finite(&f, &dict, 0.0)?;
        println!(
            "  f = {name:<12} V = {:.4}  LP = {:.6}  bound = {:.4}",
            bvf.v,
            sol.objective,
            bv_variation_bound(&bvf)
        );
        assert!(sol.objective <= bv_variation_bound(&bvf) + 1e-6);
    }
    Ok(())
}
