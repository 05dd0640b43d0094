//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured numbers. Tolerances and runtime limits are pinned
//! here, not configurable.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quadnet::bessel_gamma::{
    a_s, bessel_hat_lq_closed, bessel_hat_lq_numeric, bessel_rep, bessel_variation_bound,
    gamma_ineq_check, verify_prop61, BesselParams, GammaIneqPoint,
};
use quadnet::dictionaries::gaussian_norm_closed;
use quadnet::numerics::{lq_norm_with, trigamma, DomainSpec, NdIntegrand};
use quadnet::representation::{
    approx_error_with, bound_report, constant_unit_rep, counterexample_pointwise, divergence_probe,
    rep_norm_est_with, synthesize_network, tanh_heaviside_rep, weight_l1, PartitionScheme,
};
use quadnet::variation_bv::{
    bv_variation_bound, staircase_approx, variation_norm_finite, BVFunction, FiniteDictionary,
};

const BESSEL_GRID: [(usize, f64, f64); 5] =
    [(1, 1.0, 2.0), (1, 2.0, 1.0), (1, 2.0, 1.5), (2, 2.0, 2.5), (3, 2.0, 2.0)];
const SVALS: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 4.0];

fn uniform_samples(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let x = a + (b - a) * i as f64 / (n - 1) as f64;
            (x, f(x))
        })
        .collect()
}

#[test]
fn acceptance_01_pointwise_identity_on_the_bessel_grid() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (d, q, r) in BESSEL_GRID {
        let p = BesselParams::new(d, q, r).unwrap();
        for s in SVALS {
            let residual = verify_prop61(&p, s, 1e-9).unwrap();
            assert!(
                residual <= 1e-6,
                "(d,q,r,s) = ({d},{q},{r},{s}): residual {residual:.3e} above 1e-6"
            );
            worst = worst.max(residual);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "runtime {elapsed:?} exceeds 10 s");
    println!("ACCEPTANCE 1 PASS: pointwise identity, worst residual {worst:.2e} over 25 rows in {elapsed:?}");
}

#[test]
fn acceptance_02_gaussian_norm_closed_form_vs_quadrature() {
    let mut worst = 0.0f64;
    for d in [1usize, 2] {
        for q in [1.0f64, 2.0, 3.0] {
            for b in [0.1f64, 1.0, 10.0] {
                let closed = gaussian_norm_closed(b, q, d).unwrap();
                let dom = DomainSpec::all_space(d).unwrap();
                let numeric = if d == 1 {
                    let f = move |x: &[f64]| (-b * x[0] * x[0]).exp();
                    lq_norm_with(NdIntegrand::General(&f), &dom, q, 1e-11).unwrap()
                } else {
                    let g = move |rho: f64| (-b * rho * rho).exp();
                    lq_norm_with(NdIntegrand::Radial(&g), &dom, q, 1e-11).unwrap()
                };
                let rel = (numeric - closed).abs() / closed;
                assert!(
                    rel <= 1e-8,
                    "(b,q,d) = ({b},{q},{d}): {numeric} vs {closed}, rel {rel:.3e}"
                );
                worst = worst.max(rel);
            }
        }
    }
    println!("ACCEPTANCE 2 PASS: Gaussian L^q norms match the closed form, worst rel {worst:.2e} over 18 rows");
}

#[test]
fn acceptance_03_bessel_norm_closed_form_vs_radial_quadrature() {
    let mut worst = 0.0f64;
    for (d, q, r) in BESSEL_GRID {
        let p = BesselParams::new(d, q, r).unwrap();
        let closed = bessel_hat_lq_closed(&p).unwrap();
        let numeric = bessel_hat_lq_numeric(&p, 1e-10).unwrap();
        let rel = (numeric - closed).abs() / closed;
        assert!(rel <= 1e-6, "(d,q,r) = ({d},{q},{r}): rel {rel:.3e}");
        worst = worst.max(rel);
    }
    // spot anchor: (1,2,1) -> sqrt(pi), with the oracle integral of
    // (1+s^2)^{-1} equal to pi
    let anchor = bessel_hat_lq_closed(&BesselParams::new(1, 2.0, 1.0).unwrap()).unwrap();
    assert!((anchor - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    println!("ACCEPTANCE 3 PASS: Bessel L^q norms match, worst rel {worst:.2e}; anchor sqrt(pi) hit");
}

#[test]
fn acceptance_04_weight_mass_vs_closed_variation_bound() {
    let mut worst = 0.0f64;
    for (d, q, r) in BESSEL_GRID {
        let p = BesselParams::new(d, q, r).unwrap();
        let closed = bessel_variation_bound(&p).unwrap();
        let rep = bessel_rep(&p).unwrap();
        let quad = weight_l1(&rep).unwrap();
        let rel = (quad - closed).abs() / closed;
        assert!(rel <= 1e-6, "(d,q,r) = ({d},{q},{r}): rel {rel:.3e}");
        worst = worst.max(rel);
    }
    println!("ACCEPTANCE 4 PASS: ||w_r||_1 quadrature matches the closed bound, worst rel {worst:.2e}");
}

#[test]
fn acceptance_05_gamma_inequality_scan() {
    let start = Instant::now();
    let mut min_slack = f64::INFINITY;
    let mut rows = 0usize;
    for s in [0.5f64, 1.0, 2.0, 5.0, 20.0] {
        for frac in 1..=9 {
            let a = s * frac as f64 / 10.0;
            for q in [1.0f64, 1.5, 2.0, 4.0, 8.0] {
                let d = 2.0 * q * (s - a);
                let c = gamma_ineq_check(&GammaIneqPoint::new(a, s, q, d).unwrap()).unwrap();
                assert!(c.slack >= -1e-12, "(s,a,q) = ({s},{a},{q}): slack {}", c.slack);
                if q == 1.0 {
                    assert!(c.slack.abs() <= 1e-12, "q=1 slack {} not zero", c.slack);
                } else {
                    min_slack = min_slack.min(c.slack);
                }
                rows += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "runtime {elapsed:?} exceeds 5 s");
    println!("ACCEPTANCE 5 PASS: {rows} rows, min slack over q > 1 is {min_slack:.3e}, q = 1 exact, in {elapsed:?}");
}

#[test]
fn acceptance_06_digamma_auxiliaries() {
    // psi'(x) > 1/x on a 200-point log grid
    let n = 200;
    for i in 0..n {
        let x = 10f64.powf(-3.0 + 6.0 * i as f64 / (n - 1) as f64);
        let margin = trigamma(x).unwrap() - 1.0 / x;
        assert!(margin > 0.0, "psi'({x}) - 1/x = {margin} not positive");
    }
    // A_s(q) >= 0 on q in [1, 10], zero at q = 1
    for s in [0.5f64, 1.0, 3.0] {
        assert!(a_s(1.0, s).unwrap().abs() <= 1e-12);
        let mut q = 1.0;
        while q <= 10.0 {
            assert!(a_s(q, s).unwrap() >= 0.0, "A_{s}({q}) negative");
            q += 0.05;
        }
    }
    println!("ACCEPTANCE 6 PASS: psi' - 1/x positive on 200 log points; A_s >= 0 with A_s(1) = 0");
}

#[test]
fn acceptance_07_bound_certificates_for_bundled_representations() {
    let mut reps = Vec::new();
    for (d, q, r) in BESSEL_GRID {
        reps.push(bessel_rep(&BesselParams::new(d, q, r).unwrap()).unwrap());
    }
    reps.push(tanh_heaviside_rep().unwrap());
    reps.push(constant_unit_rep().unwrap());

    for rep in &reps {
        let est = rep_norm_est_with(rep, 1e-7).unwrap();
        let b = bound_report(rep, est).unwrap();
        assert!(
            b.slack_th2 >= -1e-9,
            "{}: slack_th2 = {} below -1e-9",
            b.rep_name,
            b.slack_th2
        );
        assert!(b.slack_thm >= -1e-9, "{}: slack_thm = {}", b.rep_name, b.slack_thm);
        let w1 = b.w_l1;
        for n in [1usize, 16, 64] {
            let net = synthesize_network(rep, n, PartitionScheme::MidpointEqualMeasure).unwrap();
            assert!(
                net.coeff_l1() <= w1 + 1e-6,
                "{} n={n}: sum |c| = {} above ||w||_1 = {w1}",
                b.rep_name,
                net.coeff_l1()
            );
        }
    }
    println!("ACCEPTANCE 7 PASS: slack_th2 >= -1e-9 and coefficient budgets hold on {} representations", reps.len());
}

#[test]
fn acceptance_08_network_convergence() {
    let start = Instant::now();
    let p = BesselParams::new(1, 2.0, 1.5).unwrap();
    let rep = bessel_rep(&p).unwrap();
    let mut errors = Vec::new();
    let mut n = 16usize;
    while n <= 4096 {
        let net = synthesize_network(&rep, n, PartitionScheme::MidpointEqualMeasure).unwrap();
        let err = approx_error_with(&rep, &net, p.q, &rep.target.domain, 1e-4).unwrap();
        errors.push((n, err));
        n *= 2;
    }
    for w in errors.windows(2) {
        assert!(
            w[1].1 <= w[0].1 * 1.05,
            "error rose beyond the 5% band: {:?} -> {:?}",
            w[0],
            w[1]
        );
    }
    let first = errors.first().unwrap().1;
    let last = errors.last().unwrap().1;
    assert!(last <= first / 10.0, "error(4096) = {last:.3e} not below error(16)/10 = {:.3e}", first / 10.0);
    // spot check from the examples: n = 16 vs n = 256 ratio at least 4
    let e256 = errors.iter().find(|(n, _)| *n == 256).unwrap().1;
    assert!(first / e256 >= 4.0);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "runtime {elapsed:?} exceeds 60 s");
    println!(
        "ACCEPTANCE 8 PASS: L2 error {first:.3e} -> {last:.3e} over n = 16..4096 in {elapsed:?}"
    );
}

#[test]
fn acceptance_09_variation_lp() {
    // orthonormal columns, 20 seeded random coefficient vectors
    let dim = 24usize;
    let grid: Vec<f64> = (0..dim).map(|i| i as f64).collect();
    let units: Vec<Vec<f64>> =
        (0..dim).map(|j| (0..dim).map(|i| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let dict = FiniteDictionary::new(grid, units, 2.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for trial in 0..20 {
        let coeffs: Vec<f64> = (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let expected: f64 = coeffs.iter().map(|v| v.abs()).sum();
        let sol = variation_norm_finite(&coeffs, &dict, 0.0).unwrap();
        assert!(
            (sol.objective - expected).abs() <= 1e-9,
            "trial {trial}: {} vs {expected}",
            sol.objective
        );
    }

    // unit membership costs exactly 1
    let idict = FiniteDictionary::interval_indicators(0.0, 1.0, 65).unwrap();
    let unit = idict.units[9].clone();
    let sol = variation_norm_finite(&unit, &idict, 0.0).unwrap();
    assert!((sol.objective - 1.0).abs() <= 1e-9);

    // BV suite: discrete sup <= LP objective <= 2V + |f(a)| + 1e-6
    let mut cases: Vec<(&str, Vec<f64>)> = vec![
        ("x", idict.grid.iter().map(|&x| x).collect()),
        ("sin", idict.grid.iter().map(|&x| (2.0 * std::f64::consts::PI * x).sin()).collect()),
    ];
    let ramp = uniform_samples(|x| x, 0.0, 1.0, 10_001);
    for n in [4usize, 8] {
        let st = staircase_approx(&ramp, n).unwrap();
        cases.push(("staircase", idict.grid.iter().map(|&x| st.eval(x)).collect()));
    }
    for (name, f) in cases {
        let bv = BVFunction::from_samples(idict.grid.iter().zip(&f).map(|(&x, &y)| (x, y)).collect())
            .unwrap();
        let sol = variation_norm_finite(&f, &idict, 0.0).unwrap();
        let sup = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(sol.objective >= sup - 1e-9, "{name}: objective below the sup norm");
        assert!(
            sol.objective <= bv_variation_bound(&bv) + 1e-6,
            "{name}: objective {} above 2V + |f(a)| = {}",
            sol.objective,
            bv_variation_bound(&bv)
        );
    }
    println!("ACCEPTANCE 9 PASS: orthonormal identity to 1e-9 on 20 seeded vectors; unit cost 1; BV chain holds");
}

#[test]
fn acceptance_10_staircase_construction() {
    let n_samples = 10_001; // 10^4 sample steps on [0, 1]
    for (name, g) in [
        ("x", uniform_samples(|x| x, 0.0, 1.0, n_samples)),
        ("x^2", uniform_samples(|x| x * x, 0.0, 1.0, n_samples)),
    ] {
        for n in [4usize, 16, 64] {
            let st = staircase_approx(&g, n).unwrap();
            let bound = 1.0 / n as f64;
            let gap = g.iter().map(|&(x, y)| (y - st.eval(x)).abs()).fold(0.0f64, f64::max);
            assert!(gap <= bound + 1e-12, "g = {name}, n = {n}: gap {gap} above {bound}");
        }
    }
    let st = staircase_approx(&uniform_samples(|x| x, 0.0, 1.0, n_samples), 4).unwrap();
    assert_eq!(st.breakpoints, vec![0.0, 0.25, 0.5, 0.75, 1.0], "breakpoints must be exact");
    println!("ACCEPTANCE 10 PASS: staircase gaps below 1/n; n = 4 ramp breakpoints exact");
}

#[test]
fn acceptance_11_counterexample_tables() {
    for x in [0.1f64, 0.5, 0.9] {
        let v = counterexample_pointwise(x).unwrap();
        let truth = 1.0 / (1.0 - x);
        assert!(
            (v - truth).abs() <= 1e-10 * truth,
            "pointwise at {x}: {v} vs {truth}"
        );
    }
    let rows = divergence_probe(&[1e-3, 1e-10, 1e-50, 1e-150, 1e-300]).unwrap();
    for w in rows.windows(2) {
        assert!(w[1].truncated > w[0].truncated, "truncated integrals must strictly increase");
    }
    for r in &rows {
        assert!(
            r.truncated >= r.lower_bound - 1e-3,
            "eps = {:e}: {} below the double-log bound {}",
            r.epsilon,
            r.truncated,
            r.lower_bound
        );
    }
    println!(
        "ACCEPTANCE 11 PASS: pointwise integrals to 1e-10; truncated integrals climb {:.3} -> {:.3} past the bound",
        rows.first().unwrap().truncated,
        rows.last().unwrap().truncated
    );
}

#[test]
fn acceptance_12_norm_non_equivalence() {
    for n in [2usize, 4, 8] {
        let points = 4 * n * n + 1;
        let dict = FiniteDictionary::interval_indicators(0.0, 1.0, points).unwrap();
        let mut f = vec![0.0; points];
        for k in 0..n * n {
            f[4 * k] = 1.0 / n as f64;
            f[4 * k + 1] = 1.0 / n as f64;
        }
        let sup = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!((sup - 1.0 / n as f64).abs() < 1e-15, "sup norm is 1/n by construction");
        let sol = variation_norm_finite(&f, &dict, 0.0).unwrap();
        assert!(
            sol.objective >= 0.5 * n as f64,
            "n = {n}: objective {} below 0.5 n",
            sol.objective
        );
    }
    println!("ACCEPTANCE 12 PASS: sup norm 1/n against LP objective >= 0.5 n for n = 2, 4, 8");
}
