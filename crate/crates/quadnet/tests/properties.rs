//! Property tests for the invariants that hold on whole input classes
//! rather than hand-picked cases.

use proptest::prelude::*;

use quadnet::numerics::{gamma_fn, integrate_1d, Interval1D};
use quadnet::variation_bv::{
    jordan_decomposition, staircase_approx, total_variation, variation_norm_finite, BVFunction,
    FiniteDictionary,
};

fn grid_samples(values: &[f64]) -> Vec<(f64, f64)> {
    values.iter().enumerate().map(|(i, &v)| (i as f64, v)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recursion_holds_everywhere(x in 0.1f64..50.0) {
        let lhs = gamma_fn(x + 1.0).unwrap();
        let rhs = x * gamma_fn(x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    #[test]
    fn quadrature_is_linear_on_polynomials(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        // integral of a x^2 + b x over [0, 1] = a/3 + b/2
        let dom = Interval1D::finite(0.0, 1.0).unwrap();
        let r = integrate_1d(|x| a * x * x + b * x, &dom, 1e-12).unwrap();
        prop_assert!((r.value - (a / 3.0 + b / 2.0)).abs() < 1e-12);
    }

    #[test]
    fn total_variation_of_monotone_data_telescopes(mut values in prop::collection::vec(-10.0f64..10.0, 2..60)) {
        values.sort_by(f64::total_cmp);
        let samples = grid_samples(&values);
        let v = total_variation(&samples).unwrap();
        let span = values.last().unwrap() - values.first().unwrap();
        prop_assert!((v - span).abs() <= 1e-12 * (1.0 + span.abs()));
    }

    #[test]
    fn total_variation_is_subadditive(
        f in prop::collection::vec(-5.0f64..5.0, 8),
        g in prop::collection::vec(-5.0f64..5.0, 8),
    ) {
        let sum: Vec<f64> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
        let tv = |v: &[f64]| total_variation(&grid_samples(v)).unwrap();
        prop_assert!(tv(&sum) <= tv(&f) + tv(&g) + 1e-12);
    }

    #[test]
    fn jordan_parts_reconstruct_and_stay_monotone(values in prop::collection::vec(-10.0f64..10.0, 2..80)) {
        let f = BVFunction::from_samples(grid_samples(&values)).unwrap();
        prop_assert!(f.v >= (values[values.len() - 1] - values[0]).abs() - 1e-12);
        let (f1, f2) = jordan_decomposition(&f);
        for i in 0..values.len() {
            prop_assert!((f1[i] - f2[i] - values[i]).abs() < 1e-12);
            prop_assert!(f1[i] >= -1e-12 && f2[i] >= -1e-12);
            if i > 0 {
                prop_assert!(f1[i] >= f1[i - 1] - 1e-12);
                prop_assert!(f2[i] >= f2[i - 1] - 1e-12);
            }
        }
    }

    #[test]
    fn staircase_gap_stays_below_one_over_n(
        mut values in prop::collection::vec(0.0f64..5.0, 16..200),
        n in 1usize..24,
    ) {
        values.sort_by(f64::total_cmp);
        // canonical representatives are left-continuous at b: a jump at the
        // final sample lives on a null set and is excluded here
        let last = values.len() - 1;
        values[last] = values[last - 1];
        let samples = grid_samples(&values);
        let st = staircase_approx(&samples, n).unwrap();
        prop_assert!(st.breakpoints.len() >= 2);
        for w in st.levels.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-12, "levels nondecreasing for monotone input");
        }
        let bound = 1.0 / n as f64;
        for &(x, y) in &samples {
            let gap = y - st.eval(x);
            prop_assert!(gap >= -1e-12 && gap <= bound + 1e-12, "gap {gap} at {x}");
        }
    }

    #[test]
    fn lp_objective_is_absolutely_homogeneous(
        coeffs in prop::collection::vec(-4.0f64..4.0, 6),
        scale in prop_oneof![-3.0f64..-0.25, 0.25f64..3.0],
    ) {
        let dim = coeffs.len();
        let grid: Vec<f64> = (0..dim).map(|i| i as f64).collect();
        let units: Vec<Vec<f64>> = (0..dim)
            .map(|j| (0..dim).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let dict = FiniteDictionary::new(grid, units, 2.0).unwrap();
        let base = variation_norm_finite(&coeffs, &dict, 0.0).unwrap().objective;
        let scaled: Vec<f64> = coeffs.iter().map(|v| scale * v).collect();
        let got = variation_norm_finite(&scaled, &dict, 0.0).unwrap().objective;
        prop_assert!((got - scale.abs() * base).abs() <= 1e-9 * (1.0 + got.abs()));
    }
}
