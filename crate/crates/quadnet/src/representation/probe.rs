//! The essential-boundedness counterexample: h(y)(x) = y^{-x} on
//! Y = Omega = (0, 1). Pointwise integrals exist everywhere
//! (integral of y^{-x} dy = 1/(1-x)), yet y -> ||h(y)||_{L^1} is not
//! integrable, so no L^1-valued integral of h exists. The probe tabulates
//! truncated norm integrals and checks them against the double-log lower
//! bound.

use std::sync::Arc;

use super::{IntegralRep, TargetSpace, WeightFn};
use crate::dictionaries::{ParamSpec, UnitFamily};
use crate::error::{Error, Result};
use crate::numerics::{integrate_1d_with, DomainSpec, Interval1D, QuadOptions, Region};

/// ||h(y)||_{L^1(0,1)} = (1 - 1/y) / ln y, extended continuously by 1 at
/// y = 1.
pub fn counterexample_inner_norm(y: f64) -> Result<f64> {
    if !(y > 0.0 && y < 1.0) {
        if y == 1.0 {
            return Ok(1.0);
        }
        return Err(Error::domain(format!("counterexample parameter must lie in (0, 1), got {y}")));
    }
    Ok((1.0 - 1.0 / y) / y.ln())
}

/// Pointwise integral of y^{-x} over (0, 1) by quadrature; equals
/// 1/(1 - x). The integrable endpoint singularity y^{-x} is softened with
/// y = u^16 so that adaptive bisection reaches full accuracy for x <= 0.9.
pub fn counterexample_pointwise(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(format!("evaluation point must lie in (0, 1), got {x}")));
    }
    let m = 16.0;
    let integrand = move |u: f64| m * u.powf(m * (1.0 - x) - 1.0);
    let dom = Interval1D::finite(0.0, 1.0)?;
    let opts = QuadOptions { rel_tol: 1e-13, ..Default::default() };
    Ok(integrate_1d_with(integrand, &dom, &opts)?.value)
}

/// One row of the divergence table.
#[derive(Debug, Clone, Copy)]
pub struct ProbeRow {
    pub epsilon: f64,
    /// integral over (epsilon, 1) of ||h(y)||_{L^1} dy.
    pub truncated: f64,
    /// (1/2) ln( ln(1/epsilon) / ln 2 ), the closed-form lower bound.
    pub lower_bound: f64,
}

/// Tabulate truncated norm integrals for strictly decreasing
/// cutoffs in (0, 1/2). Values increase as epsilon decreases and exceed
/// the double-log lower bound, demonstrating divergence.
pub fn divergence_probe(cutoffs: &[f64]) -> Result<Vec<ProbeRow>> {
    if cutoffs.is_empty() {
        return Err(Error::domain("need at least one cutoff"));
    }
    for w in cutoffs.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::domain("cutoffs must be strictly decreasing"));
        }
    }
    for &eps in cutoffs {
        if !(eps > 0.0 && eps < 0.5) {
            return Err(Error::domain(format!("cutoffs must lie in (0, 1/2), got {eps}")));
        }
    }
    let mut rows = Vec::with_capacity(cutoffs.len());
    for &eps in cutoffs {
        // substitute y = e^{-v}: integrand (1 - e^{-v}) / v on (0, ln(1/eps)),
        // smooth and bounded by 1.
        let vmax = -eps.ln();
        let integrand = |v: f64| {
            if v < 1e-12 {
                1.0 - 0.5 * v
            } else {
                -(-v).exp_m1() / v
            }
        };
        let dom = Interval1D::finite(0.0, vmax)?;
        let opts = QuadOptions { rel_tol: 1e-12, ..Default::default() };
        let truncated = integrate_1d_with(integrand, &dom, &opts)?.value;
        let lower_bound = 0.5 * (vmax / std::f64::consts::LN_2).ln();
        rows.push(ProbeRow { epsilon: eps, truncated, lower_bound });
    }
    Ok(rows)
}

/// The counterexample as an `IntegralRep`: unit weight against the family
/// y -> y^{-x} in L^1((0,1)). Pointwise evaluation converges everywhere on
/// (0, 1); the norm integral of y -> ||h(y)|| does not, which is what
/// `divergence_probe` demonstrates.
pub fn counterexample_rep() -> Result<IntegralRep> {
    let eval = Arc::new(|x: &[f64], y: &[f64]| y[0].powf(-x[0]));
    let unit_norm = move |y: &[f64], q: f64| {
        if q == 1.0 {
            counterexample_inner_norm(y[0])
        } else {
            Err(Error::domain("counterexample units are normed in L^1 only"))
        }
    };
    let family = UnitFamily::from_parts(
        "power-units y^{-x}",
        ParamSpec::Interval(Interval1D::finite(0.0, 1.0)?),
        1,
        1.0,
        f64::INFINITY, // the family is essentially unbounded: that is the point
        true,
        eval,
        Arc::new(unit_norm),
        Arc::new(|y: &[f64]| {
            if y[0] > 0.0 && y[0] < 1.0 {
                Ok(())
            } else {
                Err(Error::domain("parameter must lie in (0, 1)"))
            }
        }),
    );
    let weight = WeightFn::new_1d("unit", Interval1D::finite(0.0, 1.0)?, |_| 1.0, Some(1.0))?;
    let target = TargetSpace {
        domain: DomainSpec { dimension: 1, region: Region::Box(vec![(0.0, 1.0)]) },
        q: 1.0,
        radial: false,
    };
    // y = u^16 softens the y^{-x} endpoint for every x in the target box.
    let m = 16.0;
    let rep = IntegralRep::with_param_map(
        "counterexample y^{-x}",
        weight,
        family,
        target,
        Interval1D::finite(0.0, 1.0)?,
        move |u| u.powf(m),
        move |u| m * u.powf(m - 1.0),
        move |u, out| out[0] = u.powf(m),
    )?;
    Ok(rep
        .with_closed_form(|x: &[f64]| 1.0 / (1.0 - x[0]))
        .with_eval_opts(QuadOptions { rel_tol: 1e-13, ..Default::default() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representation::rep_eval;

    #[test]
    fn inner_norm_closed_form() {
        // ||h(1/2)|| = (1 - 2)/ln(1/2) = 1/ln 2
        let v = counterexample_inner_norm(0.5).unwrap();
        assert!((v - 1.0 / std::f64::consts::LN_2).abs() < 1e-14);
        assert!(counterexample_inner_norm(0.0).is_err());
        assert!(counterexample_inner_norm(1.5).is_err());
    }

    #[test]
    fn pointwise_integral_matches_closed_form() {
        for &x in &[0.1, 0.5, 0.9] {
            let v = counterexample_pointwise(x).unwrap();
            let truth = 1.0 / (1.0 - x);
            assert!(
                (v - truth).abs() <= 1e-10 * truth,
                "x = {x}: {v} vs {truth}"
            );
        }
    }

    #[test]
    fn pointwise_at_090_is_ten() {
        let v = counterexample_pointwise(0.9).unwrap();
        assert!((v - 10.0).abs() < 1e-9);
    }

    #[test]
    fn rep_route_agrees_with_direct_integral() {
        let rep = counterexample_rep().unwrap();
        let v = rep_eval(&rep, &[0.5]).unwrap();
        assert!((v - 2.0).abs() < 1e-10, "got {v}");
    }

    #[test]
    fn probe_rows_increase_and_beat_lower_bound() {
        let cutoffs = [1e-3, 1e-10, 1e-50, 1e-150, 1e-300];
        let rows = divergence_probe(&cutoffs).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].truncated > w[0].truncated, "table must strictly increase");
        }
        for r in &rows {
            assert!(
                r.truncated >= r.lower_bound - 1e-3,
                "eps = {}: {} below bound {}",
                r.epsilon,
                r.truncated,
                r.lower_bound
            );
        }
        // spot value of the bound at 1e-300 from the antiderivative
        let last = rows.last().unwrap();
        assert!((last.lower_bound - 3.45).abs() < 0.02);
    }

    #[test]
    fn probe_validates_cutoffs() {
        assert!(divergence_probe(&[0.7]).is_err());
        assert!(divergence_probe(&[1e-3, 1e-2]).is_err());
        assert!(divergence_probe(&[]).is_err());
    }

    #[test]
    fn truncated_integral_of_bounding_density_matches_its_antiderivative() {
        // quadrature sanity for the lower-bound law: integral over
        // (eps, 1/2) of 1/(-2 y ln y) equals (1/2) ln(ln(1/eps)/ln 2).
        let eps = 1e-8f64;
        let integrand = |y: f64| 1.0 / (-2.0 * y * y.ln());
        let dom = Interval1D::finite(eps, 0.5).unwrap();
        let r = integrate_1d_with(integrand, &dom, &QuadOptions::with_rel_tol(1e-11)).unwrap();
        let closed = 0.5 * ((-eps.ln()) / std::f64::consts::LN_2).ln();
        assert!((r.value - closed).abs() < 1e-8 * closed);
    }
}
