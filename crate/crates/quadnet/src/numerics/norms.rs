//! Multi-dimensional integration (d <= 4) and L^q norms.
//!
//! Radial integrands are reduced to one dimension through the surface-area
//! factor omega_d = 2 pi^{d/2} / Gamma(d/2) with the substitution
//! rho = tan(theta), which handles exponential and algebraic tails alike.
//! General integrands use nested 1-D adaptive quadrature.

use std::cell::{Cell, RefCell};

use super::adaptive::{integrate_1d_with, QuadOptions};
use super::domain::{DomainSpec, Interval1D, QuadResult, Region};
use super::special::gamma_fn;
use crate::error::{Error, Result};

/// Scalar field on R^d, either general or declared radial (a function of
/// ||x|| only). Radial structure cannot be detected from a black box, so
/// callers state it.
pub enum NdIntegrand<'a> {
    General(&'a dyn Fn(&[f64]) -> f64),
    Radial(&'a dyn Fn(f64) -> f64),
}

/// Surface area of the unit sphere in R^d.
pub fn sphere_area(d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::domain("dimension must be >= 1"));
    }
    let d = d as f64;
    Ok(2.0 * std::f64::consts::PI.powf(d / 2.0) / gamma_fn(d / 2.0)?)
}

/// omega_d * integral_0^inf g(rho) rho^{d-1} drho via rho = tan(theta).
pub fn integrate_radial<G: Fn(f64) -> f64>(g: G, d: usize, rel_tol: f64) -> Result<QuadResult> {
    integrate_radial_opts(g, d, &QuadOptions::with_rel_tol(rel_tol))
}

/// As `integrate_radial`; absolute tolerance applies to the reduced 1-D
/// integral before the omega_d factor.
pub fn integrate_radial_opts<G: Fn(f64) -> f64>(g: G, d: usize, opts: &QuadOptions) -> Result<QuadResult> {
    if d == 0 || d > 4 {
        return Err(Error::UnsupportedDimension(d));
    }
    let omega = sphere_area(d)?;
    let dm1 = (d - 1) as i32;
    let integrand = move |theta: f64| {
        let c = theta.cos();
        // Quadrature nodes never land exactly on pi/2, but values past
        // rho ~ 1e100 only matter for non-integrable tails.
        if c < 1e-100 {
            return 0.0;
        }
        let rho = theta.tan();
        let v = g(rho);
        if v == 0.0 {
            return 0.0;
        }
        let sec2 = 1.0 / (c * c);
        v * rho.powi(dm1) * sec2
    };
    let dom = Interval1D::finite(0.0, std::f64::consts::FRAC_PI_2)?;
    let mut r = integrate_1d_with(integrand, &dom, opts)?;
    r.value *= omega;
    r.error_estimate *= omega;
    Ok(r)
}

fn axis_interval(region: &Region, axis: usize) -> Interval1D {
    match region {
        Region::Box(bounds) => {
            let (lo, hi) = bounds[axis];
            Interval1D::finite(lo, hi).expect("validated on construction")
        }
        Region::AllSpace { .. } => Interval1D::real_line(),
    }
}

/// Iterated integral over a box or R^d; shared eval budget across levels.
fn integrate_nested(
    f: &dyn Fn(&[f64]) -> f64,
    dom: &DomainSpec,
    budget: u64,
    base: &QuadOptions,
) -> Result<QuadResult> {
    let d = dom.dimension;
    let used = Cell::new(0u64);
    let inner_err = RefCell::new(None::<Error>);
    let point = RefCell::new(vec![0.0f64; d]);

    // Outermost level gets the requested tolerance; inner levels are run
    // tighter so their noise stays below the outer estimate. The absolute
    // floor applies to the outermost level only.
    fn level_tol(rel_tol: f64, level: usize) -> f64 {
        (rel_tol * 0.25f64.powi(level as i32)).max(1e-14)
    }

    struct Ctx<'c> {
        f: &'c dyn Fn(&[f64]) -> f64,
        dom: &'c DomainSpec,
        used: &'c Cell<u64>,
        budget: u64,
        inner_err: &'c RefCell<Option<Error>>,
        point: &'c RefCell<Vec<f64>>,
        rel_tol: f64,
    }

    fn recurse(ctx: &Ctx, level: usize) -> f64 {
        let d = ctx.dom.dimension;
        if level == d {
            ctx.used.set(ctx.used.get() + 1);
            if ctx.used.get() > ctx.budget {
                return f64::NAN; // poison: budget exceeded
            }
            let p = ctx.point.borrow();
            return (ctx.f)(&p);
        }
        let dom1 = axis_interval(&ctx.dom.region, level);
        let g = |x: f64| {
            ctx.point.borrow_mut()[level] = x;
            recurse(ctx, level + 1)
        };
        let opts = QuadOptions {
            rel_tol: level_tol(ctx.rel_tol, d - 1 - level),
            max_panels: if level + 1 == d { 30_000 } else { 2_000 },
            ..Default::default()
        };
        match integrate_1d_with(g, &dom1, &opts) {
            Ok(r) => r.value,
            Err(e) => {
                let mut slot = ctx.inner_err.borrow_mut();
                if slot.is_none() {
                    *slot = Some(e);
                }
                f64::NAN
            }
        }
    }

    let ctx = Ctx { f, dom, used: &used, budget, inner_err: &inner_err, point: &point, rel_tol: base.rel_tol };
    let dom0 = axis_interval(&dom.region, 0);
    let g = |x: f64| {
        point.borrow_mut()[0] = x;
        recurse(&ctx, 1)
    };
    let opts = QuadOptions {
        rel_tol: level_tol(base.rel_tol, d - 1),
        abs_tol: base.abs_tol,
        max_panels: if d == 1 { 30_000 } else { 2_000 },
        ..Default::default()
    };
    let result = integrate_1d_with(g, &dom0, &opts);
    if used.get() > budget {
        let (value, error_estimate) = match &result {
            Ok(r) => (r.value, r.error_estimate),
            Err(_) => (f64::NAN, f64::INFINITY),
        };
        return Err(Error::NonConvergence { value, error_estimate, evaluations: used.get() });
    }
    if let Some(e) = inner_err.into_inner() {
        return Err(e);
    }
    let mut r = result?;
    r.evaluations = used.get();
    Ok(r)
}

/// Integrate over a d-dimensional domain (d <= 4) within an evaluation
/// budget. Radial integrands over all of R^d are delegated to
/// `integrate_radial`.
pub fn integrate_nd(f: NdIntegrand, dom: &DomainSpec, budget: u64) -> Result<QuadResult> {
    integrate_nd_with(f, dom, budget, 1e-9)
}

pub fn integrate_nd_with(f: NdIntegrand, dom: &DomainSpec, budget: u64, rel_tol: f64) -> Result<QuadResult> {
    let d = dom.dimension;
    if d == 0 || d > 4 {
        return Err(Error::UnsupportedDimension(d));
    }
    if budget < 1_000 {
        return Err(Error::domain("budget must be at least 10^3 evaluations"));
    }
    match f {
        NdIntegrand::Radial(g) => match &dom.region {
            Region::AllSpace { .. } => integrate_radial(g, d, rel_tol),
            Region::Box(_) => Err(Error::domain(
                "radial reduction applies to all-of-R^d domains; pass a General integrand for boxes",
            )),
        },
        NdIntegrand::General(f) => integrate_nested(f, dom, budget, &QuadOptions::with_rel_tol(rel_tol)),
    }
}

/// Per-axis grid counts for the q = infinity sup estimate, sized so the
/// total grid stays near 10^6 points.
fn sup_grid_points(d: usize) -> usize {
    match d {
        1 => 65_537,
        2 => 1_025,
        3 => 101,
        _ => 33,
    }
}

/// L^q norm over `dom`. Finite q integrates |f|^q; q = +infinity takes the
/// supremum over a fixed evaluation grid, which is a lower estimate of the
/// essential sup (grid density documented in `sup_grid_points`).
pub fn lq_norm(f: NdIntegrand, dom: &DomainSpec, q: f64) -> Result<f64> {
    lq_norm_with(f, dom, q, 1e-10)
}

pub fn lq_norm_with(f: NdIntegrand, dom: &DomainSpec, q: f64, rel_tol: f64) -> Result<f64> {
    lq_norm_opts(f, dom, q, &QuadOptions::with_rel_tol(rel_tol))
}

/// As `lq_norm`; the options' absolute tolerance applies to the integral
/// of |f|^q, which lets callers accept norms at a known noise floor.
pub fn lq_norm_opts(f: NdIntegrand, dom: &DomainSpec, q: f64, opts: &QuadOptions) -> Result<f64> {
    if q < 1.0 || q.is_nan() {
        return Err(Error::domain(format!("L^q norms require q >= 1, got {q}")));
    }
    let d = dom.dimension;
    if d == 0 || d > 4 {
        return Err(Error::UnsupportedDimension(d));
    }
    if q.is_infinite() {
        return Ok(sup_on_grid(&f, dom));
    }
    let r = match f {
        NdIntegrand::Radial(g) => {
            let powed = |rho: f64| g(rho).abs().powf(q);
            match &dom.region {
                Region::AllSpace { .. } => integrate_radial_opts(powed, d, opts)?,
                Region::Box(_) => {
                    return Err(Error::domain("radial norms apply to all-of-R^d domains"));
                }
            }
        }
        NdIntegrand::General(f) => {
            let powed = move |x: &[f64]| f(x).abs().powf(q);
            integrate_nested(&powed, dom, 50_000_000, opts)?
        }
    };
    if r.value < 0.0 {
        // |f|^q is nonnegative; tiny negative totals are quadrature noise.
        if r.value < -r.error_estimate {
            return Err(Error::NumericalFailure(format!(
                "negative integral {} for a nonnegative integrand",
                r.value
            )));
        }
        return Ok(0.0);
    }
    Ok(r.value.powf(1.0 / q))
}

fn sup_on_grid(f: &NdIntegrand, dom: &DomainSpec) -> f64 {
    let d = dom.dimension;
    let bounds: Vec<(f64, f64)> = match &dom.region {
        Region::Box(b) => b.clone(),
        Region::AllSpace { decay_window } => vec![(-decay_window, *decay_window); d],
    };
    match f {
        NdIntegrand::Radial(g) => {
            let rmax = bounds.iter().map(|&(lo, hi)| lo.abs().max(hi.abs())).fold(0.0, f64::max);
            let n = 1_000_001usize;
            let mut best = 0.0f64;
            for i in 0..n {
                let rho = rmax * i as f64 / (n - 1) as f64;
                best = best.max(g(rho).abs());
            }
            best
        }
        NdIntegrand::General(f) => {
            let n = sup_grid_points(d);
            let mut idx = vec![0usize; d];
            let mut x = vec![0.0f64; d];
            let mut best = 0.0f64;
            loop {
                for k in 0..d {
                    let (lo, hi) = bounds[k];
                    x[k] = lo + (hi - lo) * idx[k] as f64 / (n - 1) as f64;
                }
                best = best.max(f(&x).abs());
                // odometer
                let mut k = 0;
                loop {
                    idx[k] += 1;
                    if idx[k] < n {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                    if k == d {
                        return best;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn constant_over_unit_box() {
        let dom = DomainSpec::unit_box(2).unwrap();
        let f = |_: &[f64]| 1.0;
        let r = integrate_nd(NdIntegrand::General(&f), &dom, 100_000).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_over_r2_matches_product_of_1d() {
        // Oracle: (integral of e^{-2t^2})^2 = pi/2, each factor by 1-D quadrature.
        let dom1 = Interval1D::real_line();
        let one_d = integrate_1d_with(|t: f64| (-2.0 * t * t).exp(), &dom1, &QuadOptions::with_rel_tol(1e-12))
            .unwrap()
            .value;
        let oracle = one_d * one_d;
        assert!((oracle - PI / 2.0).abs() < 1e-10);

        let dom = DomainSpec::all_space(2).unwrap();
        let f = |x: &[f64]| (-2.0 * (x[0] * x[0] + x[1] * x[1])).exp();
        let r = integrate_nd(NdIntegrand::General(&f), &dom, 10_000_000).unwrap();
        assert!((r.value - oracle).abs() < 1e-7 * oracle, "got {} want {}", r.value, oracle);
    }

    #[test]
    fn algebraic_tail_via_radial_reduction() {
        // (1 + ||x||^2)^{-2} over R^2: omega_2 * int rho (1+rho^2)^{-2} = 2 pi * 1/2 = pi.
        let g = |rho: f64| (1.0 + rho * rho).powi(-2);
        let dom = DomainSpec::all_space(2).unwrap();
        let r = integrate_nd(NdIntegrand::Radial(&g), &dom, 100_000).unwrap();
        assert!((r.value - PI).abs() < 1e-9 * PI, "got {}", r.value);
    }

    #[test]
    fn dimension_and_budget_guards() {
        let f = |_: &[f64]| 1.0;
        let dom = DomainSpec { dimension: 5, region: Region::AllSpace { decay_window: 1.0 } };
        assert!(matches!(
            integrate_nd(NdIntegrand::General(&f), &dom, 10_000),
            Err(Error::UnsupportedDimension(5))
        ));
        let dom = DomainSpec::unit_box(1).unwrap();
        assert!(integrate_nd(NdIntegrand::General(&f), &dom, 10).is_err());
    }

    #[test]
    fn lq_norm_of_constant_on_unit_interval() {
        let dom = DomainSpec::unit_box(1).unwrap();
        let c = -3.25f64;
        let f = move |_: &[f64]| c;
        let n = lq_norm(NdIntegrand::General(&f), &dom, 2.0).unwrap();
        assert!((n - c.abs()).abs() < 1e-10);
    }

    #[test]
    fn l2_norm_of_gaussian_on_the_line() {
        // ||e^{-x^2}||_2 = (pi/2)^{1/4}
        let f = |x: &[f64]| (-x[0] * x[0]).exp();
        let dom = DomainSpec::all_space(1).unwrap();
        let n = lq_norm(NdIntegrand::General(&f), &dom, 2.0).unwrap();
        let truth = (PI / 2.0).powf(0.25);
        assert!((n - truth).abs() < 1e-9 * truth);
    }

    #[test]
    fn sup_norm_is_grid_supremum() {
        let f = |x: &[f64]| 1.0 - (x[0] - 0.25).abs();
        let dom = DomainSpec::unit_box(1).unwrap();
        let n = lq_norm(NdIntegrand::General(&f), &dom, f64::INFINITY).unwrap();
        assert!((n - 1.0).abs() < 1e-4);
        assert!(n <= 1.0 + 1e-12, "grid sup must not exceed the true sup here");
    }

    #[test]
    fn lq_norm_rejects_q_below_one() {
        let f = |_: &[f64]| 1.0;
        let dom = DomainSpec::unit_box(1).unwrap();
        assert!(lq_norm(NdIntegrand::General(&f), &dom, 0.5).is_err());
    }

    #[test]
    fn absolute_homogeneity_of_lq_norm() {
        let base = |x: &[f64]| (-x[0] * x[0]).exp() * (1.0 + x[0].sin());
        for &(c, q) in &[(2.5f64, 1.0f64), (-4.0, 2.0), (0.125, 3.0)] {
            let scaled = move |x: &[f64]| c * base(x);
            let dom = DomainSpec::all_space(1).unwrap();
            let n0 = lq_norm(NdIntegrand::General(&base), &dom, q).unwrap();
            let n1 = lq_norm(NdIntegrand::General(&scaled), &dom, q).unwrap();
            assert!(
                (n1 - c.abs() * n0).abs() < 1e-8 * n1.abs().max(1.0),
                "homogeneity failed for c={c}, q={q}: {n1} vs {}",
                c.abs() * n0
            );
        }
    }
}
