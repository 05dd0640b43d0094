//! Integral representations f(x) = integral_Y w(y) phi(x, y) dmu(y):
//! pointwise evaluation by adaptive quadrature, the norm-bound chain
//! ||f||_X <= ||f||_{G,X} s_{G,X} <= ||w||_1 * sup_y ||Phi(y)||_X,
//! quadrature-network synthesis, multi-family cost, and the
//! essential-boundedness counterexample probe.

mod network;
mod probe;

pub use network::{
    approx_error, approx_error_with, network_eval, synthesize_network, NetworkTerm, PartitionScheme,
    QuadNetwork,
};
pub use probe::{
    counterexample_inner_norm, counterexample_pointwise, counterexample_rep, divergence_probe, ProbeRow,
};

use std::cell::RefCell;
use std::sync::Arc;

use crate::dictionaries::{constant_family, heaviside_family, ParamSpec, UnitFamily};
use crate::error::{Error, Result};
use crate::numerics::{
    integrate_1d_with, lq_norm_with, DomainSpec, Interval1D, NdIntegrand, QuadOptions, Region,
};

type Scalar1D = dyn Fn(f64) -> f64 + Send + Sync;
type ScalarNd = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// Weight function w on the parameter space, with explicit sign handling
/// (sgn(w) and the mass density |w| of mu_w) and an optional closed-form
/// L^1 norm used as an honesty cross-check.
#[derive(Clone)]
pub struct WeightFn {
    pub name: String,
    pub param_space: ParamSpec,
    pub l1_closed: Option<f64>,
    eval: Arc<Scalar1D>,
}

impl WeightFn {
    /// Weight over a 1-D parameter interval.
    pub fn new_1d(
        name: impl Into<String>,
        interval: Interval1D,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        l1_closed: Option<f64>,
    ) -> Result<Self> {
        interval.validate()?;
        if let Some(l1) = l1_closed {
            if !(l1 >= 0.0) {
                return Err(Error::domain("closed-form L1 norm must be nonnegative"));
            }
        }
        Ok(WeightFn {
            name: name.into(),
            param_space: ParamSpec::Interval(interval),
            l1_closed,
            eval: Arc::new(eval),
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    /// sgn(w(t)) in {-1, 0, +1}.
    pub fn sign_at(&self, t: f64) -> f64 {
        let v = (self.eval)(t);
        if v > 0.0 {
            1.0
        } else if v < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    /// Density of mu_w: |w(t)|.
    pub fn abs_at(&self, t: f64) -> f64 {
        (self.eval)(t).abs()
    }

    pub fn interval(&self) -> Result<Interval1D> {
        match &self.param_space {
            ParamSpec::Interval(iv) => Ok(*iv),
            _ => Err(Error::domain("weight is not parametrized by an interval")),
        }
    }
}

/// The ambient space (Omega, rho, q) a representation maps into; `radial`
/// marks targets whose represented function depends on ||x|| only, which
/// unlocks the radial quadrature reduction.
#[derive(Debug, Clone)]
pub struct TargetSpace {
    pub domain: DomainSpec,
    pub q: f64,
    pub radial: bool,
}

/// How the parameter integral is actually carried out: a 1-D quadrature
/// variable v, a packing map v -> y into family parameters, and the
/// effective weight w(y(v)) |dy/dv|. Substitutions (e.g. t = v^2 to soften
/// an endpoint singularity of the weight) are exact reparametrizations, so
/// L^1 masses and synthesized coefficients are unchanged.
#[derive(Clone)]
struct QuadPlan {
    interval: Interval1D,
    to_param: Arc<dyn Fn(f64, &mut [f64]) + Send + Sync>,
    weight_v: Arc<Scalar1D>,
}

/// The triple (w, Phi, target) of an integral representation.
#[derive(Clone)]
pub struct IntegralRep {
    pub name: String,
    pub weight: WeightFn,
    pub family: UnitFamily,
    pub target: TargetSpace,
    /// Known closed form of the represented function, when available.
    pub closed_form: Option<Arc<ScalarNd>>,
    /// Default tolerance for the parameter integral.
    pub eval_opts: QuadOptions,
    quad: QuadPlan,
}

impl IntegralRep {
    /// Representation whose quadrature variable is the native 1-D family
    /// parameter.
    pub fn new_1d(
        name: impl Into<String>,
        weight: WeightFn,
        family: UnitFamily,
        target: TargetSpace,
    ) -> Result<Self> {
        if family.param_dim != 1 {
            return Err(Error::domain(
                "new_1d requires a 1-D family parameter; use with_param_map for packed parameters",
            ));
        }
        let interval = weight.interval()?;
        Ok(IntegralRep {
            name: name.into(),
            weight: weight.clone(),
            family,
            target,
            closed_form: None,
            eval_opts: QuadOptions::with_rel_tol(1e-10),
            quad: QuadPlan {
                interval,
                to_param: Arc::new(|v, out| out[0] = v),
                weight_v: Arc::new(move |v| weight.eval(v)),
            },
        })
    }

    /// Representation integrated in a substituted variable v over
    /// `interval`, with `to_native` mapping v to the native weight
    /// parameter, `jacobian` = |d(native)/dv|, and `to_param` packing v
    /// into family parameters.
    pub fn with_param_map(
        name: impl Into<String>,
        weight: WeightFn,
        family: UnitFamily,
        target: TargetSpace,
        interval: Interval1D,
        to_native: impl Fn(f64) -> f64 + Send + Sync + 'static,
        jacobian: impl Fn(f64) -> f64 + Send + Sync + 'static,
        to_param: impl Fn(f64, &mut [f64]) + Send + Sync + 'static,
    ) -> Result<Self> {
        interval.validate()?;
        let w = weight.clone();
        Ok(IntegralRep {
            name: name.into(),
            weight,
            family,
            target,
            closed_form: None,
            eval_opts: QuadOptions::with_rel_tol(1e-10),
            quad: QuadPlan {
                interval,
                to_param: Arc::new(to_param),
                weight_v: Arc::new(move |v| w.eval(to_native(v)) * jacobian(v).abs()),
            },
        })
    }

    pub fn with_closed_form(mut self, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.closed_form = Some(Arc::new(f));
        self
    }

    pub fn with_eval_opts(mut self, opts: QuadOptions) -> Self {
        self.eval_opts = opts;
        self
    }

    pub(crate) fn quad_interval(&self) -> Interval1D {
        self.quad.interval
    }

    pub(crate) fn weight_v(&self, v: f64) -> f64 {
        (self.quad.weight_v)(v)
    }

    pub(crate) fn param_at(&self, v: f64, buf: &mut [f64]) {
        (self.quad.to_param)(v, buf)
    }

    pub(crate) fn unit_value(&self, x: &[f64], v: f64, buf: &mut [f64]) -> f64 {
        (self.quad.to_param)(v, buf);
        self.family.eval_unchecked(x, buf)
    }
}

/// Pointwise evaluation: integral over Y of w(y) phi(x, y) dmu(y) by
/// adaptive quadrature. A `NonConvergence` error signals that the
/// integrability hypothesis fails at this x.
pub fn rep_eval(rep: &IntegralRep, x: &[f64]) -> Result<f64> {
    rep_eval_with(rep, x, &rep.eval_opts)
}

pub fn rep_eval_with(rep: &IntegralRep, x: &[f64], opts: &QuadOptions) -> Result<f64> {
    let buf = RefCell::new(vec![0.0f64; rep.family.param_dim]);
    let integrand = |v: f64| {
        let mut b = buf.borrow_mut();
        let unit = rep.unit_value(x, v, &mut b);
        rep.weight_v(v) * unit
    };
    Ok(integrate_1d_with(integrand, &rep.quad.interval, opts)?.value)
}

/// Same integral through the change of measure to (sgn w, mu_w): the
/// integrand sgn(w(y)) phi(x, y) against the density |w|. Equals
/// `rep_eval` whenever either side exists.
pub fn rep_eval_sign_split(rep: &IntegralRep, x: &[f64]) -> Result<f64> {
    let buf = RefCell::new(vec![0.0f64; rep.family.param_dim]);
    let integrand = |v: f64| {
        let w = rep.weight_v(v);
        let sign = if w > 0.0 {
            1.0
        } else if w < 0.0 {
            -1.0
        } else {
            return 0.0;
        };
        let mut b = buf.borrow_mut();
        let unit = rep.unit_value(x, v, &mut b);
        sign * unit * w.abs()
    };
    Ok(integrate_1d_with(integrand, &rep.quad.interval, &rep.eval_opts)?.value)
}

/// ||w||_{L^1(Y, mu)} by quadrature of |w|.
pub fn weight_l1(rep: &IntegralRep) -> Result<f64> {
    let integrand = |v: f64| rep.weight_v(v).abs();
    Ok(integrate_1d_with(integrand, &rep.quad.interval, &rep.eval_opts)?.value)
}

/// Essential-sup estimate of y -> ||Phi(y)||_X over the weight's support.
#[derive(Debug, Clone, Copy)]
pub struct EssSupEstimate {
    pub value: f64,
    /// True when the value is an exact uniform bound (closed-form constant
    /// unit norms); false for a parameter-grid maximum, which estimates the
    /// essential sup from below.
    pub rigorous: bool,
}

/// Number of grid points for the parameter-grid fallback.
const ESS_SUP_GRID: usize = 2_049;

pub fn ess_sup_unit_norm(rep: &IntegralRep) -> Result<EssSupEstimate> {
    let q = rep.target.q;
    let (a, b) = rep.quad.interval.unit_bounds();
    let mut buf = vec![0.0f64; rep.family.param_dim];
    let mut max_norm: f64 = 0.0;
    let mut min_norm = f64::INFINITY;
    for i in 1..ESS_SUP_GRID {
        let u = a + (b - a) * i as f64 / ESS_SUP_GRID as f64;
        let v = rep.quad.interval.from_unit(u);
        rep.param_at(v, &mut buf);
        let n = rep.family.unit_lq_norm(&buf, q)?;
        max_norm = max_norm.max(n);
        min_norm = min_norm.min(n);
    }
    let constant_closed = rep.family.norm_closed_form
        && rep.family.sup_unit_norm.is_finite()
        && (max_norm - min_norm).abs() <= 1e-12 * max_norm.abs().max(1.0)
        && (max_norm - rep.family.sup_unit_norm).abs() <= 1e-12 * rep.family.sup_unit_norm.max(1.0);
    if constant_closed {
        Ok(EssSupEstimate { value: rep.family.sup_unit_norm, rigorous: true })
    } else {
        Ok(EssSupEstimate { value: max_norm, rigorous: false })
    }
}

/// Measured certificate of the bound chain for one representation.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub rep_name: String,
    /// ||w||_1 by quadrature.
    pub w_l1: f64,
    /// Essential-sup estimate M of ||Phi(y)||_X.
    pub m: f64,
    pub m_rigorous: bool,
    /// Ambient-norm estimate of the represented function.
    pub f_norm_est: f64,
    /// Variation-norm bound ||f||_{G,X} <= ||w||_1.
    pub var_bound: f64,
    /// ||w||_1 * M.
    pub product_bound: f64,
    /// product_bound - f_norm_est; guaranteed >= 0 up to numerics.
    pub slack_th2: f64,
    /// var_bound * s_{G,X} - f_norm_est.
    pub slack_thm: f64,
    /// Set when a guaranteed inequality fails beyond -1e-9 (a numerics bug,
    /// never clipped silently).
    pub violation: bool,
}

pub const BOUND_SLACK_TOL: f64 = 1e-9;

/// Assemble the certificate; `f_norm_est` should come from `lq_norm` on
/// `rep_eval` samples (see `rep_norm_est`).
pub fn bound_report(rep: &IntegralRep, f_norm_est: f64) -> Result<BoundReport> {
    let w_l1 = weight_l1(rep)?;
    let m = ess_sup_unit_norm(rep)?;
    let var_bound = w_l1;
    let product_bound = w_l1 * m.value;
    let slack_th2 = product_bound - f_norm_est;
    let s_g = rep.family.sup_unit_norm;
    let slack_thm = var_bound * s_g - f_norm_est;
    let violation = slack_th2 < -BOUND_SLACK_TOL || slack_thm < -BOUND_SLACK_TOL;
    Ok(BoundReport {
        rep_name: rep.name.clone(),
        w_l1,
        m: m.value,
        m_rigorous: m.rigorous,
        f_norm_est,
        var_bound,
        product_bound,
        slack_th2,
        slack_thm,
        violation,
    })
}

/// Ambient-norm estimate of the represented function from `rep_eval`
/// samples: L^q quadrature for finite q, grid supremum for q = infinity.
pub fn rep_norm_est(rep: &IntegralRep) -> Result<f64> {
    rep_norm_est_with(rep, 1e-7)
}

pub fn rep_norm_est_with(rep: &IntegralRep, rel_tol: f64) -> Result<f64> {
    let q = rep.target.q;
    let inner_err = RefCell::new(None::<Error>);
    let eval_at = |x: &[f64]| match rep_eval(rep, x) {
        Ok(v) => v,
        Err(e) => {
            let mut slot = inner_err.borrow_mut();
            if slot.is_none() {
                *slot = Some(e);
            }
            f64::NAN
        }
    };

    let value = if q.is_infinite() {
        // documented grid: 257 points per axis over the decay window / box
        let d = rep.target.domain.dimension;
        if d != 1 {
            return Err(Error::domain("sup-norm estimates are implemented for 1-D targets"));
        }
        let (lo, hi) = match &rep.target.domain.region {
            Region::Box(b) => b[0],
            Region::AllSpace { decay_window } => (-decay_window, *decay_window),
        };
        let n = 257;
        let mut best = 0.0f64;
        for i in 0..n {
            let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            best = best.max(eval_at(&[x]).abs());
        }
        best
    } else if rep.target.radial {
        let g = |rho: f64| eval_at(&[&[rho][..], &vec![0.0; rep.target.domain.dimension - 1][..]].concat());
        lq_norm_with(NdIntegrand::Radial(&g), &rep.target.domain, q, rel_tol)?
    } else {
        let f = |x: &[f64]| eval_at(x);
        lq_norm_with(NdIntegrand::General(&f), &rep.target.domain, q, rel_tol)?
    };
    if let Some(e) = inner_err.into_inner() {
        return Err(e);
    }
    Ok(value)
}

/// Total cost Sum_i ||w_i||_1 * ess-sup ||Phi_i|| of a multi-family
/// decomposition, with the per-part breakdown.
#[derive(Debug, Clone)]
pub struct MultiFamilyCost {
    pub total: f64,
    /// (part name, ||w||_1, M, product) per part.
    pub parts: Vec<(String, f64, f64, f64)>,
}

pub fn multi_family_cost(parts: &[&IntegralRep]) -> Result<MultiFamilyCost> {
    let mut total = 0.0;
    let mut breakdown = Vec::with_capacity(parts.len());
    for rep in parts {
        let w = weight_l1(rep)?;
        let m = ess_sup_unit_norm(rep)?;
        let product = w * m.value;
        total += product;
        breakdown.push((rep.name.clone(), w, m.value, product));
    }
    Ok(MultiFamilyCost { total, parts: breakdown })
}

/// The d = 1 half-line study: f(x) = integral sech^2(b) theta(x + b) db
/// = 1 + tanh(x), in the sup-norm ambient space. ||w||_1 = 2 and every
/// unit has sup-norm 1.
pub fn tanh_heaviside_rep() -> Result<IntegralRep> {
    let weight = WeightFn::new_1d(
        "sech^2",
        Interval1D::real_line(),
        |b: f64| {
            let c = b.cosh();
            1.0 / (c * c)
        },
        Some(2.0),
    )?;
    let family = heaviside_family(1)?;
    let target = TargetSpace {
        domain: DomainSpec::all_space_with_window(1, 6.0)?,
        q: f64::INFINITY,
        radial: false,
    };
    let interval = Interval1D::real_line();
    let w = weight.clone();
    Ok(IntegralRep {
        name: "tanh-heaviside(d=1)".to_string(),
        weight,
        family,
        target,
        closed_form: Some(Arc::new(|x: &[f64]| 1.0 + x[0].tanh())),
        eval_opts: QuadOptions::with_rel_tol(1e-10),
        quad: QuadPlan {
            interval,
            to_param: Arc::new(|v, out| {
                out[0] = 1.0;
                out[1] = v;
            }),
            weight_v: Arc::new(move |v| w.eval(v)),
        },
    })
}

/// The trivial representation of a fixed element f by the one-element
/// dictionary G = {f} and any nonnegative weight of unit mass: the
/// equality case of the bound chain.
pub fn constant_unit_rep() -> Result<IntegralRep> {
    let norm = (std::f64::consts::PI / 2.0).powf(0.25); // ||e^{-x^2}||_2
    let f = Arc::new(|x: &[f64]| (-x[0] * x[0]).exp());
    let family = constant_family(f.clone(), 2.0, norm)?;
    let weight = WeightFn::new_1d("uniform-unit-mass", Interval1D::finite(0.0, 1.0)?, |_| 1.0, Some(1.0))?;
    let target = TargetSpace { domain: DomainSpec::all_space(1)?, q: 2.0, radial: true };
    let rep = IntegralRep::new_1d("constant-unit(gaussian)", weight, family, target)?;
    Ok(rep.with_closed_form(move |x| f(x)))
}
