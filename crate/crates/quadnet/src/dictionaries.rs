//! Concrete parametrized unit families Phi: Y -> L^q(Omega): scaled
//! Gaussians, half-space indicators, interval indicators, and the constant
//! family. A family packages pointwise evaluation, per-unit norms (closed
//! form where available, quadrature fallback otherwise) and the uniform
//! bound sup_y ||Phi(y)||.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{lq_norm, DomainSpec, Interval1D, NdIntegrand};

/// Description of the parameter measure space (Y, mu).
#[derive(Debug, Clone)]
pub enum ParamSpec {
    /// Interval with Lebesgue measure.
    Interval(Interval1D),
    /// S^{d-1} x R with the product of the unnormalized sphere measure and
    /// Lebesgue measure. For d = 1 the sphere S^0 = {-1, +1} carries
    /// counting measure.
    SphereCrossLine { dim: usize },
    /// Finite parameter set with counting weights.
    FiniteSet { weights: Vec<f64> },
}

pub type EvalFn = dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync;
pub type NormFn = dyn Fn(&[f64], f64) -> Result<f64> + Send + Sync;
pub type ValidateFn = dyn Fn(&[f64]) -> Result<()> + Send + Sync;

/// A parametrized dictionary y -> Phi(y), with Phi(y)(x) = phi(x, y).
#[derive(Clone)]
pub struct UnitFamily {
    pub name: String,
    pub param_space: ParamSpec,
    /// Number of coordinates in a packed parameter point.
    pub param_dim: usize,
    /// The ambient norm index the family is stated in (f64::INFINITY for
    /// sup-norm families).
    pub ambient_q: f64,
    /// s_{G,X}: uniform bound on unit norms in the ambient space
    /// (f64::INFINITY when the family is unbounded).
    pub sup_unit_norm: f64,
    /// True when `unit_lq_norm` is an analytic formula rather than a
    /// quadrature estimate.
    pub norm_closed_form: bool,
    eval: Arc<EvalFn>,
    unit_norm: Arc<NormFn>,
    validate: Arc<ValidateFn>,
}

impl std::fmt::Debug for UnitFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UnitFamily")
            .field("name", &self.name)
            .field("param_dim", &self.param_dim)
            .field("ambient_q", &self.ambient_q)
            .field("sup_unit_norm", &self.sup_unit_norm)
            .finish()
    }
}

impl UnitFamily {
    /// Assemble a family from raw parts; the built-in constructors below
    /// cover the standard dictionaries.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        name: impl Into<String>,
        param_space: ParamSpec,
        param_dim: usize,
        ambient_q: f64,
        sup_unit_norm: f64,
        norm_closed_form: bool,
        eval: Arc<EvalFn>,
        unit_norm: Arc<NormFn>,
        validate: Arc<ValidateFn>,
    ) -> Self {
        UnitFamily {
            name: name.into(),
            param_space,
            param_dim,
            ambient_q,
            sup_unit_norm,
            norm_closed_form,
            eval,
            unit_norm,
            validate,
        }
    }

    /// phi(x, y) with parameter validation.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        (self.validate)(y)?;
        Ok((self.eval)(x, y))
    }

    /// phi(x, y) without validation; for quadrature loops whose parameters
    /// are admissible by construction.
    pub fn eval_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        (self.eval)(x, y)
    }

    /// ||Phi(y)||_{L^q}.
    pub fn unit_lq_norm(&self, y: &[f64], q: f64) -> Result<f64> {
        (self.validate)(y)?;
        (self.unit_norm)(y, q)
    }

    pub fn validate_param(&self, y: &[f64]) -> Result<()> {
        (self.validate)(y)
    }
}

/// Closed-form L^q norm of the scaled Gaussian e^{-b ||x||^2} on R^d:
/// (pi / (q b))^{d / 2q}.
pub fn gaussian_norm_closed(b: f64, q: f64, d: usize) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::domain(format!("gaussian scale must be positive, got {b}")));
    }
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::domain(format!("gaussian norm needs q in [1, inf), got {q}")));
    }
    if d == 0 {
        return Err(Error::domain("dimension must be >= 1"));
    }
    Ok((std::f64::consts::PI / (q * b)).powf(d as f64 / (2.0 * q)))
}

fn sq_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// Gaussian family t -> e^{-t ||x||^2} on Y = (0, inf), optionally
/// normalized in L^q so that every unit has norm 1.
pub fn gaussian_family(d: usize, q: f64, normalized: bool) -> Result<UnitFamily> {
    if d == 0 {
        return Err(Error::domain("dimension must be >= 1"));
    }
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::domain(format!("gaussian family needs q in [1, inf), got {q}")));
    }
    let validate = Arc::new(move |y: &[f64]| {
        if y.len() != 1 {
            return Err(Error::domain("gaussian parameter is a single scale t"));
        }
        if !(y[0] > 0.0) {
            return Err(Error::domain(format!("gaussian scale must be positive, got {}", y[0])));
        }
        Ok(())
    });
    let eval: Arc<EvalFn> = if normalized {
        Arc::new(move |x: &[f64], y: &[f64]| {
            let t = y[0];
            (-t * sq_norm(x)).exp() / gaussian_norm_closed(t, q, d).expect("validated")
        })
    } else {
        Arc::new(move |x: &[f64], y: &[f64]| (-y[0] * sq_norm(x)).exp())
    };
    let unit_norm: Arc<NormFn> = Arc::new(move |y: &[f64], qq: f64| {
        let t = y[0];
        if qq.is_infinite() {
            // sup of the Gaussian is its value at the origin
            return if normalized {
                Ok(1.0 / gaussian_norm_closed(t, q, d)?)
            } else {
                Ok(1.0)
            };
        }
        let raw = gaussian_norm_closed(t, qq, d)?;
        if normalized {
            Ok(raw / gaussian_norm_closed(t, q, d)?)
        } else {
            Ok(raw)
        }
    });
    Ok(UnitFamily {
        name: if normalized {
            format!("gaussian-normalized(d={d},q={q})")
        } else {
            format!("gaussian(d={d})")
        },
        param_space: ParamSpec::Interval(Interval1D::semi_infinite(0.0)?),
        param_dim: 1,
        ambient_q: q,
        sup_unit_norm: if normalized { 1.0 } else { f64::INFINITY },
        norm_closed_form: true,
        eval,
        unit_norm,
        validate,
    })
}

/// Half-space indicator family on R^d: phi(x, (e, b)) = 1 iff e.x + b >= 0
/// (closed half-space), parameter space S^{d-1} x R, sup-norm ambient.
pub fn heaviside_family(d: usize) -> Result<UnitFamily> {
    if d == 0 {
        return Err(Error::domain("dimension must be >= 1"));
    }
    let validate = Arc::new(move |y: &[f64]| {
        if y.len() != d + 1 {
            return Err(Error::domain(format!(
                "heaviside parameter is (e in S^{}, b): expected {} coordinates, got {}",
                d - 1,
                d + 1,
                y.len()
            )));
        }
        let norm = sq_norm(&y[..d]).sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("direction must be a unit vector, got ||e|| = {norm}")));
        }
        Ok(())
    });
    let eval: Arc<EvalFn> = Arc::new(move |x: &[f64], y: &[f64]| {
        let dot: f64 = x.iter().zip(&y[..d]).map(|(a, b)| a * b).sum();
        if dot + y[d] >= 0.0 {
            1.0
        } else {
            0.0
        }
    });
    let unit_norm: Arc<NormFn> = Arc::new(move |_y: &[f64], qq: f64| {
        if qq.is_infinite() {
            Ok(1.0)
        } else {
            // a half-space has infinite Lebesgue mass
            Ok(f64::INFINITY)
        }
    });
    Ok(UnitFamily {
        name: format!("heaviside(d={d})"),
        param_space: ParamSpec::SphereCrossLine { dim: d },
        param_dim: d + 1,
        ambient_q: f64::INFINITY,
        sup_unit_norm: 1.0,
        norm_closed_form: true,
        eval,
        unit_norm,
        validate,
    })
}

/// Indicator side selector for `interval_char_family` parameters.
pub const SIDE_LEFT: f64 = 0.0;
pub const SIDE_RIGHT: f64 = 1.0;
pub const SIDE_FULL: f64 = 2.0;

/// Characteristic functions of closed intervals [a,c], [c,b], [a,b] inside
/// [a, b], in the sup-norm ambient space L^inf([a, b]).
pub fn interval_char_family(a: f64, b: f64) -> Result<UnitFamily> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("interval family needs finite a < b, got [{a}, {b}]")));
    }
    let validate = Arc::new(move |y: &[f64]| {
        if y.len() != 2 {
            return Err(Error::domain("interval unit parameter is (c, side)"));
        }
        let (c, side) = (y[0], y[1]);
        if side != SIDE_LEFT && side != SIDE_RIGHT && side != SIDE_FULL {
            return Err(Error::domain(format!("side must be 0 (left), 1 (right) or 2 (full), got {side}")));
        }
        if side != SIDE_FULL && !(c > a && c < b) {
            return Err(Error::domain(format!("breakpoint c must lie strictly inside ({a}, {b}), got {c}")));
        }
        Ok(())
    });
    let eval: Arc<EvalFn> = Arc::new(move |x: &[f64], y: &[f64]| {
        let t = x[0];
        if t < a || t > b {
            return 0.0;
        }
        let (c, side) = (y[0], y[1]);
        let inside = if side == SIDE_LEFT {
            t <= c
        } else if side == SIDE_RIGHT {
            t >= c
        } else {
            true
        };
        if inside {
            1.0
        } else {
            0.0
        }
    });
    let unit_norm: Arc<NormFn> = Arc::new(move |y: &[f64], qq: f64| {
        if qq.is_infinite() {
            return Ok(1.0);
        }
        let (c, side) = (y[0], y[1]);
        let len = if side == SIDE_LEFT {
            c - a
        } else if side == SIDE_RIGHT {
            b - c
        } else {
            b - a
        };
        Ok(len.powf(1.0 / qq))
    });
    Ok(UnitFamily {
        name: format!("interval-char([{a}, {b}])"),
        param_space: ParamSpec::Interval(Interval1D::finite(a, b)?),
        param_dim: 2,
        ambient_q: f64::INFINITY,
        sup_unit_norm: 1.0,
        norm_closed_form: true,
        eval,
        unit_norm,
        validate,
    })
}

/// The one-element dictionary G = {f}: every parameter maps to the same
/// unit. Used for the trivial representation of f by any nonnegative
/// weight of unit mass.
pub fn constant_family(
    f: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    ambient_q: f64,
    norm_of_f: f64,
) -> Result<UnitFamily> {
    if !(norm_of_f >= 0.0) {
        return Err(Error::domain("norm of the constant unit must be nonnegative"));
    }
    let eval: Arc<EvalFn> = Arc::new(move |x: &[f64], _y: &[f64]| f(x));
    let unit_norm: Arc<NormFn> = Arc::new(move |_y: &[f64], qq: f64| {
        if qq == ambient_q || (qq.is_infinite() && ambient_q.is_infinite()) {
            Ok(norm_of_f)
        } else {
            Err(Error::domain("constant family only knows its norm in its own ambient space"))
        }
    });
    Ok(UnitFamily {
        name: "constant-unit".to_string(),
        param_space: ParamSpec::Interval(Interval1D::finite(0.0, 1.0)?),
        param_dim: 1,
        ambient_q,
        sup_unit_norm: norm_of_f,
        norm_closed_form: true,
        eval,
        unit_norm,
        validate: Arc::new(|_| Ok(())),
    })
}

/// Quadrature cross-check of a unit's L^q norm on an all-space domain
/// (radial families only). Falls back from the closed form; used by tests
/// and the honesty checks in bound reports.
pub fn unit_norm_by_quadrature(family: &UnitFamily, y: &[f64], q: f64, d: usize) -> Result<f64> {
    family.validate_param(y)?;
    let dom = DomainSpec::all_space(d)?;
    let y_owned = y.to_vec();
    let g = move |rho: f64| family.eval_unchecked(&vec_with_first(rho, d), &y_owned);
    lq_norm(NdIntegrand::Radial(&g), &dom, q)
}

fn vec_with_first(rho: f64, d: usize) -> Vec<f64> {
    let mut x = vec![0.0; d];
    x[0] = rho;
    x
}
