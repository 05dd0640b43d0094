//! Finite approximants Sum_i c_i Phi(y_i) synthesized from an integral
//! representation by partitioning the parameter space. Coefficients are
//! cell masses c_i = integral_{P_i} w dmu, so Sum |c_i| <= ||w||_1 holds by
//! construction up to quadrature tolerance.

use std::cell::RefCell;

use super::{rep_eval_with, IntegralRep};
use crate::dictionaries::UnitFamily;
use crate::error::{Error, Result};
use crate::numerics::{adaptive_finite, lq_norm_opts, CumulativeMass, DomainSpec, NdIntegrand, QuadOptions, Region};

/// Parameter-space partitioning rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionScheme {
    /// Cells of equal |w|-mass; representative = mass median of the cell.
    MidpointEqualMeasure,
    /// Cells of equal width in the transformed coordinate; representative =
    /// midpoint in that coordinate.
    MidpointUniform,
}

impl PartitionScheme {
    pub fn label(&self) -> &'static str {
        match self {
            PartitionScheme::MidpointEqualMeasure => "midpoint_equal_measure",
            PartitionScheme::MidpointUniform => "midpoint_uniform",
        }
    }
}

/// One network term (c_i, y_i) in the family's packed parameters.
#[derive(Debug, Clone)]
pub struct NetworkTerm {
    pub coeff: f64,
    pub param: Vec<f64>,
}

/// A quadrature network: finite sum of weighted dictionary units, with the
/// partition provenance that produced it.
#[derive(Clone)]
pub struct QuadNetwork {
    pub terms: Vec<NetworkTerm>,
    pub family: UnitFamily,
    pub provenance: String,
}

impl QuadNetwork {
    /// Sum of |c_i| — the discrete counterpart of ||w||_1.
    pub fn coeff_l1(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.abs()).sum()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::fmt::Debug for QuadNetwork {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuadNetwork")
            .field("terms", &self.terms.len())
            .field("coeff_l1", &self.coeff_l1())
            .field("provenance", &self.provenance)
            .finish()
    }
}

/// Partition the parameter space into n cells and form the simple-function
/// analogue of the representation. Requires an interval parameter space
/// (possibly transformed).
pub fn synthesize_network(rep: &IntegralRep, n: usize, scheme: PartitionScheme) -> Result<QuadNetwork> {
    if n == 0 {
        return Err(Error::domain("network size must be >= 1"));
    }
    let interval = rep.quad_interval();
    let (a, b) = interval.unit_bounds();

    // Work in the transformed coordinate z where the interval is finite.
    // Densities carry the transform jacobian; a node rounding onto a
    // singular endpoint is measure-zero and dropped (finite a.e. contract).
    let signed_density = |z: f64| {
        let v = rep.weight_v(interval.from_unit(z)) * interval.jacobian(z);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let abs_density = |z: f64| signed_density(z).abs();

    let mass_opts = QuadOptions { rel_tol: 1e-12, ..Default::default() };
    let cm = CumulativeMass::build(&abs_density, a, b, &mass_opts)?;
    let total = cm.total;

    // Cell boundaries in z.
    let mut cuts = Vec::with_capacity(n + 1);
    cuts.push(a);
    match scheme {
        PartitionScheme::MidpointEqualMeasure => {
            for i in 1..n {
                cuts.push(cm.invert(total * i as f64 / n as f64));
            }
        }
        PartitionScheme::MidpointUniform => {
            for i in 1..n {
                cuts.push(a + (b - a) * i as f64 / n as f64);
            }
        }
    }
    cuts.push(b);

    // Representatives in z.
    let reps: Vec<f64> = match scheme {
        PartitionScheme::MidpointEqualMeasure => (0..n)
            .map(|i| cm.invert(total * (i as f64 + 0.5) / n as f64))
            .collect(),
        PartitionScheme::MidpointUniform => (0..n).map(|i| 0.5 * (cuts[i] + cuts[i + 1])).collect(),
    };

    // Coefficients: signed cell masses by adaptive quadrature per cell.
    let cell_opts = QuadOptions {
        rel_tol: 1e-10,
        abs_tol: (1e-12 * total / n as f64).max(1e-300),
        max_panels: 4_000,
        ..Default::default()
    };
    let mut terms = Vec::with_capacity(n);
    for i in 0..n {
        let (lo, hi) = (cuts[i], cuts[i + 1]);
        let coeff = if hi > lo {
            let out = adaptive_finite(&signed_density, lo, hi, &cell_opts);
            if !out.converged {
                return Err(Error::NonConvergence {
                    value: out.result.value,
                    error_estimate: out.result.error_estimate,
                    evaluations: out.result.evaluations,
                });
            }
            out.result.value
        } else {
            0.0
        };
        let v = interval.from_unit(reps[i]);
        let mut param = vec![0.0f64; rep.family.param_dim];
        rep.param_at(v, &mut param);
        terms.push(NetworkTerm { coeff, param });
    }

    Ok(QuadNetwork {
        terms,
        family: rep.family.clone(),
        provenance: format!("{}: {} cells, scheme {}", rep.name, n, scheme.label()),
    })
}

/// Evaluate the network at x: Sum_i c_i phi(x, y_i), accumulated in term
/// order for determinism.
pub fn network_eval(net: &QuadNetwork, x: &[f64]) -> f64 {
    net.terms
        .iter()
        .map(|t| t.coeff * net.family.eval_unchecked(x, &t.param))
        .sum()
}

/// Ambient-space distance ||rep_eval - network_eval||_{L^q(dom)}.
pub fn approx_error(rep: &IntegralRep, net: &QuadNetwork, q: f64, dom: &DomainSpec) -> Result<f64> {
    approx_error_with(rep, net, q, dom, 1e-5)
}

pub fn approx_error_with(
    rep: &IntegralRep,
    net: &QuadNetwork,
    q: f64,
    dom: &DomainSpec,
    rel_tol: f64,
) -> Result<f64> {
    if net.is_empty() {
        return Err(Error::domain("network has no terms"));
    }
    // The error norm needs only a few digits; the inner parameter integral
    // must sit well below the outer error scale. Differences under ~1e-11
    // are indistinguishable from quadrature noise, which fixes the
    // absolute floor for the outer integral of |diff|^q.
    let inner = QuadOptions { rel_tol: 1e-12, abs_tol: 1e-14, ..Default::default() };
    // big networks spread features across many scales of the target domain,
    // so the outer integral gets a generous panel budget
    let norm_opts = QuadOptions {
        rel_tol,
        abs_tol: 1e-11f64.powf(q),
        max_panels: 120_000,
        ..Default::default()
    };
    let inner_err = RefCell::new(None::<Error>);
    let diff = |x: &[f64]| match rep_eval_with(rep, x, &inner) {
        Ok(v) => v - network_eval(net, x),
        Err(e) => {
            let mut slot = inner_err.borrow_mut();
            if slot.is_none() {
                *slot = Some(e);
            }
            f64::NAN
        }
    };
    let value = if q.is_infinite() {
        let d = dom.dimension;
        if d != 1 {
            return Err(Error::domain("sup-norm approximation error implemented for 1-D targets"));
        }
        let (lo, hi) = match &dom.region {
            Region::Box(b) => b[0],
            Region::AllSpace { decay_window } => (-decay_window, *decay_window),
        };
        let n = 513;
        let mut best = 0.0f64;
        for i in 0..n {
            let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            best = best.max(diff(&[x]).abs());
        }
        best
    } else if rep.target.radial && dom.dimension >= 1 {
        let d = dom.dimension;
        let g = |rho: f64| {
            let mut x = vec![0.0; d];
            x[0] = rho;
            diff(&x)
        };
        lq_norm_opts(NdIntegrand::Radial(&g), dom, q, &norm_opts)?
    } else {
        lq_norm_opts(NdIntegrand::General(&diff), dom, q, &norm_opts)?
    };
    if let Some(e) = inner_err.into_inner() {
        return Err(e);
    }
    Ok(value)
}
