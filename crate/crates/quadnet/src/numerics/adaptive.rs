//! Globally adaptive bisection driven by the embedded-rule error estimate.
//!
//! The worst panel (largest error bound) is split first; panels that reach
//! the depth cap are frozen. Termination requires the summed error bound to
//! drop below `max(rel_tol * |value|, abs_tol, roundoff floor)`, so the
//! reported `error_estimate` is a computed bound, not a guess.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::domain::{Interval1D, QuadResult};
use super::gauss_kronrod::{qk15, QK15_EVALS};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Relative tolerance in (0, 1).
    pub rel_tol: f64,
    /// Absolute tolerance floor (0 disables).
    pub abs_tol: f64,
    /// Budget: maximum number of panels.
    pub max_panels: usize,
    /// Maximum bisection depth of a single panel.
    pub max_depth: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { rel_tol: 1e-10, abs_tol: 0.0, max_panels: 30_000, max_depth: 100 }
    }
}

impl QuadOptions {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadOptions { rel_tol, ..Default::default() }
    }
}

/// One converged (or frozen) panel of an adaptive run, in the transformed
/// coordinate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
    pub error: f64,
}

struct HeapEntry {
    error: f64,
    seq: u64,
    lo: f64,
    hi: f64,
    value: f64,
    res_abs: f64,
    depth: u32,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.seq == other.seq
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Largest error first; sequence number breaks ties deterministically.
        self.error
            .total_cmp(&other.error)
            .then_with(|| Reverse(self.seq).cmp(&Reverse(other.seq)))
    }
}

pub(crate) struct AdaptiveOutcome {
    pub result: QuadResult,
    pub panels: Vec<Panel>,
    pub converged: bool,
}

/// Adaptive integration of `g` over the finite interval [a, b].
pub(crate) fn adaptive_finite<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64, opts: &QuadOptions) -> AdaptiveOutcome {
    let initial = 8usize.min(opts.max_panels.max(1));
    let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    let mut seq = 0u64;
    let mut evaluations = 0u64;
    let mut n_panels = 0usize;

    let mut total_value = 0.0;
    let mut total_error = 0.0;
    let mut total_res_abs = 0.0;

    let push = |heap: &mut BinaryHeap<HeapEntry>,
                    lo: f64,
                    hi: f64,
                    depth: u32,
                    seq: &mut u64,
                    evals: &mut u64| {
        let est = qk15(g, lo, hi);
        *evals += QK15_EVALS;
        let err = if est.error.is_nan() { f64::INFINITY } else { est.error };
        heap.push(HeapEntry { error: err, seq: *seq, lo, hi, value: est.value, res_abs: est.res_abs, depth });
        *seq += 1;
        (est.value, err, est.res_abs)
    };

    let width = (b - a) / initial as f64;
    for i in 0..initial {
        let lo = a + i as f64 * width;
        let hi = if i + 1 == initial { b } else { a + (i + 1) as f64 * width };
        let (v, e, r) = push(&mut heap, lo, hi, 0, &mut seq, &mut evaluations);
        total_value += v;
        total_error += e;
        total_res_abs += r;
        n_panels += 1;
    }

    // The embedded-rule estimate cannot drop below per-panel roundoff, which
    // sums to a fixed multiple of the |f| mass no matter how finely we split;
    // treat that level as converged.
    let threshold = |value: f64, res_abs: f64, opts: &QuadOptions| {
        (opts.rel_tol * value.abs())
            .max(opts.abs_tol)
            .max(1e-13 * res_abs)
    };

    let mut converged = total_error <= threshold(total_value, total_res_abs, opts);
    while !converged {
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= opts.max_depth || n_panels >= opts.max_panels {
            frozen.push(Panel { lo: worst.lo, hi: worst.hi, value: worst.value, error: worst.error });
            // Remaining heap panels all have smaller error; if the sum still
            // exceeds threshold we keep splitting them, so only freeze this one.
            if n_panels >= opts.max_panels {
                // Budget exhausted entirely: freeze everything left.
                while let Some(p) = heap.pop() {
                    frozen.push(Panel { lo: p.lo, hi: p.hi, value: p.value, error: p.error });
                }
                break;
            }
            continue;
        }

        total_value -= worst.value;
        total_error -= worst.error;
        total_res_abs -= worst.res_abs;

        let mid = 0.5 * (worst.lo + worst.hi);
        for (lo, hi) in [(worst.lo, mid), (mid, worst.hi)] {
            let (v, e, r) = push(&mut heap, lo, hi, worst.depth + 1, &mut seq, &mut evaluations);
            total_value += v;
            total_error += e;
            total_res_abs += r;
        }
        n_panels += 1;

        converged = total_error <= threshold(total_value, total_res_abs, opts);
    }

    // Deterministic final sums: panels in interval order.
    let mut panels: Vec<Panel> = frozen;
    panels.extend(heap.into_iter().map(|p| Panel { lo: p.lo, hi: p.hi, value: p.value, error: p.error }));
    panels.sort_by(|p, q| p.lo.total_cmp(&q.lo));

    let value: f64 = panels.iter().map(|p| p.value).sum();
    let error: f64 = panels.iter().map(|p| p.error).sum();
    let converged =
        value.is_finite() && error <= threshold(value, total_res_abs, opts);

    AdaptiveOutcome {
        result: QuadResult { value, error_estimate: error, evaluations },
        panels,
        converged,
    }
}

/// Adaptive quadrature over `dom`, transformed to a finite interval first.
///
/// The error estimate is the summed embedded-rule bound over all panels.
/// Returns `NonConvergence` when the panel budget or depth cap is exhausted
/// with the bound still above tolerance (the signal used to detect divergent
/// integrals).
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, dom: &Interval1D, rel_tol: f64) -> Result<QuadResult> {
    integrate_1d_with(f, dom, &QuadOptions::with_rel_tol(rel_tol))
}

pub fn integrate_1d_with<F: Fn(f64) -> f64>(f: F, dom: &Interval1D, opts: &QuadOptions) -> Result<QuadResult> {
    dom.validate()?;
    if !(opts.rel_tol > 0.0 && opts.rel_tol < 1.0) {
        return Err(Error::domain(format!("rel_tol must lie in (0, 1), got {}", opts.rel_tol)));
    }
    let (a, b) = dom.unit_bounds();
    // Integrands need only be finite a.e.; a node that rounds exactly onto a
    // singular endpoint samples a measure-zero point and is dropped.
    let g = |u: f64| {
        let v = f(dom.from_unit(u)) * dom.jacobian(u);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let outcome = adaptive_finite(&g, a, b, opts);
    if outcome.converged {
        Ok(outcome.result)
    } else {
        Err(Error::NonConvergence {
            value: outcome.result.value,
            error_estimate: outcome.result.error_estimate,
            evaluations: outcome.result.evaluations,
        })
    }
}

/// Cumulative-mass view of a converged adaptive run: supports prefix
/// integrals and inversion (quantiles) of a fixed nonnegative density in
/// the transformed coordinate. Used by the equal-mass network synthesizer.
pub(crate) struct CumulativeMass<'a, G: Fn(f64) -> f64> {
    density: &'a G,
    panels: Vec<Panel>,
    prefix: Vec<f64>,
    pub total: f64,
    pub evaluations: std::cell::Cell<u64>,
}

impl<'a, G: Fn(f64) -> f64> CumulativeMass<'a, G> {
    /// `density` must be nonnegative on [a, b].
    pub fn build(density: &'a G, a: f64, b: f64, opts: &QuadOptions) -> Result<Self> {
        let outcome = adaptive_finite(density, a, b, opts);
        if !outcome.converged {
            return Err(Error::NonConvergence {
                value: outcome.result.value,
                error_estimate: outcome.result.error_estimate,
                evaluations: outcome.result.evaluations,
            });
        }
        let mut prefix = Vec::with_capacity(outcome.panels.len() + 1);
        let mut acc = 0.0;
        prefix.push(0.0);
        for p in &outcome.panels {
            acc += p.value;
            prefix.push(acc);
        }
        Ok(CumulativeMass {
            density,
            panels: outcome.panels,
            prefix,
            total: acc,
            evaluations: std::cell::Cell::new(outcome.result.evaluations),
        })
    }

    fn sub_integral(&self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return 0.0;
        }
        // Converged panels are smooth at their own scale; one refinement
        // level guards against the rare rough spot.
        let whole = qk15(self.density, lo, hi);
        let mid = 0.5 * (lo + hi);
        let left = qk15(self.density, lo, mid);
        let right = qk15(self.density, mid, hi);
        self.evaluations.set(self.evaluations.get() + 3 * QK15_EVALS);
        let refined = left.value + right.value;
        if (whole.value - refined).abs() > 1e-12 * refined.abs().max(1e-300) {
            refined
        } else {
            whole.value
        }
    }

    /// Mass of [a, x].
    pub fn mass_upto(&self, x: f64) -> f64 {
        let Some(first) = self.panels.first() else { return 0.0 };
        if x <= first.lo {
            return 0.0;
        }
        if let Some(last) = self.panels.last() {
            if x >= last.hi {
                return self.total;
            }
        }
        let idx = self
            .panels
            .partition_point(|p| p.hi <= x)
            .min(self.panels.len() - 1);
        let p = self.panels[idx];
        self.prefix[idx] + self.sub_integral(p.lo, x.min(p.hi))
    }

    /// Smallest x with mass_upto(x) >= target, by bisection.
    pub fn invert(&self, target: f64) -> f64 {
        let (a, b) = (self.panels[0].lo, self.panels[self.panels.len() - 1].hi);
        if target <= 0.0 {
            return a;
        }
        if target >= self.total {
            return b;
        }
        let mut lo = a;
        let mut hi = b;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.mass_upto(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * (b - a).abs() {
                break;
            }
        }
        0.5 * (lo + hi)
    }
}
