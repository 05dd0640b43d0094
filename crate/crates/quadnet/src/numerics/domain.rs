use crate::error::{Error, Result};

/// How an (possibly unbounded) interval is pulled back to a finite one
/// before quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// No change of variable; both endpoints finite.
    Identity,
    /// `t = a - ln(u)` (or mirrored for an upper-infinite bound); maps a
    /// semi-infinite interval onto (0, 1). Suited to exponentially decaying
    /// integrands.
    SemiInfiniteExp,
    /// `x = atanh(u)` on (-1, 1) for the whole real line; log-compresses
    /// both tails.
    DoublyInfiniteTanh,
}

/// A 1-D integration interval, possibly unbounded, together with the
/// change of variable used to reach a finite domain.
#[derive(Debug, Clone, Copy)]
pub struct Interval1D {
    pub lo: f64,
    pub hi: f64,
    pub transform: Transform,
}

impl Interval1D {
    /// Finite interval [lo, hi], no transform.
    pub fn finite(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::domain(format!(
                "finite interval requires lo < hi with finite bounds, got [{lo}, {hi}]"
            )));
        }
        Ok(Interval1D { lo, hi, transform: Transform::Identity })
    }

    /// Semi-infinite interval (lo, +inf), exponential substitution.
    pub fn semi_infinite(lo: f64) -> Result<Self> {
        if !lo.is_finite() {
            return Err(Error::domain("semi-infinite interval needs a finite lower bound"));
        }
        Ok(Interval1D { lo, hi: f64::INFINITY, transform: Transform::SemiInfiniteExp })
    }

    /// Semi-infinite interval (-inf, hi), mirrored exponential substitution.
    pub fn semi_infinite_below(hi: f64) -> Result<Self> {
        if !hi.is_finite() {
            return Err(Error::domain("semi-infinite interval needs a finite upper bound"));
        }
        Ok(Interval1D { lo: f64::NEG_INFINITY, hi, transform: Transform::SemiInfiniteExp })
    }

    /// The whole real line, tanh-type substitution.
    pub fn real_line() -> Self {
        Interval1D {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
            transform: Transform::DoublyInfiniteTanh,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo < self.hi) {
            return Err(Error::domain(format!("interval requires lo < hi, got [{}, {}]", self.lo, self.hi)));
        }
        let unbounded = !self.lo.is_finite() || !self.hi.is_finite();
        if unbounded && self.transform == Transform::Identity {
            return Err(Error::domain("infinite endpoints require a non-identity transform"));
        }
        match self.transform {
            Transform::SemiInfiniteExp => {
                if self.lo.is_finite() == self.hi.is_finite() {
                    return Err(Error::domain("exp transform expects exactly one infinite endpoint"));
                }
            }
            Transform::DoublyInfiniteTanh => {
                if self.lo.is_finite() || self.hi.is_finite() {
                    return Err(Error::domain("tanh transform expects both endpoints infinite"));
                }
            }
            Transform::Identity => {}
        }
        Ok(())
    }

    /// Finite quadrature bounds in the transformed coordinate.
    pub(crate) fn unit_bounds(&self) -> (f64, f64) {
        match self.transform {
            Transform::Identity => (self.lo, self.hi),
            Transform::SemiInfiniteExp => (0.0, 1.0),
            Transform::DoublyInfiniteTanh => (-1.0, 1.0),
        }
    }

    /// Point in the original coordinate for a transformed-coordinate `u`.
    pub(crate) fn from_unit(&self, u: f64) -> f64 {
        match self.transform {
            Transform::Identity => u,
            Transform::SemiInfiniteExp => {
                if self.hi.is_finite() {
                    self.hi + u.ln()
                } else {
                    self.lo - u.ln()
                }
            }
            Transform::DoublyInfiniteTanh => u.atanh(),
        }
    }

    /// |dt/du| for the substitution at transformed coordinate `u`.
    pub(crate) fn jacobian(&self, u: f64) -> f64 {
        match self.transform {
            Transform::Identity => 1.0,
            Transform::SemiInfiniteExp => 1.0 / u,
            Transform::DoublyInfiniteTanh => 1.0 / (1.0 - u * u),
        }
    }
}

/// Outcome of a quadrature call: value, a computed error bound, and the
/// number of integrand evaluations spent.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
}

/// Region of R^d carrying Lebesgue measure.
#[derive(Debug, Clone)]
pub enum Region {
    /// Finite box with ordered bounds per axis.
    Box(Vec<(f64, f64)>),
    /// All of R^d; `decay_window` is the half-width used for sup-norm grids
    /// (integration itself uses tail substitutions, not truncation).
    AllSpace { decay_window: f64 },
}

/// Integration domain (Omega, Lebesgue) in dimension d.
#[derive(Debug, Clone)]
pub struct DomainSpec {
    pub dimension: usize,
    pub region: Region,
}

impl DomainSpec {
    pub fn unit_box(d: usize) -> Result<Self> {
        Self::boxed(vec![(0.0, 1.0); d])
    }

    pub fn boxed(bounds: Vec<(f64, f64)>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::domain("box needs at least one axis"));
        }
        for &(lo, hi) in &bounds {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::domain(format!("box bounds must be finite and ordered, got ({lo}, {hi})")));
            }
        }
        Ok(DomainSpec { dimension: bounds.len(), region: Region::Box(bounds) })
    }

    pub fn all_space(d: usize) -> Result<Self> {
        Self::all_space_with_window(d, 8.0)
    }

    pub fn all_space_with_window(d: usize, decay_window: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("dimension must be >= 1"));
        }
        if !(decay_window > 0.0) {
            return Err(Error::domain("decay window must be positive"));
        }
        Ok(DomainSpec { dimension: d, region: Region::AllSpace { decay_window } })
    }
}
