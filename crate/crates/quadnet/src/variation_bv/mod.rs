//! Variation norms for finite dictionaries via l1-minimization, and the
//! bounded-variation toolkit on an interval: total variation, Jordan
//! decomposition, staircase approximants, and the 2V + |f(a)| bound that
//! the interval-indicator dictionary certifies.

mod simplex;

use simplex::{solve, SimplexProblem};

use crate::error::{Error, Result};

/// A dictionary of finitely many units sampled on a shared ordered grid;
/// the ambient index q fixes how residuals are measured (infinity for the
/// sup norm).
#[derive(Debug, Clone)]
pub struct FiniteDictionary {
    pub grid: Vec<f64>,
    pub units: Vec<Vec<f64>>,
    pub q: f64,
}

impl FiniteDictionary {
    pub fn new(grid: Vec<f64>, units: Vec<Vec<f64>>, q: f64) -> Result<Self> {
        if grid.len() < 2 {
            return Err(Error::domain("grid needs at least two points"));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::domain("grid must be strictly increasing"));
        }
        if units.is_empty() {
            return Err(Error::domain("dictionary needs at least one unit"));
        }
        for (i, u) in units.iter().enumerate() {
            if u.len() != grid.len() {
                return Err(Error::domain(format!("unit {i} not sampled on the shared grid")));
            }
            if u.iter().all(|v| *v == 0.0) {
                return Err(Error::domain(format!("unit {i} is identically zero")));
            }
        }
        if !(q >= 1.0) {
            return Err(Error::domain(format!("ambient index must be >= 1, got {q}")));
        }
        Ok(FiniteDictionary { grid, units, q })
    }

    /// The interval-indicator dictionary on a uniform grid over [a, b]:
    /// the full interval plus, for every interior grid point c, the
    /// indicators of [a, c] and [c, b]. Spans every sampled function on
    /// that grid.
    pub fn interval_indicators(a: f64, b: f64, points: usize) -> Result<Self> {
        if points < 3 {
            return Err(Error::domain("need at least 3 grid points"));
        }
        if !(a < b) {
            return Err(Error::domain("need a < b"));
        }
        let grid: Vec<f64> =
            (0..points).map(|i| a + (b - a) * i as f64 / (points - 1) as f64).collect();
        let mut units = Vec::with_capacity(2 * (points - 2) + 1);
        units.push(vec![1.0; points]); // chi_[a,b]
        for c in 1..points - 1 {
            let mut left = vec![0.0; points];
            left[..=c].fill(1.0); // chi_[a, grid[c]]
            units.push(left);
            let mut right = vec![0.0; points];
            right[c..].fill(1.0); // chi_[grid[c], b]
            units.push(right);
        }
        FiniteDictionary::new(grid, units, f64::INFINITY)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Residual at numerical-zero level.
    Exact,
    /// Residual within the requested tolerance.
    WithinTol,
    /// Not reachable within tolerance (reported through the error path).
    Infeasible,
}

/// Outcome of the variation-norm LP.
#[derive(Debug, Clone)]
pub struct L1MinSolution {
    pub coefficients: Vec<f64>,
    /// Sum of |c_i| at the optimum.
    pub objective: f64,
    /// Discrete-L^q mismatch of the returned combination.
    pub residual: f64,
    pub status: SolveStatus,
}

const EXACT_RESIDUAL: f64 = 1e-9;
const LP_MAX_ITERS: usize = 200_000;

/// Discrete L^q mismatch on the grid: sup norm for q = infinity,
/// trapezoid-weighted (Sum |r|^q dx)^{1/q} otherwise.
fn discrete_residual(grid: &[f64], r: &[f64], q: f64) -> f64 {
    if q.is_infinite() {
        return r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    }
    let n = grid.len();
    let mut acc = 0.0;
    for i in 0..n {
        let lo = if i == 0 { grid[0] } else { 0.5 * (grid[i - 1] + grid[i]) };
        let hi = if i + 1 == n { grid[n - 1] } else { 0.5 * (grid[i] + grid[i + 1]) };
        acc += r[i].abs().powf(q) * (hi - lo);
    }
    acc.powf(1.0 / q)
}

/// Minimize Sum |c_i| subject to |Sum_i c_i g_i(x_j) - f(x_j)| <= tol at
/// every grid point, via the positive/negative split c = s - t solved by
/// the in-repo simplex. `tol <= 1e-12` requests exact interpolation.
pub fn variation_norm_finite(f: &[f64], dict: &FiniteDictionary, tol: f64) -> Result<L1MinSolution> {
    let m = dict.grid.len();
    if f.len() != m {
        return Err(Error::domain("target not sampled on the dictionary grid"));
    }
    if !(tol >= 0.0) {
        return Err(Error::domain("tolerance must be nonnegative"));
    }
    let k = dict.units.len();
    let exact = tol <= 1e-12;

    let (rows, cols) = if exact { (m, 2 * k) } else { (2 * m, 2 * k + 2 * m) };
    let mut a = vec![0.0f64; rows * cols];
    let mut b = vec![0.0f64; rows];
    let mut c = vec![0.0f64; cols];
    for j in 0..2 * k {
        c[j] = 1.0;
    }
    if exact {
        for i in 0..m {
            for (j, unit) in dict.units.iter().enumerate() {
                a[i * cols + 2 * j] = unit[i];
                a[i * cols + 2 * j + 1] = -unit[i];
            }
            b[i] = f[i];
        }
    } else {
        // A c + u = f + tol,  A c - v = f - tol,  u, v >= 0
        for i in 0..m {
            for (j, unit) in dict.units.iter().enumerate() {
                a[i * cols + 2 * j] = unit[i];
                a[i * cols + 2 * j + 1] = -unit[i];
                a[(m + i) * cols + 2 * j] = unit[i];
                a[(m + i) * cols + 2 * j + 1] = -unit[i];
            }
            a[i * cols + 2 * k + i] = 1.0;
            a[(m + i) * cols + 2 * k + m + i] = -1.0;
            b[i] = f[i] + tol;
            b[m + i] = f[i] - tol;
        }
    }

    let sol = solve(&SimplexProblem { m: rows, n: cols, a, b, c }, LP_MAX_ITERS)?;

    let coefficients: Vec<f64> = (0..k).map(|j| sol.x[2 * j] - sol.x[2 * j + 1]).collect();
    let objective: f64 = coefficients.iter().map(|v| v.abs()).sum();
    let mut r = vec![0.0f64; m];
    for i in 0..m {
        let mut v = 0.0;
        for (j, unit) in dict.units.iter().enumerate() {
            v += coefficients[j] * unit[i];
        }
        r[i] = v - f[i];
    }
    let residual = discrete_residual(&dict.grid, &r, dict.q);
    let scale = 1.0 + f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let status = if residual <= EXACT_RESIDUAL * scale {
        SolveStatus::Exact
    } else if residual <= tol * (1.0 + 1e-9) {
        SolveStatus::WithinTol
    } else {
        return Err(Error::Infeasible { residual });
    };
    Ok(L1MinSolution { coefficients, objective, residual, status })
}

/// Sum of |successive differences| over the sample grid. Exact for
/// piecewise-monotone samplings finer than the monotonicity intervals;
/// a lower bound for the true variation otherwise.
pub fn total_variation(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::domain("total variation needs at least two samples"));
    }
    if samples.windows(2).any(|w| !(w[0].0 < w[1].0)) {
        return Err(Error::domain("sample grid must be strictly increasing"));
    }
    Ok(samples.windows(2).map(|w| (w[1].1 - w[0].1).abs()).sum())
}

/// A sampled function of bounded variation on [a, b]. The samples are
/// taken as the canonical representative (right-continuous at interior
/// points, left-continuous at b), which is faithful for continuous data
/// and for piecewise-constant data with breakpoints on the grid.
#[derive(Debug, Clone)]
pub struct BVFunction {
    pub samples: Vec<(f64, f64)>,
    /// Total variation over the sample grid.
    pub v: f64,
}

impl BVFunction {
    pub fn from_samples(samples: Vec<(f64, f64)>) -> Result<Self> {
        let v = total_variation(&samples)?;
        Ok(BVFunction { samples, v })
    }

    /// |f*(a)|, the constant K of the Jordan decomposition.
    pub fn abs_at_left(&self) -> f64 {
        self.samples[0].1.abs()
    }
}

/// Jordan parts f1(x) = V(f, [a, x]) + K and f2 = f1 - f with K = |f*(a)|:
/// both nondecreasing and nonnegative, reconstructing f exactly on the grid.
pub fn jordan_decomposition(f: &BVFunction) -> (Vec<f64>, Vec<f64>) {
    let k = f.abs_at_left();
    let mut f1 = Vec::with_capacity(f.samples.len());
    let mut f2 = Vec::with_capacity(f.samples.len());
    let mut running = 0.0;
    let mut prev = f.samples[0].1;
    for &(_, y) in &f.samples {
        running += (y - prev).abs();
        prev = y;
        f1.push(running + k);
        f2.push(running + k - y);
    }
    (f1, f2)
}

/// Prop-9.1-style bound 2 V(f*, [a,b]) + |f*(a)| on the dictionary
/// variation norm of f.
pub fn bv_variation_bound(f: &BVFunction) -> f64 {
    2.0 * f.v + f.abs_at_left()
}

/// Piecewise-constant approximant of a nondecreasing function, with level
/// steps of height <= 1/n read off the sublevel breakpoints.
#[derive(Debug, Clone)]
pub struct Staircase {
    /// a = a_1 < ... < a_m = b.
    pub breakpoints: Vec<f64>,
    /// Value on [a_i, a_{i+1}) (last piece closed); levels.len() = m - 1.
    pub levels: Vec<f64>,
}

impl Staircase {
    pub fn eval(&self, x: f64) -> f64 {
        let m = self.breakpoints.len();
        if x >= self.breakpoints[m - 1] {
            return self.levels[m - 2];
        }
        let idx = self.breakpoints.partition_point(|&bp| bp <= x);
        self.levels[idx.saturating_sub(1).min(self.levels.len() - 1)]
    }

    /// Sum of |coefficients| of the telescoped suffix-indicator
    /// representation g(a_1) chi_[a_1,b] + Sum (g(a_i) - g(a_{i-1}))
    /// chi_[a_i,b]; for nonnegative nondecreasing input this certifies a
    /// variation norm <= g(b).
    pub fn suffix_certificate(&self) -> f64 {
        let mut acc = self.levels[0].abs();
        for w in self.levels.windows(2) {
            acc += (w[1] - w[0]).abs();
        }
        acc
    }
}

/// The sublevel-set construction: a_i = min{ x in grid : g(a) + (i-1)/n
/// <= g(x) }, levels g(a_i). The gap to g at sample points stays below 1/n
/// for data obeying the canonical continuity conventions (in particular
/// left-continuity at b; a jump at the final sample lives on a null set
/// and is not chased).
pub fn staircase_approx(g: &[(f64, f64)], n: usize) -> Result<Staircase> {
    if n == 0 {
        return Err(Error::domain("staircase resolution n must be >= 1"));
    }
    if g.len() < 2 {
        return Err(Error::domain("need at least two samples"));
    }
    if g.windows(2).any(|w| !(w[0].0 < w[1].0)) {
        return Err(Error::domain("sample grid must be strictly increasing"));
    }
    if g.windows(2).any(|w| w[1].1 < w[0].1 - 1e-12) {
        return Err(Error::domain("staircase construction requires nondecreasing data"));
    }
    let a = g[0].0;
    let b = g[g.len() - 1].0;
    let ga = g[0].1;
    let gb = g[g.len() - 1].1;

    let mut breakpoints = vec![a];
    let mut cursor = 0usize;
    let mut i = 2usize;
    loop {
        let threshold = ga + (i as f64 - 1.0) / n as f64;
        if threshold > gb {
            break;
        }
        while cursor < g.len() && g[cursor].1 < threshold {
            cursor += 1;
        }
        if cursor >= g.len() {
            break;
        }
        let x = g[cursor].0;
        if x > *breakpoints.last().unwrap() && x < b {
            breakpoints.push(x);
        }
        i += 1;
    }
    breakpoints.push(b);

    let levels: Vec<f64> = breakpoints[..breakpoints.len() - 1]
        .iter()
        .map(|&bp| {
            let idx = g.partition_point(|&(x, _)| x < bp);
            g[idx].1
        })
        .collect();
    Ok(Staircase { breakpoints, levels })
}
