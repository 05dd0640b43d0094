//! Small dense two-phase simplex for the l1-minimization LPs. Bland's rule
//! (smallest eligible index) everywhere, so the solver cannot cycle; an
//! iteration cap guards against numerical stalls.

use crate::error::{Error, Result};

const EPS: f64 = 1e-9;

/// min c.x subject to A x = b, x >= 0 (dense, row-major A).
pub(crate) struct SimplexProblem {
    pub m: usize,
    pub n: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

pub(crate) struct SimplexSolution {
    pub x: Vec<f64>,
}

struct Tableau {
    m: usize,
    /// total columns including artificials and rhs
    w: usize,
    /// first artificial column
    art0: usize,
    t: Vec<f64>,
    obj: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.t[i * self.w + self.w - 1]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.w;
        let p = self.t[row * w + col];
        for j in 0..w {
            self.t[row * w + j] /= p;
        }
        self.t[row * w + col] = 1.0;
        for i in 0..self.m {
            if i == row {
                continue;
            }
            let f = self.t[i * w + col];
            if f != 0.0 {
                for j in 0..w {
                    self.t[i * w + j] -= f * self.t[row * w + j];
                }
                self.t[i * w + col] = 0.0;
            }
        }
        let f = self.obj[col];
        if f != 0.0 {
            for j in 0..w {
                self.obj[j] -= f * self.t[row * w + j];
            }
            self.obj[col] = 0.0;
        }
        self.basis[row] = col;
    }

    /// Bland's rule iteration until optimal; `allow` filters entering
    /// columns (used to ban artificials in phase 2).
    fn run<F: Fn(usize) -> bool>(&mut self, allow: F, max_iters: usize) -> Result<()> {
        for _ in 0..max_iters {
            let Some(col) = (0..self.w - 1).find(|&j| allow(j) && self.obj[j] < -EPS) else {
                return Ok(());
            };
            let mut pick: Option<(f64, usize, usize)> = None; // (ratio, basis var, row)
            for i in 0..self.m {
                let a = self.t[i * self.w + col];
                if a > EPS {
                    let ratio = self.rhs(i) / a;
                    let cand = (ratio, self.basis[i], i);
                    pick = match pick {
                        None => Some(cand),
                        Some(best) => {
                            if ratio < best.0 - EPS || (ratio < best.0 + EPS && cand.1 < best.1) {
                                Some(cand)
                            } else {
                                Some(best)
                            }
                        }
                    };
                }
            }
            let Some((_, _, row)) = pick else {
                return Err(Error::NumericalFailure("simplex objective unbounded below".into()));
            };
            self.pivot(row, col);
        }
        Err(Error::NumericalFailure("simplex cycling guard exceeded".into()))
    }
}

pub(crate) fn solve(p: &SimplexProblem, max_iters: usize) -> Result<SimplexSolution> {
    let (m, n) = (p.m, p.n);
    assert_eq!(p.a.len(), m * n);
    assert_eq!(p.b.len(), m);
    assert_eq!(p.c.len(), n);

    let w = n + m + 1;
    let mut t = vec![0.0f64; m * w];
    for i in 0..m {
        let flip = if p.b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i * w + j] = flip * p.a[i * n + j];
        }
        t[i * w + n + i] = 1.0;
        t[i * w + w - 1] = flip * p.b[i];
    }
    // phase-1 objective: minimize the artificial mass
    let mut obj = vec![0.0f64; w];
    for j in 0..n {
        obj[j] = -(0..m).map(|i| t[i * w + j]).sum::<f64>();
    }
    obj[w - 1] = -(0..m).map(|i| t[i * w + w - 1]).sum::<f64>();
    let basis: Vec<usize> = (0..m).map(|i| n + i).collect();

    let mut tab = Tableau { m, w, art0: n, t, obj, basis };
    tab.run(|_| true, max_iters)?;

    let infeas = -tab.obj[tab.w - 1];
    let scale = 1.0 + p.b.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if infeas > 1e-7 * scale {
        return Err(Error::Infeasible { residual: infeas });
    }

    // drive leftover artificials out of the basis; drop redundant rows
    let mut drop_rows = Vec::new();
    for i in 0..tab.m {
        if tab.basis[i] >= tab.art0 {
            if let Some(j) = (0..tab.art0).find(|&j| tab.t[i * tab.w + j].abs() > EPS) {
                tab.pivot(i, j);
            } else {
                drop_rows.push(i);
            }
        }
    }
    if !drop_rows.is_empty() {
        let keep: Vec<usize> = (0..tab.m).filter(|i| !drop_rows.contains(i)).collect();
        let mut t2 = Vec::with_capacity(keep.len() * tab.w);
        let mut basis2 = Vec::with_capacity(keep.len());
        for &i in &keep {
            t2.extend_from_slice(&tab.t[i * tab.w..(i + 1) * tab.w]);
            basis2.push(tab.basis[i]);
        }
        tab.t = t2;
        tab.basis = basis2;
        tab.m = keep.len();
    }

    // phase 2: real objective, artificials banned
    for j in 0..w {
        tab.obj[j] = if j < n { p.c[j] } else { 0.0 };
    }
    for i in 0..tab.m {
        let cb = if tab.basis[i] < n { p.c[tab.basis[i]] } else { 0.0 };
        if cb != 0.0 {
            for j in 0..w {
                tab.obj[j] -= cb * tab.t[i * w + j];
            }
        }
    }
    let art0 = tab.art0;
    tab.run(|j| j < art0, max_iters)?;

    let mut x = vec![0.0f64; n];
    for i in 0..tab.m {
        if tab.basis[i] < n {
            x[tab.basis[i]] = tab.rhs(i).max(0.0);
        }
    }
    Ok(SimplexSolution { x })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_lp_by_hand() {
        // min x + y s.t. x + 2y = 4, 3x + y = 7  ->  x = 2, y = 1
        let p = SimplexProblem {
            m: 2,
            n: 2,
            a: vec![1.0, 2.0, 3.0, 1.0],
            b: vec![4.0, 7.0],
            c: vec![1.0, 1.0],
        };
        let s = solve(&p, 1000).unwrap();
        assert!((s.x[0] - 2.0).abs() < 1e-9);
        assert!((s.x[1] - 1.0).abs() < 1e-9);
        let objective: f64 = s.x.iter().zip(&p.c).map(|(x, c)| x * c).sum();
        assert!((objective - 3.0).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasibility() {
        // x = 1 and x = 2 simultaneously
        let p = SimplexProblem { m: 2, n: 1, a: vec![1.0, 1.0], b: vec![1.0, 2.0], c: vec![1.0] };
        assert!(matches!(solve(&p, 1000), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn redundant_rows_are_dropped() {
        // duplicated constraint
        let p = SimplexProblem {
            m: 2,
            n: 2,
            a: vec![1.0, 1.0, 1.0, 1.0],
            b: vec![2.0, 2.0],
            c: vec![1.0, 2.0],
        };
        let s = solve(&p, 1000).unwrap();
        assert!((s.x[0] - 2.0).abs() < 1e-9, "cheaper variable takes it all");
        assert!(s.x[1].abs() < 1e-9);
    }

    #[test]
    fn negative_rhs_handled_by_row_flip() {
        // min x1 + x2, -x1 + 0 x2 = -3  ->  x1 = 3
        let p = SimplexProblem { m: 1, n: 2, a: vec![-1.0, 0.0], b: vec![-3.0], c: vec![1.0, 1.0] };
        let s = solve(&p, 1000).unwrap();
        assert!((s.x[0] - 3.0).abs() < 1e-9);
    }
}
