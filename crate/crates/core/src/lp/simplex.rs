//! Bounded-variable revised simplex specialized to the degree system
//! `sum_{e at v} x_e = 2` over the complete graph, with `0 <= x_e <= 1`.
//!
//! The basis has one column per vertex. Structural columns are vertex-pair
//! incidence vectors (two unit entries); one artificial unit column per row
//! drives phase 1. Phase 1 maximizes minus the artificial sum from the
//! all-artificial basis; phase 2 pins artificials to zero and maximizes the
//! edge objective. The basis inverse is a dense LU with partial pivoting
//! plus product-form eta updates, refactored periodically. Pricing is
//! Dantzig, falling back to Bland's rule after a run of degenerate steps so
//! termination is guaranteed.

use crate::error::{Error, Result};
use crate::graph::EdgeIndexer;

const DUAL_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-9;
const DEGENERATE_STEP: f64 = 1e-9;
const SINGULAR_TOL: f64 = 1e-12;
const REFACTOR_INTERVAL: usize = 64;
const RATIO_TIE: f64 = 1e-12;

pub(crate) struct SimplexOutcome {
    /// Structural variable values, edge index order.
    pub x: Vec<f64>,
    /// Row duals at optimality, one per vertex.
    pub duals: Vec<f64>,
}

pub(crate) fn solve_degree_lp(n: usize, w: &[f64]) -> Result<SimplexOutcome> {
    let m = n * (n - 1) / 2;
    debug_assert_eq!(w.len(), m);
    let endpoints: Vec<(usize, usize)> = EdgeIndexer::new(n).edges().collect();
    let mut s = Solver {
        n,
        m,
        endpoints,
        cost: vec![0.0; m],
        art_cost: -1.0,
        art_upper: f64::INFINITY,
        status: vec![VarStatus::Lower; m + n],
        basis: (m..m + n).collect(),
        xb: vec![2.0; n],
        lu: DenseLu::identity(n),
        etas: Vec::new(),
        streak: 0,
    };
    for v in 0..n {
        s.status[m + v] = VarStatus::Basic;
    }

    s.run_phase()?;
    let infeasibility: f64 = (0..n)
        .filter(|&p| s.basis[p] >= m)
        .map(|p| s.xb[p].abs())
        .sum();
    if infeasibility > 1e-7 {
        return Err(Error::Infeasible);
    }

    s.cost.copy_from_slice(w);
    s.art_cost = 0.0;
    s.art_upper = 0.0;
    s.streak = 0;
    s.refactor()?;
    let duals = s.run_phase()?;

    let mut x = vec![0.0; m];
    for e in 0..m {
        if s.status[e] == VarStatus::Upper {
            x[e] = 1.0;
        }
    }
    for p in 0..n {
        let k = s.basis[p];
        if k < m {
            x[k] = s.xb[p];
        }
    }
    Ok(SimplexOutcome { x, duals })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum VarStatus {
    Basic,
    Lower,
    Upper,
}

struct Solver {
    n: usize,
    m: usize,
    endpoints: Vec<(usize, usize)>,
    cost: Vec<f64>,
    art_cost: f64,
    art_upper: f64,
    status: Vec<VarStatus>,
    basis: Vec<usize>,
    xb: Vec<f64>,
    lu: DenseLu,
    etas: Vec<(usize, Vec<f64>)>,
    streak: usize,
}

impl Solver {
    fn cost_of(&self, k: usize) -> f64 {
        if k < self.m {
            self.cost[k]
        } else {
            self.art_cost
        }
    }

    fn upper_of(&self, k: usize) -> f64 {
        if k < self.m {
            1.0
        } else {
            self.art_upper
        }
    }

    fn refactor(&mut self) -> Result<()> {
        let n = self.n;
        let mut b = vec![0.0; n * n];
        for (p, &k) in self.basis.iter().enumerate() {
            if k < self.m {
                let (i, j) = self.endpoints[k];
                b[i * n + p] = 1.0;
                b[j * n + p] = 1.0;
            } else {
                b[(k - self.m) * n + p] = 1.0;
            }
        }
        self.lu = DenseLu::factor(n, b)?;
        self.etas.clear();
        let mut r = vec![2.0; n];
        for e in 0..self.m {
            if self.status[e] == VarStatus::Upper {
                let (i, j) = self.endpoints[e];
                r[i] -= 1.0;
                r[j] -= 1.0;
            }
        }
        self.lu.solve_in_place(&mut r);
        self.xb = r;
        Ok(())
    }

    /// `alpha = B^{-1} A_k`.
    fn ftran(&self, k: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.n];
        if k < self.m {
            let (i, j) = self.endpoints[k];
            v[i] = 1.0;
            v[j] = 1.0;
        } else {
            v[k - self.m] = 1.0;
        }
        self.lu.solve_in_place(&mut v);
        for (p, a) in &self.etas {
            let t = v[*p] / a[*p];
            if t != 0.0 {
                for i in 0..self.n {
                    if i != *p {
                        v[i] -= a[i] * t;
                    }
                }
            }
            v[*p] = t;
        }
        v
    }

    /// `y` with `y^T B = c_B^T`.
    fn duals(&self) -> Vec<f64> {
        let mut r: Vec<f64> = self.basis.iter().map(|&k| self.cost_of(k)).collect();
        for (p, a) in self.etas.iter().rev() {
            let dot: f64 = r.iter().zip(a.iter()).map(|(x, y)| x * y).sum();
            r[*p] += (r[*p] - dot) / a[*p];
        }
        self.lu.solve_transpose_in_place(&mut r);
        r
    }

    /// Pivot to optimality of the current objective; returns the final duals.
    fn run_phase(&mut self) -> Result<Vec<f64>> {
        let limit = 2000 + 200 * self.n;
        for _ in 0..limit {
            let y = self.duals();
            let bland = self.streak >= 5 * self.n;
            let mut entering: Option<(usize, f64)> = None;
            for e in 0..self.m {
                let d = {
                    let (i, j) = self.endpoints[e];
                    self.cost[e] - y[i] - y[j]
                };
                let improving = match self.status[e] {
                    VarStatus::Lower => d > DUAL_TOL,
                    VarStatus::Upper => d < -DUAL_TOL,
                    VarStatus::Basic => false,
                };
                if improving {
                    if bland {
                        entering = Some((e, d));
                        break;
                    }
                    if entering.map_or(true, |(_, best)| d.abs() > best.abs()) {
                        entering = Some((e, d));
                    }
                }
            }
            let Some((q, _)) = entering else {
                return Ok(y);
            };

            let sigma = if self.status[q] == VarStatus::Lower { 1.0 } else { -1.0 };
            let alpha = self.ftran(q);
            // Ratio test; moving to the opposite bound competes with every
            // basic variable hitting one of its own bounds.
            let mut t_best = 1.0; // structural bound span
            let mut leaving: Option<usize> = None;
            for p in 0..self.n {
                if alpha[p].abs() <= PIVOT_TOL {
                    continue;
                }
                let delta = -sigma * alpha[p];
                let k = self.basis[p];
                let ratio = if delta < 0.0 {
                    self.xb[p] / -delta
                } else {
                    (self.upper_of(k) - self.xb[p]) / delta
                }
                .max(0.0);
                if !ratio.is_finite() {
                    continue;
                }
                if ratio < t_best - RATIO_TIE {
                    t_best = ratio;
                    leaving = Some(p);
                } else if ratio <= t_best + RATIO_TIE {
                    if let Some(cur) = leaving {
                        let replace = if bland {
                            self.basis[p] < self.basis[cur]
                        } else {
                            alpha[p].abs() > alpha[cur].abs()
                        };
                        if replace {
                            leaving = Some(p);
                        }
                    }
                }
            }

            self.streak = if t_best <= DEGENERATE_STEP { self.streak + 1 } else { 0 };
            for p in 0..self.n {
                self.xb[p] -= sigma * alpha[p] * t_best;
            }
            match leaving {
                None => {
                    self.status[q] = if sigma > 0.0 { VarStatus::Upper } else { VarStatus::Lower };
                }
                Some(p) => {
                    let out = self.basis[p];
                    let delta_p = -sigma * alpha[p];
                    self.status[out] =
                        if delta_p < 0.0 { VarStatus::Lower } else { VarStatus::Upper };
                    self.xb[p] = if sigma > 0.0 { t_best } else { 1.0 - t_best };
                    self.basis[p] = q;
                    self.status[q] = VarStatus::Basic;
                    self.etas.push((p, alpha));
                    if self.etas.len() >= REFACTOR_INTERVAL {
                        self.refactor()?;
                    }
                }
            }
        }
        Err(Error::NumericDegeneracy(format!(
            "simplex iteration limit {limit} exceeded"
        )))
    }
}

/// Dense LU with partial pivoting; `perm` maps factored row -> original row.
struct DenseLu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl DenseLu {
    fn identity(n: usize) -> Self {
        let mut lu = vec![0.0; n * n];
        for i in 0..n {
            lu[i * n + i] = 1.0;
        }
        DenseLu { n, lu, perm: (0..n).collect() }
    }

    fn factor(n: usize, mut a: Vec<f64>) -> Result<Self> {
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut best = a[k * n + k].abs();
            for i in k + 1..n {
                let v = a[i * n + k].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best < SINGULAR_TOL {
                return Err(Error::NumericDegeneracy(format!(
                    "singular basis matrix at column {k}"
                )));
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let piv = a[k * n + k];
            for i in k + 1..n {
                let l = a[i * n + k] / piv;
                a[i * n + k] = l;
                if l != 0.0 {
                    for j in k + 1..n {
                        a[i * n + j] -= l * a[k * n + j];
                    }
                }
            }
        }
        Ok(DenseLu { n, lu: a, perm })
    }

    /// `v := B^{-1} v`.
    fn solve_in_place(&self, v: &mut [f64]) {
        let n = self.n;
        let mut w: Vec<f64> = (0..n).map(|i| v[self.perm[i]]).collect();
        for i in 0..n {
            let mut s = w[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * w[j];
            }
            w[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = w[i];
            for j in i + 1..n {
                s -= self.lu[i * n + j] * w[j];
            }
            w[i] = s / self.lu[i * n + i];
        }
        v.copy_from_slice(&w);
    }

    /// `v := B^{-T} v`.
    fn solve_transpose_in_place(&self, v: &mut [f64]) {
        let n = self.n;
        let mut a = vec![0.0; n];
        for i in 0..n {
            let mut s = v[i];
            for j in 0..i {
                s -= self.lu[j * n + i] * a[j];
            }
            a[i] = s / self.lu[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = a[i];
            for j in i + 1..n {
                s -= self.lu[j * n + i] * a[j];
            }
            a[i] = s;
        }
        for i in 0..n {
            v[self.perm[i]] = a[i];
        }
    }
}
