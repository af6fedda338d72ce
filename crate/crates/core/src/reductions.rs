//! Reductions between cycle recovery and path recovery.
//!
//! A cycle estimator can recover a hidden path and vice versa: patch one edge
//! of the observed graph with a fresh draw from the relevant distribution, run
//! the other estimator on each of the C(n,2) patched graphs, and keep the best
//! candidate.  Both directions reuse a single shared draw across all patched
//! graphs and run the inner calls in parallel.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{HamiltonianCycle, HamiltonianPath, WeightedGraph};
use crate::model::{ModelKind, WeightModel};
use crate::rng::{mix_seed, SplitMix64};

/// A named cycle estimator; deterministic given the graph and seed.
#[derive(Clone)]
pub struct CycleEstimator {
    name: String,
    f: Arc<dyn Fn(&WeightedGraph, u64) -> Result<HamiltonianCycle> + Send + Sync>,
}

/// A named Hamiltonian-path estimator; deterministic given the graph and seed.
#[derive(Clone)]
pub struct PathEstimator {
    name: String,
    f: Arc<dyn Fn(&WeightedGraph, u64) -> Result<HamiltonianPath> + Send + Sync>,
}

impl CycleEstimator {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&WeightedGraph, u64) -> Result<HamiltonianCycle> + Send + Sync + 'static,
    {
        Self { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn run(&self, g: &WeightedGraph, seed: u64) -> Result<HamiltonianCycle> {
        (self.f)(g, seed)
    }

    /// Exhaustive maximum-weight cycle search; usable up to n = 10.
    pub fn brute_force() -> Self {
        Self::new("brute-force", |g, _| crate::lp::brute_force_tsp(g))
    }

    /// Degree LP relaxation; half-integral solutions are rounded by seeded
    /// coin flips and accepted only when the result is a Hamiltonian cycle.
    pub fn lp() -> Self {
        Self::new("lp", |g, seed| {
            let p = crate::lp::F2fProblem::new(g.clone())?;
            let sol = crate::lp::solve_f2f(&p)?;
            if let Some(c) = sol.as_hamiltonian_cycle() {
                return Ok(c);
            }
            let rounded = crate::lp::round_halves(&sol, seed);
            crate::lp::cycle_from_support(&rounded).ok_or_else(|| Error::EstimatorFailure {
                msg: "relaxation optimum did not round to a Hamiltonian cycle".into(),
                inner_call: None,
            })
        })
    }

    /// Nearest-neighbor walk from vertex 0.
    pub fn nearest_neighbor() -> Self {
        Self::new("nearest-neighbor", |g, _| crate::greedy::nearest_neighbor(g, 0))
    }

    /// Angular ordering from the second and third eigenvectors.
    pub fn spectral() -> Self {
        Self::new("spectral", |g, _| crate::spectral::spectral_order(g))
    }
}

impl PathEstimator {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&WeightedGraph, u64) -> Result<HamiltonianPath> + Send + Sync + 'static,
    {
        Self { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn run(&self, g: &WeightedGraph, seed: u64) -> Result<HamiltonianPath> {
        (self.f)(g, seed)
    }

    /// Exhaustive maximum-weight path search; usable up to n = 9.
    pub fn brute_force() -> Self {
        Self::new("brute-force", |g, _| brute_force_path(g))
    }
}

/// Draws one observation from P (the on-cycle law) or Q (off-cycle) and maps
/// it through the log-likelihood transform; erased draws carry zero evidence.
fn draw_llr(m: &WeightModel, seed: u64, from_p: bool) -> Result<f64> {
    m.validate()?;
    let mut rng = SplitMix64::new(seed);
    let obs = match m.kind {
        ModelKind::Gaussian { mu } => rng.next_gaussian() + if from_p { mu } else { 0.0 },
        ModelKind::Poisson { lambda, mu } => {
            rng.next_poisson(if from_p { lambda } else { mu }) as f64
        }
        ModelKind::Bernoulli { p, q } => f64::from(rng.next_bernoulli(if from_p { p } else { q })),
    };
    if m.erasure > 0.0 && rng.next_bernoulli(m.erasure) {
        return Ok(0.0);
    }
    m.llr(obs)
}

struct Patched<T> {
    out: T,
    weight: f64,
}

/// Runs the inner estimator on every single-edge patch of `g` and collects the
/// per-edge outcome, preserving edge order.
fn patched_runs<T: Send>(
    g: &WeightedGraph,
    patch_value: f64,
    seed: u64,
    run: impl Fn(&WeightedGraph, u64, usize, usize) -> Result<Option<(T, f64)>> + Send + Sync,
) -> Vec<Result<Option<(T, f64)>>> {
    let ix = g.indexer();
    (0..ix.num_edges())
        .into_par_iter()
        .map(|e| {
            let (i, j) = ix.endpoints(e).expect("edge index in range");
            let mut ge = g.clone();
            ge.set_weight_at(e, patch_value);
            run(&ge, mix_seed(seed, 1, e as u64), i, j)
        })
        .collect()
}

fn best_candidate<T>(per_edge: Vec<Result<Option<(T, f64)>>>, what: &str) -> Result<Patched<T>> {
    let mut best: Option<Patched<T>> = None;
    let mut first_err: Option<(usize, Error)> = None;
    for (e, r) in per_edge.into_iter().enumerate() {
        match r {
            Ok(Some((out, weight))) => {
                if best.as_ref().is_none_or(|b| weight > b.weight) {
                    best = Some(Patched { out, weight });
                }
            }
            Ok(None) => {}
            Err(err) => {
                if first_err.is_none() {
                    first_err = Some((e, err));
                }
            }
        }
    }
    best.ok_or_else(|| match first_err {
        Some((e, err)) => Error::EstimatorFailure {
            msg: format!("no candidate {what}; first inner error: {err}"),
            inner_call: Some(e),
        },
        None => Error::EstimatorFailure {
            msg: format!("no patched run produced a candidate {what}"),
            inner_call: None,
        },
    })
}

/// Recovers a hidden Hamiltonian path with a cycle estimator.
///
/// One shared draw W ~ P is converted to log-likelihood units; for every edge
/// e the weight w_e is replaced by that value and the cycle estimator runs on
/// the patched graph.  Whenever the estimated cycle contains e, removing e
/// yields a candidate path; the candidate of maximum total weight wins (the
/// candidate excludes the patched edge, so its weight is the same in the
/// original and patched graphs).  Ties keep the smallest patched-edge index.
/// Inner-call errors only fail the call when no edge yields a candidate.
///
/// `g` must already be in log-likelihood units (see
/// [`WeightModel::loglik_transform`]), which also guarantees full observation.
pub fn cycle_to_path(
    g: &WeightedGraph,
    est: &CycleEstimator,
    m: &WeightModel,
    seed: u64,
) -> Result<HamiltonianPath> {
    if g.n() < 3 {
        return Err(Error::invalid("cycle_to_path needs at least 3 vertices"));
    }
    g.require_fully_observed("cycle_to_path")?;
    let patch = draw_llr(m, mix_seed(seed, 0, 0), true)?;
    let per_edge = patched_runs(g, patch, seed, |ge, child_seed, i, j| {
        let cycle = est.run(ge, child_seed)?;
        if !cycle.contains_edge(i, j) {
            return Ok(None);
        }
        let path = cycle.remove_edge(i, j)?;
        let weight = path.weight_in(g)?;
        Ok(Some((path, weight)))
    });
    best_candidate(per_edge, "path").map(|c| c.out)
}

/// Recovers a hidden Hamiltonian cycle with a path estimator.
///
/// The symmetric construction: one shared draw W ~ Q patches each edge e in
/// turn; if the estimated path on the patched graph connects e's endpoints,
/// closing it with e gives a candidate cycle.  Candidates are ranked by the
/// weight of their path part, which is equivalent to ranking by patched-graph
/// cycle weight because the closing edge carries the same shared draw in every
/// branch.  Ties keep the smallest patched-edge index.
///
/// `g` must already be in log-likelihood units.
pub fn path_to_cycle(
    g: &WeightedGraph,
    est: &PathEstimator,
    m: &WeightModel,
    seed: u64,
) -> Result<HamiltonianCycle> {
    if g.n() < 3 {
        return Err(Error::invalid("path_to_cycle needs at least 3 vertices"));
    }
    g.require_fully_observed("path_to_cycle")?;
    let patch = draw_llr(m, mix_seed(seed, 0, 0), false)?;
    let per_edge = patched_runs(g, patch, seed, |ge, child_seed, i, j| {
        let path = est.run(ge, child_seed)?;
        let (a, b) = path.endpoints();
        if (a, b) != (i.min(j), i.max(j)) {
            return Ok(None);
        }
        let weight = path.weight_in(g)?;
        Ok(Some((path.close_cycle()?, weight)))
    });
    best_candidate(per_edge, "cycle").map(|c| c.out)
}

const BRUTE_FORCE_PATH_LIMIT: usize = 9;

/// Exhaustive maximum-weight Hamiltonian path by enumerating all n!/2
/// vertex orders.  Ties resolve to the first order in lexicographic
/// enumeration, making the result deterministic.
pub fn brute_force_path(w: &WeightedGraph) -> Result<HamiltonianPath> {
    let n = w.n();
    if n > BRUTE_FORCE_PATH_LIMIT {
        return Err(Error::SizeLimit {
            context: "brute_force_path".into(),
            n,
            limit: BRUTE_FORCE_PATH_LIMIT,
        });
    }
    w.require_fully_observed("brute_force_path")?;

    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut best: Option<(f64, Vec<usize>)> = None;
    // Depth-first over vertex orders; each undirected path is visited twice,
    // once per orientation, and the reversed copy is skipped at the leaf.
    fn dfs(
        w: &WeightedGraph,
        order: &mut Vec<usize>,
        used: &mut [bool],
        acc: f64,
        best: &mut Option<(f64, Vec<usize>)>,
    ) {
        let n = used.len();
        if order.len() == n {
            if order[0] > order[n - 1] {
                return;
            }
            if best.as_ref().is_none_or(|(bw, _)| acc > *bw) {
                *best = Some((acc, order.clone()));
            }
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            let step = match order.last() {
                Some(&u) => w.weight_unchecked(u.min(v), u.max(v)),
                None => 0.0,
            };
            used[v] = true;
            order.push(v);
            dfs(w, order, used, acc + step, best);
            order.pop();
            used[v] = false;
        }
    }
    dfs(w, &mut order, &mut used, 0.0, &mut best);
    let (_, order) = best.ok_or_else(|| Error::invalid("graph has no vertices"))?;
    HamiltonianPath::new(order)
}
