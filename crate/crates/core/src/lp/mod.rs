//! Fractional 2-factor relaxation: maximize `<w, x>` subject to
//! `sum_{e at v} x_e = 2` and `0 <= x_e <= 1`.
//!
//! Every vertex of this polytope is half-integral, and its support
//! decomposes into plain cycles plus components in which half-weight odd
//! cycles are joined by full-weight paths. [`solve_f2f`] returns such a
//! vertex with the support classified; [`certify`] checks the dual
//! certificate that proves a known cycle is the unique optimum without
//! running the solver. Exhaustive references for small `n`
//! ([`brute_force_tsp`], [`brute_force_2factor`]) anchor the tests.

mod simplex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeIndexer, EdgeSubset, HamiltonianCycle, WeightedGraph};
use crate::rng::SplitMix64;

const SNAP_TOL: f64 = 1e-6;
const BRUTE_FORCE_LIMIT: usize = 10;

/// Input to [`solve_f2f`]: a complete graph of finite log-likelihood-ratio
/// weights on at least three vertices.
#[derive(Clone, Debug)]
pub struct F2fProblem {
    graph: WeightedGraph,
}

impl F2fProblem {
    pub fn new(graph: WeightedGraph) -> Result<Self> {
        if graph.n() < 3 {
            return Err(Error::invalid(format!(
                "degree-2 polytope needs n >= 3, got {}",
                graph.n()
            )));
        }
        graph.require_fully_observed("the LP objective")?;
        Ok(F2fProblem { graph })
    }

    pub fn from_weights(n: usize, w: Vec<f64>) -> Result<Self> {
        Self::new(WeightedGraph::new(n, w)?)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }
}

/// Shape of an optimal LP vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VertexClass {
    /// Single integral cycle through every vertex.
    HamiltonianCycle,
    /// Integral, but two or more disjoint cycles.
    DisjointCycles2Factor,
    /// Half-integral with the odd-cycles-joined-by-paths structure.
    HalfIntegral,
    /// Support violates the expected vertex structure.
    Unknown,
}

/// One connected component of a solution's support graph.
#[derive(Clone, Debug, Serialize)]
pub struct SupportComponent {
    pub vertices: Vec<usize>,
    pub full_edges: Vec<(usize, usize)>,
    pub half_edges: Vec<(usize, usize)>,
    pub kind: ComponentKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentKind {
    IntegralCycle,
    /// An even number of half-weight odd cycles joined by full-weight paths.
    HalfIntegralBlossom { odd_half_cycles: usize, unit_paths: usize },
    Irregular,
}

/// Per-vertex duals `u` and the per-edge reduced-cost split
/// `w_e = u_i + u_j - b_e + h_e` (both parts clipped at zero; at optimality
/// at most one is active per edge up to solver tolerance).
#[derive(Clone, Debug, Serialize)]
pub struct LpDuals {
    pub u: Vec<f64>,
    pub b: Vec<f64>,
    pub h: Vec<f64>,
}

/// A vertex-optimal basic solution with exact half-integral entries.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub x: EdgeSubset,
    pub objective: f64,
    pub vertex_class: VertexClass,
    pub support_components: Vec<SupportComponent>,
    pub duals: LpDuals,
}

impl LpSolution {
    /// The solution as a cycle, when it is one.
    pub fn as_hamiltonian_cycle(&self) -> Option<HamiltonianCycle> {
        if self.vertex_class != VertexClass::HamiltonianCycle {
            return None;
        }
        cycle_from_support(&self.x)
    }
}

/// Interprets an integral, connected, 2-regular spanning support as a
/// Hamiltonian cycle; returns `None` for anything else.
pub fn cycle_from_support(x: &EdgeSubset) -> Option<HamiltonianCycle> {
    let n = x.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, j) in x.integral_edges() {
        adj[i].push(j);
        adj[j].push(i);
    }
    if adj.iter().any(|a| a.len() != 2) {
        return None;
    }
    let mut order = Vec::with_capacity(n);
    let mut prev = usize::MAX;
    let mut v = 0;
    for _ in 0..n {
        order.push(v);
        let next = if adj[v][0] != prev { adj[v][0] } else { adj[v][1] };
        prev = v;
        v = next;
    }
    if v != 0 {
        return None;
    }
    HamiltonianCycle::new(order).ok()
}

/// Solve the LP and classify the optimal vertex.
pub fn solve_f2f(p: &F2fProblem) -> Result<LpSolution> {
    let n = p.n();
    let out = simplex::solve_degree_lp(n, p.graph.weights())?;

    let mut num = vec![0u8; out.x.len()];
    let mut off_lattice = Vec::new();
    for (e, &v) in out.x.iter().enumerate() {
        if v.abs() <= SNAP_TOL {
            num[e] = 0;
        } else if (v - 0.5).abs() <= SNAP_TOL {
            num[e] = 1;
        } else if (v - 1.0).abs() <= SNAP_TOL {
            num[e] = 2;
        } else {
            off_lattice.push((e, v));
        }
    }
    if !off_lattice.is_empty() {
        return Err(Error::NumericDegeneracy(format!(
            "basic solution has {} entries off the half-integral lattice \
             (first few: {:?}); this indicates a solver defect",
            off_lattice.len(),
            &off_lattice[..off_lattice.len().min(8)],
        )));
    }
    let x = EdgeSubset::from_numerators(n, num)?;
    for v in 0..n {
        if x.degree_numerator(v) != 4 {
            return Err(Error::NumericDegeneracy(format!(
                "snapped solution violates the degree constraint at vertex {v}"
            )));
        }
    }

    let objective = x.weight_in(&p.graph)?;
    let (vertex_class, support_components) = classify_support(&x)?;

    let u = out.duals;
    let ix = EdgeIndexer::new(n);
    let mut b = Vec::with_capacity(x.numerators().len());
    let mut h = Vec::with_capacity(x.numerators().len());
    for (e, (i, j)) in ix.edges().enumerate() {
        let d = p.graph.weight_at(e) - u[i] - u[j];
        h.push(d.max(0.0));
        b.push((-d).max(0.0));
    }

    Ok(LpSolution { x, objective, vertex_class, support_components, duals: LpDuals { u, b, h } })
}

/// Resolve each half entry of a solution to 0 or 1 by an independent fair
/// coin; integral entries pass through. Deterministic in the seed.
pub fn round_halves(s: &LpSolution, seed: u64) -> EdgeSubset {
    let mut rng = SplitMix64::new(seed);
    let mut out = s.x.clone();
    for e in 0..out.numerators().len() {
        if out.numerator_at(e) == 1 {
            let up = rng.next_bool();
            out.set_numerator_at(e, if up { 2 } else { 0 }).expect("0/2 is valid");
        }
    }
    out
}

/// Classify the support graph of a half-integral degree-2 vector.
///
/// Returns the overall class plus one report per connected component.
/// Components must be plain full-weight cycles, or blossoms: vertex-disjoint
/// half-weight odd cycles (an even count of them) joined by full-weight
/// paths whose endpoints lie on the cycles. Anything else is flagged
/// [`ComponentKind::Irregular`] and the class becomes
/// [`VertexClass::Unknown`].
pub fn classify_support(x: &EdgeSubset) -> Result<(VertexClass, Vec<SupportComponent>)> {
    let n = x.n();
    for v in 0..n {
        if x.degree_numerator(v) != 4 {
            return Err(Error::invalid(format!(
                "vertex {v} has fractional degree {} (expected 2)",
                f64::from(x.degree_numerator(v)) / 2.0
            )));
        }
    }

    let mut full_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut half_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, j) in x.integral_edges() {
        full_adj[i].push(j);
        full_adj[j].push(i);
    }
    for (i, j) in x.half_edges() {
        half_adj[i].push(j);
        half_adj[j].push(i);
    }

    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp_of[start] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for &u in full_adj[v].iter().chain(&half_adj[v]) {
                if comp_of[u] == usize::MAX {
                    comp_of[u] = id;
                    stack.push(u);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }

    let mut reports = Vec::with_capacity(comps.len());
    for members in &comps {
        let full_edges: Vec<(usize, usize)> = members
            .iter()
            .flat_map(|&v| full_adj[v].iter().map(move |&u| (v, u)))
            .filter(|&(v, u)| v < u)
            .collect();
        let half_edges: Vec<(usize, usize)> = members
            .iter()
            .flat_map(|&v| half_adj[v].iter().map(move |&u| (v, u)))
            .filter(|&(v, u)| v < u)
            .collect();
        let kind = component_kind(members, &full_adj, &half_adj, &full_edges, &half_edges);
        reports.push(SupportComponent {
            vertices: members.clone(),
            full_edges,
            half_edges,
            kind,
        });
    }

    let any_irregular = reports.iter().any(|c| c.kind == ComponentKind::Irregular);
    let any_half = reports.iter().any(|c| !c.half_edges.is_empty());
    let class = if any_irregular {
        VertexClass::Unknown
    } else if any_half {
        VertexClass::HalfIntegral
    } else if reports.len() == 1 && reports[0].vertices.len() == n {
        VertexClass::HamiltonianCycle
    } else {
        VertexClass::DisjointCycles2Factor
    };
    Ok((class, reports))
}

fn component_kind(
    members: &[usize],
    full_adj: &[Vec<usize>],
    half_adj: &[Vec<usize>],
    full_edges: &[(usize, usize)],
    half_edges: &[(usize, usize)],
) -> ComponentKind {
    if half_edges.is_empty() {
        // Connected and 2-regular: necessarily one cycle.
        return ComponentKind::IntegralCycle;
    }
    // Every vertex must carry either two halves and one full edge, or no
    // halves and two full edges (a path interior).
    for &v in members {
        let ok = match half_adj[v].len() {
            2 => full_adj[v].len() == 1,
            0 => full_adj[v].len() == 2,
            _ => false,
        };
        if !ok {
            return ComponentKind::Irregular;
        }
    }
    // Half edges then form vertex-disjoint cycles; count them and require
    // every one odd, with an even number overall.
    let mut seen = std::collections::HashSet::new();
    let mut odd_half_cycles = 0usize;
    for &v in members {
        if half_adj[v].len() != 2 || seen.contains(&v) {
            continue;
        }
        let mut len = 0usize;
        let mut prev = usize::MAX;
        let mut cur = v;
        loop {
            seen.insert(cur);
            len += 1;
            let next = if half_adj[cur][0] != prev { half_adj[cur][0] } else { half_adj[cur][1] };
            prev = cur;
            cur = next;
            if cur == v {
                break;
            }
        }
        if len % 2 == 0 {
            return ComponentKind::Irregular;
        }
        odd_half_cycles += 1;
    }
    if odd_half_cycles % 2 != 0 || odd_half_cycles < 2 {
        return ComponentKind::Irregular;
    }
    // Full edges form simple paths between half-cycle vertices; walk from
    // each endpoint and require every full edge to be covered (no full
    // cycles inside a blossom component).
    let mut path_edges = 0usize;
    let mut unit_paths = 0usize;
    let mut visited_ends = std::collections::HashSet::new();
    for &v in members {
        if full_adj[v].len() != 1 || visited_ends.contains(&v) {
            continue;
        }
        unit_paths += 1;
        visited_ends.insert(v);
        let mut prev = v;
        let mut cur = full_adj[v][0];
        path_edges += 1;
        while full_adj[cur].len() == 2 {
            let next = if full_adj[cur][0] != prev { full_adj[cur][0] } else { full_adj[cur][1] };
            prev = cur;
            cur = next;
            path_edges += 1;
        }
        visited_ends.insert(cur);
    }
    if path_edges != full_edges.len() {
        return ComponentKind::Irregular;
    }
    ComponentKind::HalfIntegralBlossom { odd_half_cycles, unit_paths }
}

/// Result of the dual-certificate check for a candidate cycle.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateResult {
    /// `u_i = (1/2) min { w_e : e at i on the cycle }`.
    pub u: Vec<f64>,
    pub valid: bool,
    pub violating_edges: Vec<(usize, usize)>,
}

/// Build the canonical dual vector for `truth` and test it: the certificate
/// is valid iff `u_i + u_j <= w_ij` on every cycle edge and
/// `u_i + u_j >= w_ij` off the cycle. A valid certificate proves the cycle
/// is an optimal LP solution, so callers may skip the solver.
pub fn certify(w: &WeightedGraph, truth: &HamiltonianCycle) -> Result<CertificateResult> {
    if w.n() != truth.n() {
        return Err(Error::invalid("graph and cycle sizes differ"));
    }
    w.require_fully_observed("certification")?;
    let n = w.n();
    let mut u = vec![f64::INFINITY; n];
    for (i, j) in truth.edges() {
        let we = w.weight_unchecked(i, j);
        u[i] = u[i].min(0.5 * we);
        u[j] = u[j].min(0.5 * we);
    }
    let mut violating_edges = Vec::new();
    for (i, j) in EdgeIndexer::new(n).edges() {
        let we = w.weight_unchecked(i, j);
        let s = u[i] + u[j];
        let ok = if truth.contains_edge(i, j) { s <= we } else { s >= we };
        if !ok {
            violating_edges.push((i, j));
        }
    }
    Ok(CertificateResult { u, valid: violating_edges.is_empty(), violating_edges })
}

/// Exhaustive maximum-weight Hamiltonian cycle for `n <= 10`; ties go to the
/// first cycle in canonical enumeration order.
pub fn brute_force_tsp(w: &WeightedGraph) -> Result<HamiltonianCycle> {
    let n = w.n();
    if n < 3 {
        return Err(Error::invalid(format!("cycles need n >= 3, got {n}")));
    }
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimit { context: "exhaustive cycle search", n, limit: BRUTE_FORCE_LIMIT });
    }
    w.require_fully_observed("exhaustive cycle search")?;

    let mut order = vec![0usize; n];
    let mut used = vec![false; n];
    used[0] = true;
    let mut best: Option<(f64, Vec<usize>)> = None;
    // Enumerate orders with order[0] = 0 and order[1] < order[n-1]: each
    // cycle appears exactly once, in lexicographic order.
    fn rec(
        depth: usize,
        order: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sum: f64,
        w: &WeightedGraph,
        best: &mut Option<(f64, Vec<usize>)>,
    ) {
        let n = order.len();
        if depth == n {
            if order[1] > order[n - 1] {
                return;
            }
            let total = sum + w.weight_unchecked(order[n - 1], order[0]);
            if best.as_ref().is_none_or(|(b, _)| total > *b) {
                *best = Some((total, order.clone()));
            }
            return;
        }
        for v in 1..n {
            if used[v] {
                continue;
            }
            used[v] = true;
            order[depth] = v;
            rec(depth + 1, order, used, sum + w.weight_unchecked(order[depth - 1], v), w, best);
            used[v] = false;
        }
    }
    rec(1, &mut order, &mut used, 0.0, w, &mut best);
    let (_, order) = best.expect("n >= 3 has at least one cycle");
    HamiltonianCycle::new(order)
}

/// Exhaustive maximum-weight 2-factor (disjoint cycle cover) for `n <= 10`;
/// ties go to the first 2-factor in enumeration order.
pub fn brute_force_2factor(w: &WeightedGraph) -> Result<EdgeSubset> {
    let n = w.n();
    if n < 3 {
        return Err(Error::invalid(format!("2-factors need n >= 3, got {n}")));
    }
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimit { context: "exhaustive 2-factor search", n, limit: BRUTE_FORCE_LIMIT });
    }
    w.require_fully_observed("exhaustive 2-factor search")?;

    let mut best: Option<(f64, Vec<(usize, usize)>)> = None;
    let mut edges = Vec::with_capacity(n);
    let mut deg = vec![0u8; n];
    for_each_two_factor_inner(&mut deg, &mut edges, 0.0, w, &mut |sum, edges| {
        if best.as_ref().is_none_or(|(b, _)| sum > *b) {
            best = Some((sum, edges.to_vec()));
        }
    });
    let (_, edges) = best.expect("complete graphs on n >= 3 vertices have a 2-factor");
    EdgeSubset::from_edges(n, edges)
}

/// Visit every 2-regular subgraph exactly once, branching on the smallest
/// vertex still missing degree.
fn for_each_two_factor_inner(
    deg: &mut Vec<u8>,
    edges: &mut Vec<(usize, usize)>,
    sum: f64,
    w: &WeightedGraph,
    visit: &mut impl FnMut(f64, &[(usize, usize)]),
) {
    let n = deg.len();
    let Some(v) = (0..n).find(|&v| deg[v] < 2) else {
        visit(sum, edges);
        return;
    };
    // Partners of v are chosen in increasing order; any candidate below v
    // would itself be deficient, so u ranges above v only.
    let lo = if deg[v] == 1 {
        edges.iter().rev().find(|&&(a, _)| a == v).map_or(v, |&(_, b)| b)
    } else {
        v
    };
    for u in lo + 1..n {
        if deg[u] >= 2 {
            continue;
        }
        deg[v] += 1;
        deg[u] += 1;
        edges.push((v, u));
        for_each_two_factor_inner(deg, edges, sum + w.weight_unchecked(v, u), w, visit);
        edges.pop();
        deg[v] -= 1;
        deg[u] -= 1;
    }
}

#[cfg(test)]
pub(crate) fn count_two_factors(n: usize) -> usize {
    let w = WeightedGraph::zeros(n).unwrap();
    let mut count = 0usize;
    let mut edges = Vec::new();
    let mut deg = vec![0u8; n];
    for_each_two_factor_inner(&mut deg, &mut edges, 0.0, &w, &mut |_, _| count += 1);
    count
}
