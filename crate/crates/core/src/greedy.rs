//! Three greedy baselines. All are deterministic: every tie is broken
//! toward the smaller edge index.

use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, HamiltonianCycle, WeightedGraph};

/// Keep, per vertex, its two heaviest incident edges; return the union.
/// The result may be irregular (degrees other than 2).
pub fn simple_thresholding(w: &WeightedGraph) -> Result<EdgeSubset> {
    let n = w.n();
    if n < 3 {
        return Err(Error::invalid(format!("thresholding needs n >= 3, got {n}")));
    }
    w.require_fully_observed("thresholding")?;
    let ix = w.indexer();
    let mut keep = vec![false; w.num_edges()];
    for v in 0..n {
        let mut best: [Option<usize>; 2] = [None, None];
        // ascending u, strict comparisons: smaller edge index wins ties
        for u in (0..n).filter(|&u| u != v) {
            let wu = w.weight_unchecked(v, u);
            if best[0].is_none_or(|b| wu > w.weight_unchecked(v, b)) {
                best = [Some(u), best[0]];
            } else if best[1].is_none_or(|b| wu > w.weight_unchecked(v, b)) {
                best[1] = Some(u);
            }
        }
        for u in best.into_iter().flatten() {
            keep[ix.index_unchecked(v, u)] = true;
        }
    }
    EdgeSubset::from_numerators(n, keep.iter().map(|&k| if k { 2 } else { 0 }).collect())
}

/// Walk from `start`, always to the heaviest unvisited neighbor, then close
/// the tour.
pub fn nearest_neighbor(w: &WeightedGraph, start: usize) -> Result<HamiltonianCycle> {
    let n = w.n();
    if n < 3 {
        return Err(Error::invalid(format!("tours need n >= 3, got {n}")));
    }
    if start >= n {
        return Err(Error::invalid(format!("start vertex {start} out of range for n = {n}")));
    }
    w.require_fully_observed("nearest neighbor")?;
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let mut cur = start;
    visited[cur] = true;
    order.push(cur);
    for _ in 1..n {
        let mut next: Option<usize> = None;
        for u in (0..n).filter(|&u| !visited[u]) {
            if next.is_none_or(|b| w.weight_unchecked(cur, u) > w.weight_unchecked(cur, b)) {
                next = Some(u);
            }
        }
        cur = next.expect("unvisited vertex remains");
        visited[cur] = true;
        order.push(cur);
    }
    HamiltonianCycle::new(order)
}

/// Repeatedly join the heaviest edge whose endpoints both still have degree
/// below two.
///
/// The scan follows the rule literally, so an early small cycle can strand
/// vertices: once their mutual edge is spent and every other partner is
/// saturated, no legal edge remains and the affected vertices finish with
/// degree one. In that case the deficient subset is returned as-is; callers
/// scoring against a planted cycle count it as a miss like any other wrong
/// output.
pub fn greedy_merging(w: &WeightedGraph) -> Result<EdgeSubset> {
    let n = w.n();
    if n < 3 {
        return Err(Error::invalid(format!("merging needs n >= 3, got {n}")));
    }
    w.require_fully_observed("greedy merging")?;
    let mut order: Vec<usize> = (0..w.num_edges()).collect();
    order.sort_by(|&a, &b| {
        w.weight_at(b)
            .partial_cmp(&w.weight_at(a))
            .expect("weights are finite")
            .then(a.cmp(&b))
    });
    let ix = w.indexer();
    let mut deg = vec![0u8; n];
    let mut num = vec![0u8; w.num_edges()];
    let mut remaining = n; // vertices still below degree 2
    for e in order {
        let (i, j) = ix.endpoints(e)?;
        if deg[i] < 2 && deg[j] < 2 {
            num[e] = 2;
            deg[i] += 1;
            deg[j] += 1;
            remaining -= usize::from(deg[i] == 2) + usize::from(deg[j] == 2);
            if remaining == 0 {
                break;
            }
        }
    }
    EdgeSubset::from_numerators(n, num)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bp::bp_run;
    use crate::graph::edge_index;
    use crate::lp::brute_force_tsp;
    use crate::rng::SplitMix64;

    fn planted(n: usize, cycle: &HamiltonianCycle, on: f64, off: f64) -> WeightedGraph {
        let mut g = WeightedGraph::zeros(n).unwrap();
        for (i, j) in g.indexer().edges() {
            g.set_weight(i, j, if cycle.contains_edge(i, j) { on } else { off }).unwrap();
        }
        g
    }

    fn random_graph(n: usize, seed: u64) -> WeightedGraph {
        let mut rng = SplitMix64::new(seed);
        WeightedGraph::new(n, (0..n * (n - 1) / 2).map(|_| rng.next_gaussian()).collect())
            .unwrap()
    }

    #[test]
    fn all_three_recover_a_dominant_cycle() {
        let cycle = HamiltonianCycle::new(vec![0, 3, 6, 1, 4, 7, 2, 5]).unwrap();
        let g = planted(8, &cycle, 10.0, -10.0);
        assert_eq!(simple_thresholding(&g).unwrap(), cycle.to_edges());
        assert_eq!(greedy_merging(&g).unwrap(), cycle.to_edges());
        for start in [0, 3, 7] {
            assert_eq!(nearest_neighbor(&g, start).unwrap(), cycle);
        }
    }

    #[test]
    fn triangle_cases() {
        let g = WeightedGraph::new(3, vec![5.0, -1.0, 0.0]).unwrap();
        assert_eq!(simple_thresholding(&g).unwrap().numerators(), &[2, 2, 2]);
        assert_eq!(nearest_neighbor(&g, 0).unwrap(), HamiltonianCycle::identity(3).unwrap());
        assert_eq!(greedy_merging(&g).unwrap().numerators(), &[2, 2, 2]);
    }

    #[test]
    fn thresholding_equals_one_round_of_message_passing() {
        for seed in 0..10 {
            let g = random_graph(9, seed);
            assert_eq!(
                simple_thresholding(&g).unwrap(),
                bp_run(&g, 1, 0).unwrap(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn nearest_neighbor_pays_for_the_forced_closing_edge() {
        // Weights steer the walk 0 -> 1 -> 2 -> 3 and make the closing edge
        // (3,0) terrible; the optimal tour avoids it.
        let mut g = WeightedGraph::zeros(4).unwrap();
        g.set_weight(0, 1, 10.0).unwrap();
        g.set_weight(1, 2, 9.0).unwrap();
        g.set_weight(2, 3, 8.0).unwrap();
        g.set_weight(0, 3, -100.0).unwrap();
        g.set_weight(0, 2, 7.0).unwrap();
        g.set_weight(1, 3, 7.0).unwrap();
        let nn = nearest_neighbor(&g, 0).unwrap();
        let opt = brute_force_tsp(&g).unwrap();
        assert_ne!(nn, opt);
        assert!(nn.weight_in(&g).unwrap() < opt.weight_in(&g).unwrap());
    }

    #[test]
    fn merging_rank_example_builds_the_four_cycle() {
        let mut g = WeightedGraph::zeros(4).unwrap();
        g.set_weight(0, 1, 40.0).unwrap();
        g.set_weight(2, 3, 30.0).unwrap();
        g.set_weight(0, 2, 20.0).unwrap();
        g.set_weight(1, 3, 10.0).unwrap();
        g.set_weight(0, 3, 5.0).unwrap();
        g.set_weight(1, 2, 1.0).unwrap();
        let out = greedy_merging(&g).unwrap();
        let cycle = HamiltonianCycle::new(vec![0, 1, 3, 2]).unwrap();
        assert_eq!(out, cycle.to_edges());
    }

    #[test]
    fn merging_can_produce_disjoint_triangles() {
        let mut g = WeightedGraph::new(6, vec![-50.0; 15]).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)] {
            g.set_weight(i, j, 10.0).unwrap();
        }
        let out = greedy_merging(&g).unwrap();
        let expect =
            EdgeSubset::from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        assert_eq!(out, expect);
    }

    #[test]
    fn merging_dead_end_leaves_degree_one_vertices() {
        // (0,1) is taken first; the triangle {2,3,4} then closes, and 0 and 1
        // have no unused partner left below degree 2.
        let mut g = WeightedGraph::new(5, vec![-100.0; 10]).unwrap();
        g.set_weight(0, 1, 100.0).unwrap();
        g.set_weight(2, 3, 90.0).unwrap();
        g.set_weight(3, 4, 80.0).unwrap();
        g.set_weight(2, 4, 70.0).unwrap();
        let out = greedy_merging(&g).unwrap();
        assert_eq!(out.degree_numerator(0), 2);
        assert_eq!(out.degree_numerator(1), 2);
        for v in 2..5 {
            assert_eq!(out.degree_numerator(v), 4);
        }
        assert_eq!(out.value(0, 1).unwrap(), 1.0);
    }

    #[test]
    fn merging_terminates_regular_or_certified_dead_end() {
        for seed in 0..200 {
            let n = 4 + (seed as usize % 4);
            let g = random_graph(n, 4000 + seed);
            let out = greedy_merging(&g).unwrap();
            let deficient: Vec<usize> =
                (0..n).filter(|&v| out.degree_numerator(v) < 4).collect();
            if deficient.is_empty() {
                continue;
            }
            // Dead-end certificate: every unused edge joining two deficient
            // vertices must not exist, i.e. all their pairs already used.
            for (k, &a) in deficient.iter().enumerate() {
                for &b in &deficient[k + 1..] {
                    assert_eq!(
                        out.numerator_at(edge_index(a, b, n).unwrap()),
                        2,
                        "seed {seed}: edge ({a},{b}) was still available"
                    );
                }
            }
        }
    }

    #[test]
    fn start_vertex_is_validated() {
        let g = random_graph(5, 1);
        assert!(nearest_neighbor(&g, 5).is_err());
        assert!(nearest_neighbor(&g, 4).is_ok());
    }
}
