//! Shared graph containers: dense edge-indexed weights on the complete graph,
//! exact half-integral edge subsets, and canonicalized Hamiltonian cycles and
//! paths.
//!
//! Unordered vertex pairs `(i, j)` with `i < j` are mapped to positions
//! `0..n(n-1)/2` in row-major order: all pairs with smaller endpoint `0`
//! first, then smaller endpoint `1`, and so on. All dense per-edge storage in
//! the crate uses this layout.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Bijection between unordered vertex pairs of the complete graph on `n`
/// vertices and `0..n(n-1)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeIndexer {
    n: usize,
}

impl EdgeIndexer {
    pub fn new(n: usize) -> Self {
        EdgeIndexer { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Row-major index of the unordered pair `{i, j}`.
    pub fn index(&self, i: usize, j: usize) -> Result<usize> {
        if i == j || i >= self.n || j >= self.n {
            return Err(Error::invalid(format!(
                "edge ({i}, {j}) is not a valid pair for n = {}",
                self.n
            )));
        }
        Ok(self.index_unchecked(i, j))
    }

    #[inline]
    pub(crate) fn index_unchecked(&self, i: usize, j: usize) -> usize {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    /// Endpoints `(i, j)` with `i < j` of the edge at `idx`.
    pub fn endpoints(&self, idx: usize) -> Result<(usize, usize)> {
        if idx >= self.num_edges() {
            return Err(Error::invalid(format!(
                "edge index {idx} out of range for n = {}",
                self.n
            )));
        }
        // Float guess for the row, then fix up; exact for all n we handle.
        let n = self.n as f64;
        let mut i = ((2.0 * n - 1.0 - ((2.0 * n - 1.0) * (2.0 * n - 1.0) - 8.0 * idx as f64).sqrt())
            / 2.0)
            .floor() as usize;
        i = i.min(self.n - 2);
        while self.row_offset(i) > idx {
            i -= 1;
        }
        while i + 1 <= self.n - 2 && self.row_offset(i + 1) <= idx {
            i += 1;
        }
        let j = i + 1 + (idx - self.row_offset(i));
        Ok((i, j))
    }

    fn row_offset(&self, i: usize) -> usize {
        i * (2 * self.n - i - 1) / 2
    }

    /// All pairs in row-major order.
    pub fn edges(self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }
}

/// Checked construction of the row-major index of `{i, j}` in a complete
/// graph on `n` vertices.
pub fn edge_index(i: usize, j: usize, n: usize) -> Result<usize> {
    EdgeIndexer::new(n).index(i, j)
}

/// Dense edge weights on the complete graph.
///
/// Entries are raw observation scores before the log-likelihood transform and
/// log-likelihood-ratio units after it. An erased (unobserved) score is held
/// as `NaN` and serialized as the token `NA`; [`crate::model::WeightModel::loglik_transform`]
/// maps erasures to weight `0`, after which the graph is fully observed.
/// Infinities are rejected on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    w: Vec<f64>,
}

impl WeightedGraph {
    pub fn new(n: usize, weights: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("need n >= 2 vertices, got {n}")));
        }
        let m = n * (n - 1) / 2;
        if weights.len() != m {
            return Err(Error::invalid(format!(
                "expected {m} weights for n = {n}, got {}",
                weights.len()
            )));
        }
        if weights.iter().any(|v| v.is_infinite()) {
            return Err(Error::invalid("weights must be finite or NaN (erasure)"));
        }
        Ok(WeightedGraph { n, w: weights })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(n, vec![0.0; n * (n - 1) / 2])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.w.len()
    }

    pub fn indexer(&self) -> EdgeIndexer {
        EdgeIndexer::new(self.n)
    }

    pub fn weight(&self, i: usize, j: usize) -> Result<f64> {
        Ok(self.w[self.indexer().index(i, j)?])
    }

    #[inline]
    pub(crate) fn weight_unchecked(&self, i: usize, j: usize) -> f64 {
        self.w[self.indexer().index_unchecked(i, j)]
    }

    pub fn weight_at(&self, idx: usize) -> f64 {
        self.w[idx]
    }

    pub fn set_weight(&mut self, i: usize, j: usize, v: f64) -> Result<()> {
        let idx = self.indexer().index(i, j)?;
        self.w[idx] = v;
        Ok(())
    }

    pub fn set_weight_at(&mut self, idx: usize, v: f64) {
        self.w[idx] = v;
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    /// True when no entry is an erasure sentinel.
    pub fn is_fully_observed(&self) -> bool {
        self.w.iter().all(|v| !v.is_nan())
    }

    pub(crate) fn require_fully_observed(&self, context: &str) -> Result<()> {
        if !self.is_fully_observed() {
            return Err(Error::invalid(format!(
                "{context} requires a fully observed graph; apply the log-likelihood transform first"
            )));
        }
        Ok(())
    }

    /// Serializes as a one-line `n=<count>` header followed by one
    /// `i,j,weight` row per edge in row-major order. Erasures are written as
    /// `NA`. Floats use the shortest round-trip decimal form.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        let mut s = String::new();
        let _ = writeln!(s, "n={}", self.n);
        for (idx, (i, j)) in self.indexer().edges().enumerate() {
            let v = self.w[idx];
            if v.is_nan() {
                let _ = writeln!(s, "{i},{j},NA");
            } else {
                let _ = writeln!(s, "{i},{j},{v}");
            }
        }
        out.write_all(s.as_bytes())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    /// Parses the format produced by [`WeightedGraph::write_csv`]. Rows may
    /// appear in any order but every edge must appear exactly once.
    pub fn read_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines().enumerate();
        let (first_no, first) = loop {
            match lines.next() {
                Some((no, line)) => {
                    let line = line?;
                    if !line.trim().is_empty() {
                        break (no + 1, line);
                    }
                }
                None => return Err(Error::Parse { line: 1, msg: "empty input".into() }),
            }
        };
        let n: usize = first
            .trim()
            .strip_prefix("n=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse {
                line: first_no,
                msg: format!("expected header `n=<count>`, got `{}`", first.trim()),
            })?;
        if n < 2 {
            return Err(Error::Parse { line: first_no, msg: format!("need n >= 2, got {n}") });
        }
        let ix = EdgeIndexer::new(n);
        let mut w = vec![f64::NAN; ix.num_edges()];
        let mut seen = vec![false; ix.num_edges()];
        for (no, line) in lines {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let mut parts = t.split(',');
            let parse_err = |msg: String| Error::Parse { line: no + 1, msg };
            let i: usize = parts
                .next()
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| parse_err(format!("bad row `{t}`")))?;
            let j: usize = parts
                .next()
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| parse_err(format!("bad row `{t}`")))?;
            let val = parts.next().ok_or_else(|| parse_err(format!("bad row `{t}`")))?.trim();
            if parts.next().is_some() {
                return Err(parse_err(format!("too many fields in `{t}`")));
            }
            let idx = ix
                .index(i, j)
                .map_err(|e| parse_err(e.to_string()))?;
            if seen[idx] {
                return Err(parse_err(format!("duplicate edge ({i}, {j})")));
            }
            seen[idx] = true;
            w[idx] = if val == "NA" {
                f64::NAN
            } else {
                let v: f64 = val
                    .parse()
                    .map_err(|_| parse_err(format!("bad weight `{val}`")))?;
                if v.is_infinite() {
                    return Err(parse_err("weight must be finite or NA".into()));
                }
                v
            };
        }
        if let Some(idx) = seen.iter().position(|s| !s) {
            let (i, j) = ix.endpoints(idx)?;
            return Err(Error::invalid(format!("edge ({i}, {j}) missing from input")));
        }
        WeightedGraph::new(n, w)
    }

    pub fn from_csv_str(s: &str) -> Result<Self> {
        Self::read_csv(s.as_bytes())
    }
}

/// A half-integral vector indexed by edges, stored exactly as numerators over
/// two: every entry is `0`, `1` or `2`, meaning `0`, `1/2` or `1`.
///
/// Degrees are therefore computable exactly in integer arithmetic. The type
/// does not constrain degrees; solvers document what they guarantee.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    n: usize,
    num: Vec<u8>,
}

impl EdgeSubset {
    pub fn empty(n: usize) -> Self {
        EdgeSubset { n, num: vec![0; n * (n - 1) / 2] }
    }

    /// Builds from numerators over two (each in `{0, 1, 2}`).
    pub fn from_numerators(n: usize, num: Vec<u8>) -> Result<Self> {
        if num.len() != n * (n - 1) / 2 {
            return Err(Error::invalid(format!(
                "expected {} numerators for n = {n}, got {}",
                n * (n - 1) / 2,
                num.len()
            )));
        }
        if num.iter().any(|&v| v > 2) {
            return Err(Error::invalid("edge values must lie in {0, 1/2, 1}"));
        }
        Ok(EdgeSubset { n, num })
    }

    /// Builds an integral subset from a list of edges.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut s = EdgeSubset::empty(n);
        let ix = EdgeIndexer::new(n);
        for (i, j) in edges {
            s.num[ix.index(i, j)?] = 2;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indexer(&self) -> EdgeIndexer {
        EdgeIndexer::new(self.n)
    }

    pub fn numerators(&self) -> &[u8] {
        &self.num
    }

    pub fn numerator_at(&self, idx: usize) -> u8 {
        self.num[idx]
    }

    pub fn set_numerator_at(&mut self, idx: usize, v: u8) -> Result<()> {
        if v > 2 {
            return Err(Error::invalid("edge values must lie in {0, 1/2, 1}"));
        }
        self.num[idx] = v;
        Ok(())
    }

    pub fn value(&self, i: usize, j: usize) -> Result<f64> {
        Ok(f64::from(self.num[self.indexer().index(i, j)?]) / 2.0)
    }

    /// Twice the fractional degree of `v`; exact.
    pub fn degree_numerator(&self, v: usize) -> u32 {
        let ix = self.indexer();
        (0..self.n)
            .filter(|&u| u != v)
            .map(|u| u32::from(self.num[ix.index_unchecked(u, v)]))
            .sum()
    }

    pub fn is_integral(&self) -> bool {
        self.num.iter().all(|&v| v != 1)
    }

    /// Edges with value exactly one.
    pub fn integral_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let ix = self.indexer();
        ix.edges()
            .enumerate()
            .filter(|(idx, _)| self.num[*idx] == 2)
            .map(|(_, e)| e)
    }

    /// Edges with value one half.
    pub fn half_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let ix = self.indexer();
        ix.edges()
            .enumerate()
            .filter(|(idx, _)| self.num[*idx] == 1)
            .map(|(_, e)| e)
    }

    /// Edges with nonzero value.
    pub fn support_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let ix = self.indexer();
        ix.edges()
            .enumerate()
            .filter(|(idx, _)| self.num[*idx] > 0)
            .map(|(_, e)| e)
    }

    /// Number of edges in the symmetric difference of two integral subsets.
    pub fn symmetric_difference_size(&self, other: &EdgeSubset) -> Result<usize> {
        if self.n != other.n {
            return Err(Error::invalid(format!(
                "vertex counts differ: {} vs {}",
                self.n, other.n
            )));
        }
        if !self.is_integral() || !other.is_integral() {
            return Err(Error::invalid(
                "symmetric difference requires integral edge subsets",
            ));
        }
        Ok(self
            .num
            .iter()
            .zip(&other.num)
            .filter(|(a, b)| a != b)
            .count())
    }

    /// Total weight `sum_e w_e x_e`, using exact numerators.
    pub fn weight_in(&self, g: &WeightedGraph) -> Result<f64> {
        if g.n() != self.n {
            return Err(Error::invalid("graph and subset sizes differ"));
        }
        Ok(self
            .num
            .iter()
            .zip(g.weights())
            .map(|(&a, &w)| f64::from(a) / 2.0 * w)
            .sum())
    }
}

fn validate_permutation(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return Err(Error::invalid(format!(
                "order is not a permutation of 0..{n}"
            )));
        }
        seen[v] = true;
    }
    Ok(())
}

/// A Hamiltonian cycle stored in canonical vertex order: the rotation and
/// direction are fixed so the order starts at vertex `0` and its second entry
/// is smaller than its last. Two cycles are equal iff they visit the same
/// edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HamiltonianCycle {
    order: Vec<usize>,
}

impl HamiltonianCycle {
    pub fn new(mut order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n < 3 {
            return Err(Error::invalid(format!("a cycle needs n >= 3, got {n}")));
        }
        validate_permutation(&order, n)?;
        let zero = order.iter().position(|&v| v == 0).expect("0 present");
        order.rotate_left(zero);
        if order[1] > order[n - 1] {
            order[1..].reverse();
        }
        Ok(HamiltonianCycle { order })
    }

    /// The identity cycle `0, 1, ..., n-1`.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new((0..n).collect())
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The `n` edges of the cycle.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order.len();
        (0..n).map(move |k| (self.order[k], self.order[(k + 1) % n]))
    }

    pub fn to_edges(&self) -> EdgeSubset {
        EdgeSubset::from_edges(self.n(), self.edges()).expect("cycle edges are valid")
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        self.edges().any(|(a, b)| (a, b) == (i, j) || (b, a) == (i, j))
    }

    pub fn weight_in(&self, g: &WeightedGraph) -> Result<f64> {
        if g.n() != self.n() {
            return Err(Error::invalid("graph and cycle sizes differ"));
        }
        Ok(self.edges().map(|(i, j)| g.weight_unchecked(i, j)).sum())
    }

    /// Removes one cycle edge, yielding the Hamiltonian path on the rest.
    pub fn remove_edge(&self, i: usize, j: usize) -> Result<HamiltonianPath> {
        let n = self.n();
        let pos = (0..n)
            .find(|&k| {
                let (a, b) = (self.order[k], self.order[(k + 1) % n]);
                (a, b) == (i, j) || (b, a) == (i, j)
            })
            .ok_or_else(|| Error::invalid(format!("edge ({i}, {j}) is not on the cycle")))?;
        let mut order = self.order.clone();
        order.rotate_left((pos + 1) % n);
        HamiltonianPath::new(order)
    }
}

/// A Hamiltonian path stored in canonical orientation: the smaller endpoint
/// comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HamiltonianPath {
    order: Vec<usize>,
}

impl HamiltonianPath {
    pub fn new(mut order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n < 2 {
            return Err(Error::invalid(format!("a path needs n >= 2, got {n}")));
        }
        validate_permutation(&order, n)?;
        if order[0] > order[n - 1] {
            order.reverse();
        }
        Ok(HamiltonianPath { order })
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.order[0], self.order[self.order.len() - 1])
    }

    /// The `n - 1` edges of the path.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.order.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn to_edges(&self) -> EdgeSubset {
        EdgeSubset::from_edges(self.n(), self.edges()).expect("path edges are valid")
    }

    pub fn weight_in(&self, g: &WeightedGraph) -> Result<f64> {
        if g.n() != self.n() {
            return Err(Error::invalid("graph and path sizes differ"));
        }
        Ok(self.edges().map(|(i, j)| g.weight_unchecked(i, j)).sum())
    }

    /// Closes the path into a cycle by joining its endpoints.
    pub fn close_cycle(&self) -> Result<HamiltonianCycle> {
        HamiltonianCycle::new(self.order.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edge_index_examples() {
        assert_eq!(edge_index(0, 1, 4).unwrap(), 0);
        assert_eq!(edge_index(3, 2, 4).unwrap(), 5);
        assert_eq!(edge_index(1, 4, 6).unwrap(), 7);
    }

    #[test]
    fn edge_index_rejects_bad_pairs() {
        assert!(edge_index(2, 2, 5).is_err());
        assert!(edge_index(0, 5, 5).is_err());
    }

    #[test]
    fn edge_index_roundtrip_exhaustive() {
        for n in 2..40 {
            let ix = EdgeIndexer::new(n);
            let mut expected = 0;
            for (i, j) in ix.edges() {
                assert_eq!(ix.index(i, j).unwrap(), expected);
                assert_eq!(ix.index(j, i).unwrap(), expected);
                assert_eq!(ix.endpoints(expected).unwrap(), (i, j));
                expected += 1;
            }
            assert_eq!(expected, ix.num_edges());
            assert!(ix.endpoints(expected).is_err());
        }
    }

    #[test]
    fn cycle_canonical_form_is_rotation_and_reflection_invariant() {
        let base = HamiltonianCycle::new(vec![2, 0, 3, 1, 4]).unwrap();
        let mut order: Vec<usize> = vec![2, 0, 3, 1, 4];
        for _ in 0..order.len() {
            order.rotate_left(1);
            assert_eq!(HamiltonianCycle::new(order.clone()).unwrap(), base);
            let mut rev = order.clone();
            rev.reverse();
            assert_eq!(HamiltonianCycle::new(rev).unwrap(), base);
        }
        assert_eq!(base.order()[0], 0);
        assert!(base.order()[1] < base.order()[4]);
    }

    #[test]
    fn cycle_rejects_non_permutations() {
        assert!(HamiltonianCycle::new(vec![0, 1]).is_err());
        assert!(HamiltonianCycle::new(vec![0, 1, 1]).is_err());
        assert!(HamiltonianCycle::new(vec![0, 1, 3]).is_err());
    }

    #[test]
    fn path_canonical_orientation() {
        let p = HamiltonianPath::new(vec![3, 1, 0, 2]).unwrap();
        assert_eq!(p.order(), &[2, 0, 1, 3]);
        assert_eq!(p.endpoints(), (2, 3));
        let q = HamiltonianPath::new(vec![2, 0, 1, 3]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn symmetric_difference_examples() {
        let a = HamiltonianCycle::new(vec![0, 1, 2, 3]).unwrap().to_edges();
        let b = HamiltonianCycle::new(vec![0, 2, 1, 3]).unwrap().to_edges();
        assert_eq!(a.symmetric_difference_size(&a).unwrap(), 0);
        assert_eq!(a.symmetric_difference_size(&b).unwrap(), 4);
    }

    #[test]
    fn symmetric_difference_rejects_halves() {
        let a = HamiltonianCycle::new(vec![0, 1, 2, 3]).unwrap().to_edges();
        let mut h = EdgeSubset::empty(4);
        h.set_numerator_at(0, 1).unwrap();
        assert!(a.symmetric_difference_size(&h).is_err());
    }

    #[test]
    fn degrees_are_exact() {
        let c = HamiltonianCycle::new(vec![0, 1, 2, 3, 4]).unwrap().to_edges();
        for v in 0..5 {
            assert_eq!(c.degree_numerator(v), 4);
        }
    }

    #[test]
    fn remove_edge_gives_the_complementary_path() {
        let c = HamiltonianCycle::new(vec![0, 1, 2, 3, 4]).unwrap();
        let p = c.remove_edge(2, 3).unwrap();
        assert_eq!(p.order(), &[2, 1, 0, 4, 3]);
        assert_eq!(p.endpoints(), (2, 3));
        assert!(c.remove_edge(0, 2).is_err());
    }

    #[test]
    fn csv_roundtrip_with_erasures() {
        let g = WeightedGraph::new(3, vec![1.5, f64::NAN, -0.25]).unwrap();
        let s = g.to_csv_string();
        assert_eq!(s, "n=3\n0,1,1.5\n0,2,NA\n1,2,-0.25\n");
        let back = WeightedGraph::from_csv_str(&s).unwrap();
        assert_eq!(back.to_csv_string(), s);
        assert!(!back.is_fully_observed());
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        let err = WeightedGraph::from_csv_str("n=3\n0,1,1.0\n0,1,2.0\n1,2,0.0\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(WeightedGraph::from_csv_str("bogus\n").is_err());
        assert!(WeightedGraph::from_csv_str("n=3\n0,1,1.0\n").is_err());
        assert!(WeightedGraph::from_csv_str("n=3\n0,1,inf\n0,2,0\n1,2,0\n").is_err());
    }

    #[test]
    fn graph_rejects_infinities() {
        assert!(WeightedGraph::new(3, vec![0.0, f64::INFINITY, 0.0]).is_err());
    }

    proptest! {
        #[test]
        fn canonical_cycle_ignores_presentation(order in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(), rot in 0usize..8, flip: bool) {
            let base = HamiltonianCycle::new(order.clone()).unwrap();
            let mut other = order;
            other.rotate_left(rot % 8);
            if flip {
                other.reverse();
            }
            prop_assert_eq!(HamiltonianCycle::new(other).unwrap(), base);
        }

        #[test]
        fn csv_roundtrip_random(n in 2usize..9, raw in proptest::collection::vec(-1e3f64..1e3, 0..36), holes in proptest::collection::vec(any::<bool>(), 0..36)) {
            let m = n * (n - 1) / 2;
            prop_assume!(raw.len() >= m && holes.len() >= m);
            let w: Vec<f64> = raw[..m]
                .iter()
                .zip(&holes[..m])
                .map(|(&v, &h)| if h { f64::NAN } else { v })
                .collect();
            let g = WeightedGraph::new(n, w).unwrap();
            let round = WeightedGraph::from_csv_str(&g.to_csv_string()).unwrap();
            prop_assert_eq!(g.to_csv_string(), round.to_csv_string());
        }

        #[test]
        fn cycle_edge_subset_has_degree_two(perm in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle()) {
            let c = HamiltonianCycle::new(perm).unwrap();
            let e = c.to_edges();
            for v in 0..7 {
                prop_assert_eq!(e.degree_numerator(v), 4);
            }
        }
    }
}
