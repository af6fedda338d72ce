//! Contig contact-count ingestion and iterative balancing.
//!
//! A contact map is a symmetric nonnegative count matrix with a zero
//! diagonal.  Balancing rescales it so every row sums to one, which makes the
//! entries comparable across contigs before they are handed to the cycle
//! solvers as edge scores.
//!
//! # File format
//!
//! Two layouts are accepted, both whitespace-separated:
//!
//! * dense: one row per line, `n` numeric fields each, no header;
//! * coordinate triplets: a `#n=<count>` header line followed by
//!   `i j count` lines with 0-based indices.  Each triplet adds `count` to
//!   both `(i,j)` and `(j,i)`; duplicate pairs accumulate.
//!
//! Lines starting with `#` are otherwise treated as comments.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::model::{ModelKind, WeightModel};

pub const DEFAULT_ICE_TOL: f64 = 1e-8;
pub const DEFAULT_ICE_MAX_ITERS: usize = 1000;

/// Symmetric nonnegative contact counts with a zero diagonal, plus optional
/// per-contig lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactMap {
    n: usize,
    counts: Vec<f64>,
    lengths: Option<Vec<f64>>,
}

impl ContactMap {
    pub fn new(n: usize, counts: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("contact map must have at least one contig"));
        }
        if counts.len() != n * n {
            return Err(Error::invalid(format!(
                "expected {} counts for n = {n}, got {}",
                n * n,
                counts.len()
            )));
        }
        for i in 0..n {
            if counts[i * n + i] != 0.0 {
                return Err(Error::invalid(format!("nonzero diagonal at contig {i}")));
            }
            for j in 0..n {
                let c = counts[i * n + j];
                if !(c.is_finite() && c >= 0.0) {
                    return Err(Error::invalid(format!("bad count {c} at ({i}, {j})")));
                }
                if counts[j * n + i] != c {
                    return Err(Error::invalid(format!("asymmetric counts at ({i}, {j})")));
                }
            }
        }
        Ok(Self { n, counts, lengths: None })
    }

    pub fn with_lengths(mut self, lengths: Vec<f64>) -> Result<Self> {
        if lengths.len() != self.n {
            return Err(Error::invalid("length vector size mismatch"));
        }
        if lengths.iter().any(|&l| !(l.is_finite() && l > 0.0)) {
            return Err(Error::invalid("contig lengths must be positive"));
        }
        self.lengths = Some(lengths);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, i: usize, j: usize) -> f64 {
        self.counts[i * self.n + j]
    }

    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    pub fn lengths(&self) -> Option<&[f64]> {
        self.lengths.as_deref()
    }
}

/// Outcome of balancing: per-contig biases and the rescaled weights on the
/// contigs that had any contacts.
#[derive(Debug, Clone)]
pub struct BalancedMap {
    /// Size of the original map.
    pub n_original: usize,
    /// Original indices of the contigs that were balanced, in order.
    pub kept: Vec<usize>,
    /// Original indices of all-zero rows excluded from balancing.
    pub dropped: Vec<usize>,
    /// Positive bias per kept contig.
    pub biases: Vec<f64>,
    /// Dense `kept.len()` square matrix `w_ij = b_i b_j N_ij`.
    pub weights: Vec<f64>,
    /// Number of bias updates performed.
    pub iterations: usize,
    /// Final maximum absolute row-sum deviation from one.
    pub deviation: f64,
    /// Whether the deviation dropped below the tolerance.
    pub converged: bool,
}

impl BalancedMap {
    pub fn k(&self) -> usize {
        self.kept.len()
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.k() + j]
    }
}

/// Parses a contact map from a string; see the module docs for the format.
pub fn parse_contact_map(input: &str) -> Result<ContactMap> {
    let mut coo_n: Option<usize> = None;
    let mut dense: Vec<(usize, Vec<f64>)> = Vec::new();
    let mut triplets: Vec<(usize, usize, f64)> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(v) = rest.strip_prefix("n=") {
                if coo_n.is_some() {
                    return Err(Error::Parse { line, msg: "duplicate #n= header".into() });
                }
                if !dense.is_empty() {
                    return Err(Error::Parse {
                        line,
                        msg: "#n= header must precede all data rows".into(),
                    });
                }
                let n: usize = v.trim().parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad size header '{text}'"),
                })?;
                if n == 0 {
                    return Err(Error::Parse { line, msg: "#n= must be positive".into() });
                }
                coo_n = Some(n);
            }
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        if let Some(n) = coo_n {
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected 'i j count' triplet, got {} fields", fields.len()),
                });
            }
            let i: usize = fields[0]
                .parse()
                .map_err(|_| Error::Parse { line, msg: format!("bad index '{}'", fields[0]) })?;
            let j: usize = fields[1]
                .parse()
                .map_err(|_| Error::Parse { line, msg: format!("bad index '{}'", fields[1]) })?;
            let c: f64 = fields[2]
                .parse()
                .map_err(|_| Error::Parse { line, msg: format!("bad count '{}'", fields[2]) })?;
            if i >= n || j >= n {
                return Err(Error::Parse {
                    line,
                    msg: format!("index ({i}, {j}) out of range for n = {n}"),
                });
            }
            if i == j {
                return Err(Error::Parse { line, msg: "diagonal contact must be zero".into() });
            }
            if !(c.is_finite() && c >= 0.0) {
                return Err(Error::Parse { line, msg: format!("bad count {c}") });
            }
            triplets.push((i, j, c));
        } else {
            let mut row = Vec::with_capacity(fields.len());
            for f in &fields {
                let v: f64 = f
                    .parse()
                    .map_err(|_| Error::Parse { line, msg: format!("bad count '{f}'") })?;
                if !(v.is_finite() && v >= 0.0) {
                    return Err(Error::Parse { line, msg: format!("bad count {v}") });
                }
                row.push(v);
            }
            dense.push((line, row));
        }
    }

    if let Some(n) = coo_n {
        let mut counts = vec![0.0; n * n];
        for (i, j, c) in triplets {
            counts[i * n + j] += c;
            counts[j * n + i] += c;
        }
        return ContactMap::new(n, counts);
    }

    let n = dense.len();
    if n == 0 {
        return Err(Error::Parse { line: 1, msg: "empty contact map".into() });
    }
    for (line, row) in &dense {
        if row.len() != n {
            return Err(Error::Parse {
                line: *line,
                msg: format!("expected {n} fields, got {}", row.len()),
            });
        }
    }
    for (i, (line, row)) in dense.iter().enumerate() {
        if row[i] != 0.0 {
            return Err(Error::Parse { line: *line, msg: format!("nonzero diagonal at contig {i}") });
        }
        for j in 0..i {
            if dense[j].1[i] != row[j] {
                return Err(Error::Parse {
                    line: *line,
                    msg: format!(
                        "asymmetric entry: ({i}, {j}) = {} but ({j}, {i}) = {}",
                        row[j], dense[j].1[i]
                    ),
                });
            }
        }
    }
    let mut counts = vec![0.0; n * n];
    for (i, (_, row)) in dense.iter().enumerate() {
        counts[i * n..(i + 1) * n].copy_from_slice(row);
    }
    ContactMap::new(n, counts)
}

/// Loads a contact map from a file; see the module docs for the format.
pub fn load_contact_map(path: &Path) -> Result<ContactMap> {
    parse_contact_map(&fs::read_to_string(path)?)
}

/// Balances a contact map so that every kept row of `w_ij = b_i b_j N_ij`
/// sums to one.
///
/// The update is the symmetric form of Sinkhorn scaling, `b <- b / sqrt(r)`
/// with `r` the current row sums, which keeps every iterate symmetric.
/// All-zero rows have no finite bias and are dropped up front; they are
/// reported in [`BalancedMap::dropped`].  When the tolerance is not reached
/// within `max_iters` updates the best iterate seen is returned with
/// `converged = false`.
pub fn ice_balance(map: &ContactMap, max_iters: usize, tol: f64) -> Result<BalancedMap> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let n = map.n();
    let kept: Vec<usize> =
        (0..n).filter(|&i| (0..n).any(|j| map.count(i, j) > 0.0)).collect();
    let dropped: Vec<usize> =
        (0..n).filter(|&i| (0..n).all(|j| map.count(i, j) == 0.0)).collect();
    let k = kept.len();
    if k < 2 {
        return Err(Error::invalid("fewer than two contigs have any contacts"));
    }

    let mut sub = vec![0.0; k * k];
    for (a, &i) in kept.iter().enumerate() {
        for (b, &j) in kept.iter().enumerate() {
            sub[a * k + b] = map.count(i, j);
        }
    }

    let weights_of = |b: &[f64]| -> Vec<f64> {
        let mut w = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                w[i * k + j] = b[i] * b[j] * sub[i * k + j];
            }
        }
        w
    };
    let max_dev = |w: &[f64]| -> f64 {
        (0..k)
            .map(|i| ((0..k).map(|j| w[i * k + j]).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    };

    let mut b = vec![1.0f64; k];
    let mut best_b = b.clone();
    let mut best_dev = f64::INFINITY;
    let mut updates = 0usize;
    let mut converged = false;
    loop {
        let w = weights_of(&b);
        let dev = max_dev(&w);
        if dev < best_dev {
            best_dev = dev;
            best_b = b.clone();
        }
        if dev < tol {
            converged = true;
            break;
        }
        if updates >= max_iters {
            break;
        }
        for i in 0..k {
            let r: f64 = (0..k).map(|j| w[i * k + j]).sum();
            b[i] /= r.sqrt();
        }
        updates += 1;
    }

    let biases = if converged { b } else { best_b };
    let weights = weights_of(&biases);
    let deviation = max_dev(&weights);
    Ok(BalancedMap {
        n_original: n,
        kept,
        dropped,
        biases,
        weights,
        iterations: updates,
        deviation,
        converged,
    })
}

/// Turns a balanced map into a solver-ready weighted graph on the kept
/// contigs (vertex `a` is original contig `kept[a]`).
///
/// With no model the balanced weights are used directly as edge scores.  With
/// a Poisson model the weights are pushed through the Poisson log-likelihood
/// ratio `w log(lambda/mu) - (lambda - mu)`, treating the rescaled values as
/// pseudo-counts; for integer-valued weights this matches
/// [`WeightModel::loglik_transform`] exactly.
pub fn balanced_to_instance(
    balanced: &BalancedMap,
    model: Option<&WeightModel>,
) -> Result<WeightedGraph> {
    let k = balanced.k();
    if k < 2 {
        return Err(Error::invalid("need at least two kept contigs"));
    }
    let score: Box<dyn Fn(f64) -> Result<f64>> = match model {
        None => Box::new(Ok),
        Some(m) => {
            m.validate()?;
            match m.kind {
                ModelKind::Poisson { lambda, mu } => {
                    let log_ratio = (lambda / mu).ln();
                    Box::new(move |w| Ok(w * log_ratio - (lambda - mu)))
                }
                _ => {
                    return Err(Error::invalid(
                        "likelihood scoring of contact weights expects a Poisson model",
                    ))
                }
            }
        }
    };
    let mut g = WeightedGraph::zeros(k)?;
    for i in 0..k {
        for j in (i + 1)..k {
            g.set_weight(i, j, score(balanced.weight(i, j))?)?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn dense_roundtrip() {
        let m = parse_contact_map("0\t5\n5\t0\n").unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m.count(0, 1), 5.0);
        assert_eq!(m.count(1, 0), 5.0);
        assert_eq!(m.count(0, 0), 0.0);
    }

    #[test]
    fn dense_with_comment_and_spaces() {
        let m = parse_contact_map("# synthetic\n0 1 2\n1 0 1\n2 1 0\n").unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(m.count(0, 2), 2.0);
    }

    #[test]
    fn asymmetric_dense_reports_the_later_line() {
        match parse_contact_map("0\t5\n4\t0\n") {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("asymmetric"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn ragged_and_negative_and_diagonal_errors_carry_line_numbers() {
        assert!(matches!(
            parse_contact_map("0 1\n1 0 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_contact_map("0 -1\n-1 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_contact_map("1 2\n2 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_contact_map("#n=2\n0 0 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_contact_map("#n=2\n0 2 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn coo_duplicates_sum() {
        let m = parse_contact_map("#n=3\n0\t1\t2\n1\t0\t3\n0\t2\t1\n").unwrap();
        assert_eq!(m.count(0, 1), 5.0);
        assert_eq!(m.count(1, 0), 5.0);
        assert_eq!(m.count(0, 2), 1.0);
        assert_eq!(m.count(1, 2), 0.0);
    }

    #[test]
    fn two_by_two_balances_exactly() {
        let m = ContactMap::new(2, vec![0.0, 2.0, 2.0, 0.0]).unwrap();
        let b = ice_balance(&m, DEFAULT_ICE_MAX_ITERS, DEFAULT_ICE_TOL).unwrap();
        assert!(b.converged);
        assert_eq!(b.iterations, 1);
        let expected = 1.0 / 2.0f64.sqrt();
        assert_eq!(b.biases, vec![expected, expected]);
        let w = expected * expected * 2.0;
        assert_eq!(b.weights, vec![0.0, w, w, 0.0]);
        assert!((w - 1.0).abs() <= 4.0 * f64::EPSILON);
        assert!(b.deviation <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn already_balanced_is_a_fixed_point() {
        let m = ContactMap::new(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let b = ice_balance(&m, 100, 1e-10).unwrap();
        assert!(b.converged);
        assert_eq!(b.iterations, 0);
        assert_eq!(b.biases, vec![1.0, 1.0]);
    }

    #[test]
    fn three_by_three_converges_quickly() {
        let m = ContactMap::new(3, vec![0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0]).unwrap();
        let b = ice_balance(&m, 200, 1e-8).unwrap();
        assert!(b.converged, "deviation {} after {} iters", b.deviation, b.iterations);
        assert!(b.iterations < 200);
        assert!(b.deviation < 1e-8);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(b.weight(i, j).to_bits(), b.weight(j, i).to_bits());
            }
        }
    }

    #[test]
    fn zero_rows_are_dropped_and_reported() {
        let m = ContactMap::new(
            3,
            vec![0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        )
        .unwrap();
        let b = ice_balance(&m, 100, 1e-8).unwrap();
        assert_eq!(b.kept, vec![0, 1]);
        assert_eq!(b.dropped, vec![2]);
        assert_eq!(b.k(), 2);
        assert!(b.converged);
    }

    fn random_positive_map(n: usize, seed: u64, scale: f64) -> ContactMap {
        let mut rng = SplitMix64::new(seed);
        let mut counts = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let c = scale * (0.5 + rng.next_f64());
                counts[i * n + j] = c;
                counts[j * n + i] = c;
            }
        }
        ContactMap::new(n, counts).unwrap()
    }

    #[test]
    fn scaling_counts_rescales_biases_and_preserves_weights() {
        let base = random_positive_map(6, 99, 1.0);
        let scaled = ContactMap::new(6, base.counts().iter().map(|c| c * 37.0).collect()).unwrap();
        let a = ice_balance(&base, 1000, 1e-12).unwrap();
        let b = ice_balance(&scaled, 1000, 1e-12).unwrap();
        assert!(a.converged && b.converged);
        let ratio = 1.0 / 37.0f64.sqrt();
        for i in 0..6 {
            assert!((b.biases[i] / a.biases[i] - ratio).abs() < 1e-10);
        }
        for (x, y) in a.weights.iter().zip(&b.weights) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn exhausted_budget_returns_best_iterate_with_warning() {
        let m = random_positive_map(5, 7, 3.0);
        let b = ice_balance(&m, 0, 1e-8).unwrap();
        assert!(!b.converged);
        assert_eq!(b.iterations, 0);
        assert_eq!(b.biases, vec![1.0; 5]);
        assert!(b.deviation > 1e-8);
    }

    #[test]
    fn instance_uses_balanced_weights_and_kept_indices() {
        let m = ContactMap::new(
            3,
            vec![0.0, 2.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        )
        .unwrap();
        let b = ice_balance(&m, 100, 1e-8).unwrap();
        let g = balanced_to_instance(&b, None).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.weight(0, 1).unwrap(), b.weight(0, 1));
        assert!((g.weight(0, 1).unwrap() - 1.0).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn poisson_scoring_matches_the_loglik_transform_route() {
        let m = ContactMap::new(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let b = ice_balance(&m, 100, 1e-8).unwrap();
        let model = WeightModel::poisson(4.0, 1.0).unwrap();
        let direct = balanced_to_instance(&b, Some(&model)).unwrap();
        let raw = balanced_to_instance(&b, None).unwrap();
        let via_transform = model.loglik_transform(&raw).unwrap();
        assert_eq!(direct.weight(0, 1).unwrap().to_bits(), via_transform.weight(0, 1).unwrap().to_bits());
        assert_eq!(direct.weight(0, 1).unwrap(), 4.0f64.ln() - 3.0);
    }

    #[test]
    fn bernoulli_model_is_rejected_for_scoring() {
        let m = ContactMap::new(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let b = ice_balance(&m, 100, 1e-8).unwrap();
        let model = WeightModel::bernoulli(0.9, 0.1).unwrap();
        assert!(balanced_to_instance(&b, Some(&model)).is_err());
    }

    #[test]
    fn lengths_are_validated_and_stored() {
        let m = ContactMap::new(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(m.clone().with_lengths(vec![1.0]).is_err());
        assert!(m.clone().with_lengths(vec![1.0, -2.0]).is_err());
        let m = m.with_lengths(vec![150.0, 90.0]).unwrap();
        assert_eq!(m.lengths().unwrap(), &[150.0, 90.0]);
    }
}
